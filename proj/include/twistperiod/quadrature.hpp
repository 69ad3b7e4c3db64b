#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "twistperiod/cells.hpp"
#include "twistperiod/connection.hpp"
#include "twistperiod/parallel.hpp"
#include "twistperiod/rdbasis.hpp"

namespace twistperiod {

using cplx = std::complex<double>;
using CPoint = std::array<cplx, 2>;

/// c * prod_j l_j^{m_j} dt_1 ^ ... ^ dt_n
struct FormTerm {
  cplx coeff{1.0, 0.0};
  std::vector<int> powers;
};

/// prod_j l_j^{alpha_j} e^{-f} omega. Walls with non-integral exponent are
/// tracked through their argument; integral exponents fold into the powers.
class TwistedIntegrand {
 public:
  TwistedIntegrand(const Arrangement& A, const ExponentData& E, PhaseSpec phase, std::vector<FormTerm> form);

  int dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  const PhaseSpec& phase() const { return phase_; }
  bool tracked(std::size_t j) const { return tracked_[j]; }
  cplx alpha(std::size_t j) const { return alpha_[j]; }

  cplx linear(std::size_t j, const CPoint& p) const;
  cplx phase_value(const CPoint& p) const;

  /// Value at p given continuous arguments of the tracked l_j.
  cplx value(const CPoint& p, const std::vector<double>& args) const;

  /// Throws PreconditionError if a form term has a pole on wall j.
  void require_regular_on(int j) const;

 private:
  int dim_ = 1;
  std::vector<std::array<double, 3>> rows_;
  std::vector<cplx> alpha_;
  std::vector<bool> tracked_;
  std::vector<int> shift_;
  PhaseSpec phase_;
  std::array<double, 3> f_{};
  std::vector<FormTerm> form_;
};

/// Gauss-Legendre nodes and weights on [0, 1], cached per size.
struct Rule {
  std::vector<double> x, w;
};
const Rule& gauss_legendre(int m);

/// Weights w_n, n < m, with sum_n w_n G(u_n) = int_0^{2 pi} G(u) du for
/// G(u) = e^{i a u} H(u), u_n = 2 pi n / m, exact for trigonometric
/// polynomials H of degree below m / 2.
const std::vector<cplx>& twisted_trapezoid(cplx a, int m);

/// Continuous arguments of the tracked l_j along a path, starting from `args`
/// at path(t0) and ending at path(t1). Steps are bisected until every
/// argument moves by less than pi / 2.
using PathFn = std::function<CPoint(double)>;
std::vector<double> transport(const TwistedIntegrand& I, const PathFn& path, double t0, double t1,
                              std::vector<double> args);

/// Ratio of integrand values after and before one positive turn around the
/// loop of the cell, both reached by transport.
cplx loop_monodromy(const TwistedIntegrand& I, const Cell& loop, int steps = 64);

cplx integrate_cell(const TwistedIntegrand& I, const Cell& cell, int m);

struct CellReport {
  std::string label;
  std::string kind;
  cplx coefficient;
  cplx value;
  double delta = 0;
  int nodes = 0;
};

struct PeriodReport {
  cplx value;
  double abs_error_estimate = 0;
  std::size_t cells_evaluated = 0;
  std::size_t nodes_used = 0;
  std::vector<CellReport> cells;
};

/// Sum of coefficient-weighted cell integrals; each cell doubles its node
/// count until the chain total moves by less than rel_tol.
PeriodReport integrate_chain(const TwistedIntegrand& I, const TwistedChain& chain, double rel_tol = 1e-10,
                             Execution exec = Execution::parallel);

/// int over {start + s dir, s >= 0} in 1-D; `args` are the arguments on the ray
/// (computed from the signs there when empty).
cplx integrate_unbounded_tail(const TwistedIntegrand& I, double start, double dir, std::vector<double> args = {},
                              double* abs_error = nullptr);

}  // namespace twistperiod
