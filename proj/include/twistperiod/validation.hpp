#pragma once

#include <vector>

#include "twistperiod/quadrature.hpp"
#include "twistperiod/regularization.hpp"

namespace twistperiod {

/// Lanczos approximation (g = 7, nine coefficients) with reflection for Re z < 1/2.
cplx lanczos_gamma(cplx z);
cplx beta_function(cplx a, cplx b);

/// Power series; |x| < 0.9 and c not a non-positive integer.
cplx gauss_2f1(cplx a, cplx b, cplx c, cplx x);
/// Entire series; c not a non-positive integer.
cplx kummer_1f1(cplx a, cplx c, cplx z);

/// Exact parameters of the Euler-type integrals. x stays real so that the
/// hyperplane 1 - x t is rational.
struct HgParams {
  ComplexRat alpha, beta, gamma;
  Rat x;
};

struct Residual {
  cplx value;
  cplx oracle;
  double residual = 0;
  PeriodReport period;
};

/// Form dt / (t (1 - t)) has powers {-1, -1, 0}; dt / t has {-1, 0, 0}.
inline const std::vector<int> kOmegaOne{-1, -1, 0};
inline const std::vector<int> kOmegaT{-1, 0, 0};

/// int over the regularized (0, 1) of t^alpha (1-t)^(gamma-alpha) (1-xt)^(-beta) omega.
PeriodReport euler_period(const HgParams& p, const std::vector<int>& powers, double tol = 1e-12,
                          Execution exec = Execution::parallel);

/// Same twist with e^{-x t} in place of (1 - x t)^(-beta); `unbounded` picks the
/// cycle over (1, infinity) instead of (0, 1).
PeriodReport kummer_period(const ComplexRat& alpha, const ComplexRat& gamma, const Rat& x,
                           const std::vector<int>& powers, bool unbounded, double tol = 1e-12,
                           Execution exec = Execution::parallel);

/// Regularized Euler integral against B(alpha, gamma - alpha) 2F1(alpha, beta; gamma; x).
Residual verify_euler_integral(const HgParams& p, double tol = 1e-12);

struct KummerReport {
  Residual bounded;                    // against B(alpha, gamma - alpha) 1F1(alpha; gamma; -x)
  std::array<std::array<cplx, 2>, 2> period_matrix;  // rows: (0,1), (1,inf); columns: dt/(t(1-t)), dt/t
  cplx determinant;
  bool independent = false;            // |det| > 1e-10
};
KummerReport verify_kummer_integral(const ComplexRat& alpha, const ComplexRat& gamma, const Rat& x,
                                    double tol = 1e-12);

enum class OdeSystem { gauss, kummer, kummer_unbounded };

/// || dZ/dx - M(x0) Z(x0) || / || M(x0) Z(x0) || with the five-point stencil.
double ode_residual(OdeSystem system, const HgParams& p, const Rat& x0, const Rat& h, double tol = 1e-13);

struct ConfluenceReport {
  std::vector<Rat> eps;
  std::vector<cplx> gauss_side;
  cplx kummer_side;
  std::vector<double> gaps;
  bool strictly_decreasing = false;
};

/// Euler period with (beta, x) = (1/eps, -eps x) against the Kummer period at x.
ConfluenceReport confluence_check(const ComplexRat& alpha, const ComplexRat& gamma, const Rat& x,
                                  const std::vector<Rat>& eps_seq, double tol = 1e-12);

}  // namespace twistperiod
