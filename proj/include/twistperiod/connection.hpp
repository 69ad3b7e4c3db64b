#pragma once

#include <complex>
#include <string>
#include <vector>

#include "twistperiod/geometry.hpp"
#include "twistperiod/rational.hpp"

namespace twistperiod {

using ComplexRatMatrix = std::vector<std::vector<ComplexRat>>;

/// Twist data of the connection d + sum_j P_j dlog l_j. Rank one keeps scalar
/// exponents; higher rank keeps residue matrices. The entry at infinity is
/// always the negated sum.
class ExponentData {
 public:
  static ExponentData scalar(std::vector<ComplexRat> alphas);
  static ExponentData matrices(std::vector<ComplexRatMatrix> residues);

  int rank() const { return rank_; }
  std::size_t size() const { return rank_ == 1 ? alphas_.size() : residues_.size(); }

  /// j in [0, N]; j == N is the hyperplane at infinity.
  const ComplexRat& alpha(std::size_t j) const;
  const ComplexRatMatrix& residue(std::size_t j) const;

  const std::vector<ComplexRat>& alphas() const { return alphas_; }
  const std::vector<ComplexRatMatrix>& residues() const { return residues_; }

  /// Entries for the listed ambient hyperplanes (used for slices).
  ExponentData restrict_to(const std::vector<int>& indices) const;

 private:
  int rank_ = 1;
  std::vector<ComplexRat> alphas_;  // N + 1 entries, last is infinity
  std::vector<ComplexRatMatrix> residues_;
};

/// Outcome of a check, with a certificate when it fails. `subfamily` holds
/// 1-based hyperplane numbers; N + 1 denotes infinity.
struct Verdict {
  bool holds = true;
  std::string reason;
  std::vector<int> subfamily;

  explicit operator bool() const { return holds; }
};

Verdict check_flatness(const Arrangement& A, const ExponentData& E);
Verdict is_generic(const Arrangement& A, const ExponentData& E);

/// Genericity of the induced connection on {f = R} at a level R beyond every
/// value where the slice's matroid changes (see generic_slice_level).
Verdict is_asymptotically_generic(const Arrangement& A, const ExponentData& E, std::span<const Rat> f);

/// Exact decision whether a complex-rational square matrix has an integer
/// eigenvalue; the witness is written to `eigenvalue` when it does.
bool has_integer_eigenvalue(const ComplexRatMatrix& M, mpz_class* eigenvalue = nullptr);

/// Coefficients of det(x I - M), lowest degree first (monic).
std::vector<ComplexRat> characteristic_polynomial(const ComplexRatMatrix& M);

/// sin(pi q) and cos(pi q) for rational q, exact at multiples of 1/2 and
/// otherwise evaluated after reduction to [0, 1/4].
double sinpi(const Rat& q);
double cospi(const Rat& q);

/// d = exp(2 pi i alpha) - 1 without cancellation near integers.
std::complex<double> monodromy_factor(const ComplexRat& alpha);

/// d_j for every finite hyperplane; throws PreconditionError for integral alpha_j.
std::vector<std::complex<double>> monodromy_factors(const ExponentData& E);

}  // namespace twistperiod
