#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistperiod/chambers.hpp"
#include "twistperiod/connection.hpp"

namespace twistperiod {

enum class PhaseKind { none, linear, quadratic };

std::string to_string(PhaseKind k);

/// Exponential twist e^{-f}. Linear phases carry f = [c_0, c_1, ..., c_n];
/// the quadratic phase is always f = sum t_i^2. An empty `level` means "auto".
struct PhaseSpec {
  PhaseKind kind = PhaseKind::none;
  RatVector f;
  std::optional<Rat> level;
};

struct TruncatedChamber {
  Chamber chamber;
  SignVector slice_sign;  // linear phase only: the bounded slice chamber it came from
  Point slice_point;      // ambient point of that slice chamber's witness
};

struct RdBasis {
  PhaseKind kind = PhaseKind::none;
  int degree = 0;                           // n; every other degree is zero
  std::vector<Chamber> bounded;             // Delta_k
  std::vector<TruncatedChamber> truncated;  // Delta~_l, cut by {Re f < R}
  Rat level;                                // R used for truncation
  Rat generic_level;                        // slice level used for the combinatorics
  std::vector<std::string> checked;         // hypotheses verified exactly
  std::vector<std::string> assumed;         // hypotheses taken on trust

  std::size_t rank() const { return bounded.size() + truncated.size(); }
};

/// R = 2 (1 + max |f(v)|) over vertices (linear) or 2 (1 + max |v|^2) over
/// flats (quadratic), raised past the generic slice level when needed.
Rat default_level(const Arrangement& A, const PhaseSpec& phase);

RdBasis rd_basis_linear(const Arrangement& A, const ExponentData& E, std::span<const Rat> f,
                        std::optional<Rat> level = std::nullopt);

RdBasis rd_basis_quadratic(const Arrangement& A, const ExponentData& E, std::optional<Rat> level = std::nullopt);

RdBasis rd_basis(const Arrangement& A, const ExponentData& E, const PhaseSpec& phase);

/// The basis in degree p: empty unless p == n.
RdBasis basis_in_degree(const RdBasis& basis, int p);

struct RankReport {
  std::size_t basis_rank = 0;
  std::size_t bounded_count = 0;  // b(A)
  std::size_t fiber_count = 0;    // b(slice) or M(N, n)
  std::string fiber_kind;         // "slice" or "schlafli"
  bool ok = false;
};

/// |basis| == b(A) + b(fiber). Throws ConsistencyError on mismatch.
RankReport rank_cross_check(const Arrangement& A, const ExponentData& E, const PhaseSpec& phase);

struct StabilityReport {
  Rat level;
  Rat doubled;
  bool stable = false;
};

/// Rebuilds the truncated part at R and 2R and compares sign-vector sets.
StabilityReport check_level_stability(const Arrangement& A, const ExponentData& E, const PhaseSpec& phase,
                                      const Rat& level);

}  // namespace twistperiod
