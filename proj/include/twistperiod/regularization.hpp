#pragma once

#include <optional>

#include "twistperiod/cells.hpp"
#include "twistperiod/chambers.hpp"
#include "twistperiod/connection.hpp"
#include "twistperiod/rdbasis.hpp"

namespace twistperiod {

struct RegularizationOptions {
  std::optional<Rat> epsilon;  // default: safety bound computed from the chamber
  Rat epsilon_scale = 1;       // multiplies the chosen epsilon (e.g. 1/2 for invariance checks)
  double loop_start_angle = 0;
};

/// Replaces a bounded chamber by sigma + sum_J (+-) prod_{j in J} 1/d_j (cells
/// around the faces Delta_J). Walls with non-integral exponent get loops;
/// walls with exponent in Z_{>=1} are kept as plain boundary. Supports n = 1
/// and n = 2 in general position.
TwistedChain regularize_bounded(const Chamber& C, const Arrangement& A, const ExponentData& E,
                                const RegularizationOptions& opts = {});

/// Same for an unbounded chamber cut by the phase. In 1-D the chain ends at
/// the truncation point and continues with a ray term to infinity; in 2-D the
/// region is cut far enough out that the remaining tail is negligible. The
/// cut is a plain wall.
TwistedChain regularize_truncated(const Chamber& C, const PhaseSpec& phase, const Arrangement& A,
                                  const ExponentData& E, const RegularizationOptions& opts = {});

/// The rapid-decay chain of a basis element (bounded or truncated).
TwistedChain regularize(const Chamber& C, const PhaseSpec& phase, const Arrangement& A, const ExponentData& E,
                        const RegularizationOptions& opts = {});

/// Largest-safe default radius: one tenth of the level-normalized distance
/// from every corner of the region to the hyperplanes not through it.
Rat default_epsilon(const Chamber& C, const Arrangement& A, const PhaseSpec& phase = {});

}  // namespace twistperiod
