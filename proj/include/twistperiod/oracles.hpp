#pragma once

#include <random>
#include <vector>

#include "twistperiod/geometry.hpp"

// Reference implementations that share no code path with the library's
// simplex-based enumeration. Used by the acceptance battery and tests.
namespace twistperiod::oracle {

/// Strict feasibility of {s_j l_j(p) > 0} by exact Fourier-Motzkin elimination.
bool strictly_feasible(int dim, const RatMatrix& rows, const std::vector<int>& signs);

/// All zero-free sign vectors realized by the arrangement, by scanning 2^N candidates.
std::vector<SignVector> brute_force_chambers(int dim, const RatMatrix& rows);

/// det of a square rational matrix by plain elimination.
Rat det(RatMatrix M);

/// Every n+1 of the coned rows together with the infinity covector are independent.
bool general_position(int dim, const RatMatrix& rows);

/// Random integer rows in [-bound, bound] with nonzero normals and no repeated
/// projective covector; `generic` additionally enforces general_position.
RatMatrix random_rows(std::mt19937_64& rng, int dim, int count, bool generic, int bound = 4);

/// Distinct points where the lines of a planar arrangement cross the circle
/// |t|^2 = radius_sq, which is also the number of arcs they cut.
int arcs_on_circle(const RatMatrix& rows, double radius_sq);

std::size_t binomial(int n, int k);

}  // namespace twistperiod::oracle
