#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twistperiod/geometry.hpp"
#include "twistperiod/parallel.hpp"

namespace twistperiod {

struct Chamber {
  SignVector sign;
  Point witness;
  bool bounded = false;
  std::uint64_t id = 0;  // lexicographic rank of the sign vector, '-' < '+'
};

struct ChamberCensus {
  std::vector<Chamber> chambers;  // sorted by id
  std::size_t n_total = 0;
  std::size_t n_bounded = 0;
  std::size_t n_unbounded = 0;

  const Chamber* find(const SignVector& s) const;
};

std::uint64_t chamber_id(const SignVector& s);

/// Incremental insertion in input order. Each round splits the chambers
/// found so far against the next hyperplane; a chamber is split iff both
/// sides are feasible, which costs at most one LP because the parent witness
/// already decides one side.
ChamberCensus enumerate_chambers(const Arrangement& A, Execution exec = Execution::parallel);

std::vector<Chamber> bounded_chambers(const Arrangement& A);

std::uint64_t binomial(int n, int k);

/// M(N, n) = C(N-1, n-1) + sum_{i=1..n} C(N, n-i).
std::uint64_t schlafli_bounded_count(int N, int n);

/// n_unbounded(A) == M(N, n). Throws PreconditionError unless A is in general
/// position in the coned sense.
bool unbounded_equals_schlafli_check(const Arrangement& A);

struct CriticalPoint {
  std::vector<double> point;
  std::uint64_t chamber_id = 0;
  double gradient_norm = 0;
  int iterations = 0;
};

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  int max_halvings = 60;
};

/// Maximizer of F = sum eta_j log|l_j| inside every bounded chamber, by damped
/// Newton from the chamber witness. Steps that leave the chamber or decrease
/// F are halved. Throws NumericError on non-convergence.
std::vector<CriticalPoint> morse_critical_points(const Arrangement& A, const std::vector<double>& eta,
                                                 const NewtonOptions& opts = {});

}  // namespace twistperiod
