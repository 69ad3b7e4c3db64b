#pragma once

#include "twistperiod/rational.hpp"

namespace twistperiod::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rat objective;  // meaningful when optimal
  RatVector x;    // primal solution when optimal
};

/// Exact two-phase simplex with Bland's rule:
///   maximize c.x  subject to  A x <= b,  x >= 0.
/// No floating point is involved anywhere, so the answer is reproducible and
/// degeneracy cannot cause cycling.
Result maximize(const RatMatrix& A, const RatVector& b, const RatVector& c);

/// Same problem with every variable free (split internally as x+ - x-).
Result maximize_free(const RatMatrix& A, const RatVector& b, const RatVector& c);

}  // namespace twistperiod::lp
