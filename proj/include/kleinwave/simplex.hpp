#pragma once

#include "kleinwave/types.hpp"

namespace kleinwave {

/// Dense two-phase primal simplex for
///     maximize c'x  subject to  A x = rhs,  x >= 0.
/// Dantzig pricing with a Bland's-rule fallback after a run of degenerate
/// pivots, which guards against cycling.
struct SimplexResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Optimal;
  double objective = 0.0;
  RealVector x;             // primal solution (size = columns of A)
  RealVector multipliers;   // one per constraint row
  int iterations = 0;
};

SimplexResult simplex_maximize(const RealMatrix& A, const RealVector& rhs,
                               const RealVector& c, int max_iterations = 200000);

}  // namespace kleinwave
