#include "kleinwave/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kleinwave {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-10;
// Dantzig pricing switches to Bland's rule only after this many iterations
// without objective progress (degenerate pivots alone are normal here: the
// minimax dual has a single nonzero right-hand side).
constexpr int kStallLimit = 1000;
}  // namespace

SimplexResult simplex_maximize(const RealMatrix& A, const RealVector& rhs,
                               const RealVector& c, int max_iterations) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (rhs.size() != m || c.size() != n)
    throw InvalidInputError("simplex_maximize: dimension mismatch");

  // tableau: [A | I (artificials) | rhs], rows flipped so rhs >= 0
  RealMatrix T = RealMatrix::Zero(m, n + m + 1);
  RealVector row_sign = RealVector::Ones(m);
  for (int i = 0; i < m; ++i) {
    const double s = rhs[i] < 0.0 ? -1.0 : 1.0;
    row_sign[i] = s;
    T.row(i).head(n) = s * A.row(i);
    T(i, n + i) = 1.0;
    T(i, n + m) = s * rhs[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  SimplexResult result;
  result.x = RealVector::Zero(n);
  result.multipliers = RealVector::Zero(m);

  // zc[j] = z_j - cost_j for the current phase
  RealVector zc(n + m);

  auto rebuild_zc = [&](const RealVector& cost) {
    for (int j = 0; j < n + m; ++j) {
      double z = 0.0;
      for (int i = 0; i < m; ++i) z += cost[basis[i]] * T(i, j);
      zc[j] = z - cost[j];
    }
  };

  auto pivot = [&](int r, int jc) {
    T.row(r) /= T(r, jc);
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double factor = T(i, jc);
      if (factor != 0.0) T.row(i) -= factor * T.row(r);
    }
    const double zf = zc[jc];
    if (zf != 0.0) zc -= zf * T.row(r).head(n + m).transpose();
    basis[r] = jc;
  };

  auto run_phase = [&](const RealVector& cost,
                       bool artificials_allowed) -> SimplexResult::Status {
    int since_rebuild = 0;
    int stall = 0;
    double best_objective = -std::numeric_limits<double>::infinity();
    while (result.iterations < max_iterations) {
      if (++since_rebuild > 500) {
        rebuild_zc(cost);
        since_rebuild = 0;
      }
      const int limit = artificials_allowed ? n + m : n;
      const bool bland = stall > kStallLimit;
      int enter = -1;
      double best = kReducedCostTol;
      for (int j = 0; j < limit; ++j) {
        if (-zc[j] > best) {
          enter = j;
          if (bland) break;
          best = -zc[j];
        }
      }
      if (enter < 0) return SimplexResult::Status::Optimal;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (T(i, enter) > kPivotTol) {
          const double ratio = T(i, n + m) / T(i, enter);
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return SimplexResult::Status::Unbounded;
      pivot(leave, enter);
      ++result.iterations;

      double objective = 0.0;
      for (int i = 0; i < m; ++i) objective += cost[basis[i]] * T(i, n + m);
      if (objective > best_objective + 1e-13 * (1.0 + std::abs(objective))) {
        best_objective = objective;
        stall = 0;
      } else {
        ++stall;
      }
    }
    return SimplexResult::Status::IterationLimit;
  };

  // phase 1: minimize the artificial sum
  RealVector cost1 = RealVector::Zero(n + m);
  cost1.tail(m).setConstant(-1.0);
  rebuild_zc(cost1);
  SimplexResult::Status st = run_phase(cost1, /*artificials_allowed=*/true);
  if (st == SimplexResult::Status::IterationLimit) {
    result.status = st;
    return result;
  }
  double artificial_sum = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) artificial_sum += T(i, n + m);
  if (artificial_sum > 1e-7) {
    result.status = SimplexResult::Status::Infeasible;
    return result;
  }
  // drive leftover artificials out of the basis where possible
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int jc = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(T(i, j)) > kPivotTol) {
        jc = j;
        break;
      }
    }
    if (jc >= 0) pivot(i, jc);
  }

  // phase 2
  RealVector cost2 = RealVector::Zero(n + m);
  cost2.head(n) = c;
  rebuild_zc(cost2);
  st = run_phase(cost2, /*artificials_allowed=*/false);
  result.status = st;
  if (st != SimplexResult::Status::Optimal) return result;

  // Re-derive the solution from the original data and the final basis; the
  // tableau itself accumulates roundoff over many pivots. All columns live in
  // the sign-flipped row space, so the multipliers are unflipped at the end.
  RealMatrix B(m, m);
  RealVector cb(m);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) {
      B.col(i) = row_sign.cwiseProduct(A.col(basis[i]));
      cb[i] = c[basis[i]];
    } else {
      B.col(i) = RealVector::Unit(m, basis[i] - n);
      cb[i] = 0.0;
    }
  }
  Eigen::PartialPivLU<RealMatrix> lu(B);
  const RealVector xb = lu.solve(row_sign.cwiseProduct(rhs));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, xb[i]);
  result.objective = c.dot(result.x);
  result.multipliers = row_sign.cwiseProduct(lu.transpose().solve(cb).eval());
  return result;
}

}  // namespace kleinwave
