#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "kleinwave/basis.hpp"
#include "kleinwave/sampled_function.hpp"
#include "kleinwave/types.hpp"

namespace kleinwave {

/// n + 2 strictly increasing abscissae in [-b, b] on which the levelled
/// interpolation problem is solved (the candidate alternant).
struct ReferenceSet {
  RealVector points;
  int size() const { return static_cast<int>(points.size()); }
};

enum class ReferenceKind { Chebyshev, LsqExtrema };
enum class ExchangeRule { Single, General };

struct ApproxResult {
  FPolynomial poly;
  double levelled_error = 0.0;  // E: signed for remez, >= 0 for the LP route
  double max_deviation = 0.0;   // D: max |g - poly| over the evaluation grid
  int iterations = 0;
  std::vector<std::pair<double, double>> history;  // (|E_k|, D_k) per iteration
  ReferenceSet reference;                          // final reference set
};

struct TchebInterpResult {
  RealVector coeffs;
  double levelled_error = 0.0;
};

/// Solves sum_k c_k phi_k(x_j) + (-1)^j E = g_j on the n+2 reference points.
TchebInterpResult tchebyshev_interpolation(const RealVector& g_values,
                                           const ReferenceSet& reference,
                                           const PhiBasis& basis, int degree);

/// Chebyshev kind: x_k = -b cos(k pi / (n+1)), k = 0..n+1. LsqExtrema kind:
/// alternating extrema of g minus its least-squares fit; falls back to the
/// Chebyshev points when fewer than n+2 alternating extrema exist.
ReferenceSet initial_reference(ReferenceKind kind, const PhiBasis& basis,
                               int degree, const SampledFunction& g);

struct RemezOptions {
  ExchangeRule exchange = ExchangeRule::Single;
  double tol = 1e-10;  // stop when (D - |E|)/D < tol
  int max_iterations = 50;
  ReferenceKind initial = ReferenceKind::Chebyshev;
};

/// Best uniform approximation of real-valued g by real f-polynomials of
/// degree n via the Remez exchange algorithm. Complex data must use
/// minimax_lp (the Haar condition may fail for complex bases).
ApproxResult remez(const SampledFunction& g,
                   std::shared_ptr<const PhiBasis> basis, int degree,
                   const RemezOptions& options = {});

struct MinimaxLpOptions {
  int grid_size = 2048;  // discretization points (>= degree + 2)
  int angles = 16;       // modulus linearization angles (complex data; even)
  int max_iterations = 200000;
};

/// Discretized minimax as a linear program solved by the internal dense
/// simplex. Real data uses the two-sided residual bounds; complex data
/// linearizes |residual| <= E over a regular fan of angles.
ApproxResult minimax_lp(const SampledFunction& g,
                        std::shared_ptr<const PhiBasis> basis, int degree,
                        const MinimaxLpOptions& options = {});

/// Discrete least squares on the full grid (orthogonal factorization).
FPolynomial lsq_approx(const SampledFunction& g,
                       std::shared_ptr<const PhiBasis> basis, int degree);

/// max |g - p| over the grid nodes.
double max_deviation_on_grid(const SampledFunction& g, const FPolynomial& p);

}  // namespace kleinwave
