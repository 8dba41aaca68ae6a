#pragma once

#include "kleinwave/types.hpp"

namespace kleinwave {

/// Integration weights for one cell of a uniform grid.
///
/// Row c (0 <= c < order) holds the exact integrals over [c, c+1] of the
/// Lagrange basis polynomials through the stencil nodes 0..order, in node
/// units. Interior cells use the centered row c = (order-1)/2; cells near a
/// grid boundary use the clamped rows. Multiply by the grid step to get
/// physical weights. Exact for polynomials of degree <= order.
const RealMatrix& cell_quadrature_weights(int order);

/// Cumulative integral of uniformly spaced samples, normalized so that the
/// result vanishes at node `zero_index`. Each cell integrates the local
/// degree-`order` Lagrange interpolant exactly.
ComplexVector cumulative_integral(const ComplexVector& samples, double step,
                                  int order, int zero_index);

/// Definite integral of samples[first..last] over the corresponding cells.
Complex integrate_samples(const ComplexVector& samples, double step, int order,
                          int first, int last);

/// First-derivative weights on a stencil of `order`+1 uniform nodes. Row r
/// differentiates at stencil node r; divide by the grid step. Exact for
/// polynomials of degree <= order.
const RealMatrix& stencil_derivative_weights(int order);

/// Grid derivative of uniformly spaced samples using degree-`order` stencils
/// (clamped one-sided near the boundary).
ComplexVector derivative_samples(const ComplexVector& samples, double step,
                                 int order);

}  // namespace kleinwave
