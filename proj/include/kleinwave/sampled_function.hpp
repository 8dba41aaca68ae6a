#pragma once

#include <functional>

#include "kleinwave/types.hpp"

namespace kleinwave {

/// A complex-valued function represented by samples on a uniform grid over
/// [-b, b], together with a piecewise-polynomial interpolation rule of odd
/// degree `interp_order`. Evaluation at a grid node returns the stored sample
/// exactly. Immutable after construction.
class SampledFunction {
 public:
  static constexpr int kDefaultInterpOrder = 5;
  static constexpr int kDefaultSegments = 3000;

  SampledFunction() = default;
  SampledFunction(double half_width, ComplexVector values,
                  int interp_order = kDefaultInterpOrder);

  /// Sample fn at the nodes of a uniform grid with `segments` subintervals.
  static SampledFunction sample(double half_width, int segments,
                                const std::function<Complex(double)>& fn,
                                int interp_order = kDefaultInterpOrder);

  static SampledFunction constant(double half_width, int segments, Complex value,
                                  int interp_order = kDefaultInterpOrder);

  double half_width() const { return b_; }
  int segments() const { return static_cast<int>(values_.size()) - 1; }
  double step() const { return step_; }
  int interp_order() const { return order_; }
  const RealVector& nodes() const { return nodes_; }
  const ComplexVector& values() const { return values_; }
  double node(int i) const { return nodes_[i]; }
  Complex value(int i) const { return values_[i]; }

  /// Index of the node at x = 0 (requires an even number of segments).
  int zero_index() const;
  Complex value_at_zero() const { return values_[zero_index()]; }

  /// Interpolated evaluation; exact at the nodes. Throws DomainError outside
  /// [-b, b] (up to a small rounding slack).
  Complex operator()(double x) const;

  /// Antiderivative G with G(0) = 0; exact when the samples come from a
  /// piecewise polynomial of degree <= interp_order on the grid.
  SampledFunction antiderivative() const;

  /// Grid derivative by fourth-order finite differences (one-sided stencils
  /// at the endpoints).
  SampledFunction derivative() const;

  double max_abs() const { return values_.cwiseAbs().maxCoeff(); }
  double min_abs() const { return values_.cwiseAbs().minCoeff(); }
  double max_abs_imag() const { return values_.imag().cwiseAbs().maxCoeff(); }
  bool is_real(double tol = 1e-12) const;

  SampledFunction map(const std::function<Complex(Complex)>& op) const;
  SampledFunction with_values(ComplexVector v) const;

  friend bool same_grid(const SampledFunction& a, const SampledFunction& b);

 private:
  double b_ = 0.0;
  double step_ = 0.0;
  int order_ = kDefaultInterpOrder;
  RealVector nodes_;
  ComplexVector values_;
};

bool same_grid(const SampledFunction& a, const SampledFunction& b);

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(Complex c, const SampledFunction& a);
SampledFunction operator*(const SampledFunction& a, Complex c);
SampledFunction reciprocal(const SampledFunction& a);

}  // namespace kleinwave
