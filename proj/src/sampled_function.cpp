#include "kleinwave/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kleinwave/quadrature.hpp"

namespace kleinwave {

namespace {

RealVector make_nodes(double b, int n) {
  RealVector nodes(n + 1);
  const double step = 2.0 * b / n;
  for (int i = 0; i <= n; ++i) nodes[i] = -b + i * step;
  nodes[0] = -b;
  nodes[n] = b;
  if (n % 2 == 0) nodes[n / 2] = 0.0;
  return nodes;
}

}  // namespace

SampledFunction::SampledFunction(double half_width, ComplexVector values,
                                 int interp_order)
    : b_(half_width), order_(interp_order), values_(std::move(values)) {
  if (!(b_ > 0.0)) throw InvalidInputError("SampledFunction: half-width must be positive");
  if (values_.size() < 2)
    throw InvalidInputError("SampledFunction: need at least two samples");
  if (interp_order < 1 || interp_order % 2 == 0)
    throw InvalidInputError("SampledFunction: interp_order must be odd and >= 1");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
      throw InvalidInputError("SampledFunction: non-finite sample at index " +
                              std::to_string(i));
  }
  const int n = segments();
  step_ = 2.0 * b_ / n;
  nodes_ = make_nodes(b_, n);
}

SampledFunction SampledFunction::sample(double half_width, int segments,
                                        const std::function<Complex(double)>& fn,
                                        int interp_order) {
  RealVector nodes = make_nodes(half_width, segments);
  ComplexVector v(segments + 1);
  for (int i = 0; i <= segments; ++i) v[i] = fn(nodes[i]);
  return SampledFunction(half_width, std::move(v), interp_order);
}

SampledFunction SampledFunction::constant(double half_width, int segments,
                                          Complex value, int interp_order) {
  return SampledFunction(half_width, ComplexVector::Constant(segments + 1, value),
                         interp_order);
}

int SampledFunction::zero_index() const {
  const int n = segments();
  if (n % 2 != 0)
    throw InvalidInputError("SampledFunction: grid has no node at x = 0 (odd segment count)");
  return n / 2;
}

Complex SampledFunction::operator()(double x) const {
  const int n = segments();
  const double slack = 16.0 * std::numeric_limits<double>::epsilon() * b_;
  if (x < -b_ - slack || x > b_ + slack)
    throw DomainError("SampledFunction: evaluation at x = " + std::to_string(x) +
                      " outside [-b, b] with b = " + std::to_string(b_));
  x = std::clamp(x, -b_, b_);

  // exact node hit
  int near = static_cast<int>(std::lround((x + b_) / step_));
  near = std::clamp(near, 0, n);
  if (x == nodes_[near]) return values_[near];

  const int p = std::min(order_, n);
  int cell = std::clamp(static_cast<int>(std::floor((x + b_) / step_)), 0, n - 1);
  int start = std::clamp(cell - (p - 1) / 2, 0, n - p);
  // local coordinate: stencil nodes sit at s = 0..p
  const double s = (x - nodes_[start]) / step_;
  Complex acc(0.0);
  for (int m = 0; m <= p; ++m) {
    double lm = 1.0;
    for (int l = 0; l <= p; ++l) {
      if (l == m) continue;
      lm *= (s - l) / static_cast<double>(m - l);
    }
    acc += lm * values_[start + m];
  }
  return acc;
}

SampledFunction SampledFunction::antiderivative() const {
  const int n = segments();
  ComplexVector cum = cumulative_integral(values_, step_, std::min(order_, n), 0);
  if (n % 2 == 0) {
    const Complex at0 = cum[n / 2];
    for (int i = 0; i <= n; ++i) cum[i] -= at0;
  } else {
    SampledFunction raw(b_, cum, order_);
    const Complex at0 = raw(0.0);
    for (int i = 0; i <= n; ++i) cum[i] -= at0;
  }
  return SampledFunction(b_, std::move(cum), order_);
}

SampledFunction SampledFunction::derivative() const {
  const int n = segments();
  if (n < 2)
    throw InvalidInputError("SampledFunction::derivative: need at least 3 nodes");
  // degree-6 stencils (7 points) keep chained f-derivatives accurate
  const int stencil = std::min(6, n);
  return SampledFunction(b_, derivative_samples(values_, step_, stencil), order_);
}

bool SampledFunction::is_real(double tol) const {
  return max_abs_imag() <= tol * std::max(1.0, max_abs());
}

SampledFunction SampledFunction::map(const std::function<Complex(Complex)>& op) const {
  ComplexVector v(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) v[i] = op(values_[i]);
  return SampledFunction(b_, std::move(v), order_);
}

SampledFunction SampledFunction::with_values(ComplexVector v) const {
  if (v.size() != values_.size())
    throw InvalidInputError("with_values: sample count mismatch");
  return SampledFunction(b_, std::move(v), order_);
}

bool same_grid(const SampledFunction& a, const SampledFunction& b) {
  return a.b_ == b.b_ && a.values_.size() == b.values_.size();
}

namespace {
void require_same_grid(const SampledFunction& a, const SampledFunction& b) {
  if (!same_grid(a, b))
    throw InvalidInputError("pointwise operation on functions with different grids");
}
}  // namespace

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
  require_same_grid(a, b);
  return a.with_values(a.values() + b.values());
}

SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
  require_same_grid(a, b);
  return a.with_values(a.values() - b.values());
}

SampledFunction operator*(const SampledFunction& a, const SampledFunction& b) {
  require_same_grid(a, b);
  return a.with_values(a.values().cwiseProduct(b.values()));
}

SampledFunction operator*(Complex c, const SampledFunction& a) {
  return a.with_values(c * a.values());
}

SampledFunction operator*(const SampledFunction& a, Complex c) { return c * a; }

SampledFunction reciprocal(const SampledFunction& a) {
  ComplexVector v(a.values().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (a.values()[i] == Complex(0.0))
      throw InvalidInputError("reciprocal: sample is exactly zero");
    v[i] = 1.0 / a.values()[i];
  }
  return a.with_values(std::move(v));
}

}  // namespace kleinwave
