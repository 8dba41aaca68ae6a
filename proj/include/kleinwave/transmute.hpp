#pragma once

#include "kleinwave/sampled_function.hpp"
#include "kleinwave/types.hpp"

namespace kleinwave {

/// Modified Bessel functions of the first kind, by power series summed to a
/// relative tail below 1e-16. Arguments must be nonnegative.
double bessel_i0(double x);
double bessel_i1(double x);
/// I_1(z)/z, analytic through z = 0 where it equals 1/2.
double bessel_i1_over_x(double x);

/// Transmutation kernel H(u,v) = K(u+v, u-v; h) sampled on the square grid
/// |u| <= b, |v| <= b. Only the diamond |u| + |v| <= b is reached by the
/// operators; outside it the potential argument is clamped to [-b, b].
struct KernelGrid {
  double b = 0.0;
  Complex h = 0.0;
  int resolution = 0;  // M subintervals per characteristic axis
  ComplexMatrix H;     // (M+1) x (M+1); H(i, j) = H(u_i, v_j)
  int iterations = 0;

  double step() const { return 2.0 * b / resolution; }
  double node(int i) const;
  /// K(x, t; h) by bilinear interpolation in characteristic coordinates.
  Complex kernel(double x, double t) const;
};

struct KernelOptions {
  double tol = 1e-12;
  int max_iterations = 60;
  int quad_order = 5;
};

/// Kernel construction by successive approximations on the coupled system
///   H(u,v) = h/2 + int_0^u G(u',v) du',
///   G(u,v) = q(u)/2 + int_0^v q(u+v') H(u,v') dv'.
KernelGrid build_kernel(const SampledFunction& q, Complex h, int resolution = 512,
                        const KernelOptions& options = {});

/// (T u)(x) = u(x) + int_{-x}^{x} K(x,t;h) u(t) dt.
SampledFunction transmute(const KernelGrid& kernel, const SampledFunction& u);

/// (T^{-1} g)(x) = g(x) - int_{-x}^{x} K(t,x;h) g(t) dt.
SampledFunction transmute_inverse(const KernelGrid& kernel,
                                  const SampledFunction& g);

/// Bound on both ||T|| and ||T^{-1}|| on C[-b,b]:
/// 1 + b (|h| I_0(b sqrt(c)) + 2 sqrt(c) I_1(b sqrt(c))), c = max |q|.
double transmutation_norm_bound(const SampledFunction& q, Complex h, double b);

/// Pointwise bound on |K(x,t;h)| with c = max |q|; the removable singularity
/// at t = +-x is evaluated through I_1(z)/z.
double kernel_bound(double c, Complex h, double x, double t);

}  // namespace kleinwave
