#include "kleinwave/transmute.hpp"

#include <algorithm>
#include <cmath>

#include "kleinwave/quadrature.hpp"

namespace kleinwave {

double bessel_i0(double x) {
  if (x < 0.0) throw DomainError("bessel_i0: argument must be nonnegative");
  const double q = x * x / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double bessel_i1(double x) {
  if (x < 0.0) throw DomainError("bessel_i1: argument must be nonnegative");
  return x * bessel_i1_over_x(x);
}

double bessel_i1_over_x(double x) {
  if (x < 0.0) throw DomainError("bessel_i1_over_x: argument must be nonnegative");
  const double q = x * x / 4.0;
  double term = 0.5, sum = 0.5;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k + 1));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double KernelGrid::node(int i) const {
  if (i == resolution / 2 && resolution % 2 == 0) return 0.0;
  if (i == 0) return -b;
  if (i == resolution) return b;
  return -b + i * step();
}

namespace {

// 1-D Lagrange weights for nodes start..start+p at local coordinate s
inline void lagrange_weights(double s, int p, double* w) {
  for (int m = 0; m <= p; ++m) {
    double acc = 1.0;
    for (int l = 0; l <= p; ++l) {
      if (l == m) continue;
      acc *= (s - l) / static_cast<double>(m - l);
    }
    w[m] = acc;
  }
}

}  // namespace

Complex KernelGrid::kernel(double x, double t) const {
  // tensor-product cubic Lagrange; bilinear is an order too low for the
  // mapping-property tolerances
  const double u = (x + t) / 2.0, v = (x - t) / 2.0;
  const double slack = 1e-12 * std::max(1.0, b);
  if (std::abs(u) > b + slack || std::abs(v) > b + slack)
    throw DomainError("KernelGrid::kernel: (x, t) outside the kernel square");
  const int p = std::min(3, resolution);
  const double su = std::clamp((u + b) / step(), 0.0, double(resolution));
  const double sv = std::clamp((v + b) / step(), 0.0, double(resolution));
  const int cu = std::min(static_cast<int>(std::floor(su)), resolution - 1);
  const int cv = std::min(static_cast<int>(std::floor(sv)), resolution - 1);
  const int start_u = std::clamp(cu - (p - 1) / 2, 0, resolution - p);
  const int start_v = std::clamp(cv - (p - 1) / 2, 0, resolution - p);
  double wu[4], wv[4];
  lagrange_weights(su - start_u, p, wu);
  lagrange_weights(sv - start_v, p, wv);
  Complex acc(0.0);
  for (int a = 0; a <= p; ++a) {
    Complex row(0.0);
    for (int c = 0; c <= p; ++c) row += wv[c] * H(start_u + a, start_v + c);
    acc += wu[a] * row;
  }
  return acc;
}

KernelGrid build_kernel(const SampledFunction& q, Complex h, int resolution,
                        const KernelOptions& options) {
  if (resolution < 64 || resolution % 2 != 0)
    throw InvalidInputError("build_kernel: resolution must be even and >= 64");
  const double b = q.half_width();
  const int M = resolution;
  const double step = 2.0 * b / M;

  KernelGrid grid;
  grid.b = b;
  grid.h = h;
  grid.resolution = M;
  grid.H = ComplexMatrix::Constant(M + 1, M + 1, h / 2.0);

  RealVector un(M + 1);
  for (int i = 0; i <= M; ++i) un[i] = grid.node(i);

  // q at the axis nodes and at the shifted arguments u_i + v_j (clamped to
  // [-b, b]; only points outside the diamond |u|+|v| <= b are affected).
  ComplexVector q_axis(M + 1);
  for (int i = 0; i <= M; ++i) q_axis[i] = q(un[i]);
  ComplexMatrix q_shift(M + 1, M + 1);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= M; ++j)
      q_shift(i, j) = q(std::clamp(un[i] + un[j], -b, b));

  const int p = options.quad_order;
  ComplexMatrix G(M + 1, M + 1);
  ComplexVector row(M + 1), col(M + 1);
  for (int it = 1; it <= options.max_iterations; ++it) {
    // G(u_i, v) = q(u_i)/2 + cumulative integral over v of q(u_i+v') H(u_i, v')
    for (int i = 0; i <= M; ++i) {
      for (int j = 0; j <= M; ++j) row[j] = q_shift(i, j) * grid.H(i, j);
      ComplexVector cum = cumulative_integral(row, step, p, M / 2);
      for (int j = 0; j <= M; ++j) G(i, j) = 0.5 * q_axis[i] + cum[j];
    }
    // H(u, v_j) = h/2 + cumulative integral over u of G(u', v_j)
    double diff = 0.0, hmax = 0.0;
    for (int j = 0; j <= M; ++j) {
      col = G.col(j);
      ComplexVector cum = cumulative_integral(col, step, p, M / 2);
      for (int i = 0; i <= M; ++i) {
        const Complex next = h / 2.0 + cum[i];
        diff = std::max(diff, std::abs(next - grid.H(i, j)));
        hmax = std::max(hmax, std::abs(next));
        grid.H(i, j) = next;
      }
    }
    grid.iterations = it;
    if (diff < options.tol * std::max(1.0, hmax)) return grid;
  }
  throw NumericError("build_kernel: successive approximations did not reach tol " +
                     std::to_string(options.tol) + " in " +
                     std::to_string(options.max_iterations) + " iterations");
}

namespace {

// shared implementation of T and T^{-1}; `transpose` swaps the kernel
// arguments and `sign` selects u + integral vs u - integral.
SampledFunction apply_volterra(const KernelGrid& kernel, const SampledFunction& u,
                               bool transpose, double sign) {
  const int n = u.segments();
  if (n % 2 != 0)
    throw InvalidInputError("transmute: grid must have a node at x = 0");
  if (std::abs(u.half_width() - kernel.b) > 1e-12 * std::max(1.0, kernel.b))
    throw InvalidInputError("transmute: function and kernel half-widths differ");
  const double step = u.step();
  const int p = std::min(u.interp_order(), 5);

  ComplexVector out(n + 1);
  ComplexVector integrand(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = u.node(i);
    const int lo = std::min(i, n - i), hi = std::max(i, n - i);
    Complex integral(0.0);
    if (hi > lo) {
      for (int j = lo; j <= hi; ++j) {
        const double t = u.node(j);
        const Complex k = transpose ? kernel.kernel(t, x) : kernel.kernel(x, t);
        integrand[j] = k * u.value(j);
      }
      integral = integrate_samples(integrand, step, p, lo, hi);
      if (x < 0.0) integral = -integral;  // directed integral from -x to x
    }
    out[i] = u.value(i) + sign * integral;
  }
  return u.with_values(std::move(out));
}

}  // namespace

SampledFunction transmute(const KernelGrid& kernel, const SampledFunction& u) {
  return apply_volterra(kernel, u, /*transpose=*/false, +1.0);
}

SampledFunction transmute_inverse(const KernelGrid& kernel,
                                  const SampledFunction& g) {
  return apply_volterra(kernel, g, /*transpose=*/true, -1.0);
}

double transmutation_norm_bound(const SampledFunction& q, Complex h, double b) {
  const double c = q.max_abs();
  const double z = b * std::sqrt(c);
  return 1.0 + b * (std::abs(h) * bessel_i0(z) + 2.0 * std::sqrt(c) * bessel_i1(z));
}

double kernel_bound(double c, Complex h, double x, double t) {
  const double w = c * std::abs(x * x - t * t);
  const double z = std::sqrt(w);
  return 0.5 * std::abs(h) * bessel_i0(z) +
         0.5 * c * std::abs(x + t) * bessel_i1_over_x(z);
}

}  // namespace kleinwave
