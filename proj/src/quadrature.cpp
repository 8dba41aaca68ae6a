#include "kleinwave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <mutex>
#include <vector>

namespace kleinwave {

namespace {

// Exact integral over [c, c+1] of the Lagrange basis polynomial L_m through
// nodes 0..p, computed in integer arithmetic over a common denominator so the
// weights are correct to the last bit (a single rounding at the end). The
// magnitudes stay far below the int64 range for p <= 8.
double lagrange_cell_integral(int p, int c, int m) {
  std::vector<std::int64_t> poly{1};
  std::int64_t denom = 1;
  for (int l = 0; l <= p; ++l) {
    if (l == m) continue;
    denom *= m - l;
    std::vector<std::int64_t> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * l;
    }
    poly = std::move(next);
  }
  std::int64_t lcm = 1;
  for (int i = 1; i <= p + 1; ++i) lcm = std::lcm(lcm, std::int64_t(i));
  std::int64_t sum = 0;
  std::int64_t lo = 1, hi = 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    lo *= c;
    hi *= c + 1;
    sum += poly[i] * (hi - lo) * (lcm / static_cast<std::int64_t>(i + 1));
  }
  return static_cast<double>(sum) / (static_cast<double>(lcm) * static_cast<double>(denom));
}

constexpr int kMaxOrder = 8;

}  // namespace

const RealMatrix& cell_quadrature_weights(int order) {
  if (order < 1 || order > kMaxOrder)
    throw InvalidInputError("quadrature order must be in [1, 8], got " +
                            std::to_string(order));
  static std::array<RealMatrix, kMaxOrder + 1> cache;
  static std::once_flag flags[kMaxOrder + 1];
  std::call_once(flags[order], [order] {
    RealMatrix w(order, order + 1);
    for (int c = 0; c < order; ++c)
      for (int m = 0; m <= order; ++m) w(c, m) = lagrange_cell_integral(order, c, m);
    cache[order] = std::move(w);
  });
  return cache[order];
}

ComplexVector cumulative_integral(const ComplexVector& samples, double step,
                                  int order, int zero_index) {
  const int n_cells = static_cast<int>(samples.size()) - 1;
  if (n_cells < 1) throw InvalidInputError("cumulative_integral: need at least 2 samples");
  const int p = std::min(order, n_cells);
  const RealMatrix& w = cell_quadrature_weights(p);
  ComplexVector out(n_cells + 1);
  out[0] = Complex(0.0);
  Complex running(0.0), compensation(0.0);  // Kahan-compensated prefix sum
  for (int cell = 0; cell < n_cells; ++cell) {
    int start = std::clamp(cell - (p - 1) / 2, 0, n_cells - p);
    Complex acc(0.0);
    for (int m = 0; m <= p; ++m) acc += w(cell - start, m) * samples[start + m];
    const Complex y = acc * step - compensation;
    const Complex next = running + y;
    compensation = (next - running) - y;
    running = next;
    out[cell + 1] = running;
  }
  if (zero_index < 0 || zero_index > n_cells)
    throw InvalidInputError("cumulative_integral: zero_index out of range");
  const Complex shift = out[zero_index];
  for (int i = 0; i <= n_cells; ++i) out[i] -= shift;
  return out;
}

namespace {

// L_m'(r) for the Lagrange basis through nodes 0..p, exact integer arithmetic.
double lagrange_derivative_at_node(int p, int r, int m) {
  std::vector<std::int64_t> poly{1};
  std::int64_t denom = 1;
  for (int l = 0; l <= p; ++l) {
    if (l == m) continue;
    denom *= m - l;
    std::vector<std::int64_t> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * l;
    }
    poly = std::move(next);
  }
  std::int64_t value = 0, power = 1;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    value += poly[i] * static_cast<std::int64_t>(i) * power;
    power *= r;
  }
  return static_cast<double>(value) / static_cast<double>(denom);
}

}  // namespace

const RealMatrix& stencil_derivative_weights(int order) {
  if (order < 1 || order > kMaxOrder)
    throw InvalidInputError("derivative order must be in [1, 8], got " +
                            std::to_string(order));
  static std::array<RealMatrix, kMaxOrder + 1> cache;
  static std::once_flag flags[kMaxOrder + 1];
  std::call_once(flags[order], [order] {
    RealMatrix w(order + 1, order + 1);
    for (int r = 0; r <= order; ++r)
      for (int m = 0; m <= order; ++m)
        w(r, m) = lagrange_derivative_at_node(order, r, m);
    cache[order] = std::move(w);
  });
  return cache[order];
}

ComplexVector derivative_samples(const ComplexVector& samples, double step,
                                 int order) {
  const int n = static_cast<int>(samples.size()) - 1;
  const int p = std::min(order, n);
  const RealMatrix& w = stencil_derivative_weights(p);
  ComplexVector out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const int start = std::clamp(i - p / 2, 0, n - p);
    Complex acc(0.0);
    for (int m = 0; m <= p; ++m) acc += w(i - start, m) * samples[start + m];
    out[i] = acc / step;
  }
  return out;
}

Complex integrate_samples(const ComplexVector& samples, double step, int order,
                          int first, int last) {
  if (first > last || first < 0 || last >= samples.size())
    throw InvalidInputError("integrate_samples: bad index range");
  if (first == last) return Complex(0.0);
  const int n_cells = last - first;
  const int p = std::min(order, n_cells);
  const RealMatrix& w = cell_quadrature_weights(p);
  Complex acc(0.0);
  for (int cell = 0; cell < n_cells; ++cell) {
    int start = std::clamp(cell - (p - 1) / 2, 0, n_cells - p);
    for (int m = 0; m <= p; ++m) acc += w(cell - start, m) * samples[first + start + m];
  }
  return acc * step;
}

}  // namespace kleinwave
