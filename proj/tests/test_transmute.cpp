#include <cmath>
#include <random>

#include "doctest.h"
#include "kleinwave/basis.hpp"
#include "kleinwave/transmute.hpp"
#include "test_util.hpp"

using namespace kleinwave;

namespace {

// Integral-representation oracle for the modified Bessel functions:
// I_nu(x) = (1/pi) int_0^pi e^{x cos(theta)} cos(nu theta) dtheta,
// independent of the power-series route used by the implementation.
double bessel_oracle(int nu, double x) {
  const int n = 4000;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double theta = M_PI * i / n;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * std::exp(x * std::cos(theta)) * std::cos(nu * theta);
  }
  return acc * M_PI / n / M_PI;
}

}  // namespace

TEST_SUITE_BEGIN("transmute");

TEST_CASE("bessel functions") {
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK(bessel_i1(0.0) == 0.0);
  CHECK(bessel_i1_over_x(0.0) == 0.5);
  CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520).epsilon(1e-12));
  for (double x : {0.3, 1.0, 2.5, 6.0, 10.0}) {
    CHECK(bessel_i0(x) == doctest::Approx(bessel_oracle(0, x)).epsilon(1e-11));
    CHECK(bessel_i1(x) == doctest::Approx(bessel_oracle(1, x)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(bessel_i0(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_i1(-0.5), DomainError);
}

TEST_CASE("zero potential and zero slope give the zero kernel") {
  auto q = SampledFunction::constant(1.0, 200, Complex(0.0));
  KernelGrid kernel = build_kernel(q, Complex(0.0), 64);
  CHECK(kernel.H.cwiseAbs().maxCoeff() == 0.0);
  CHECK(kernel.iterations <= 2);

  auto u = SampledFunction::sample(1.0, 400,
                                   [](double x) { return Complex(std::sin(2 * x), x); });
  auto Tu = transmute(kernel, u);
  CHECK(testing::max_rel_error(Tu.values(), u.values()) < 1e-15);
  auto back = transmute_inverse(kernel, u);
  CHECK(testing::max_rel_error(back.values(), u.values()) < 1e-15);
}

TEST_CASE("zero potential with nonzero slope gives the constant kernel h/2") {
  auto q = SampledFunction::constant(1.0, 200, Complex(0.0));
  const Complex h(0.8, -0.3);
  KernelGrid kernel = build_kernel(q, h, 64);
  CHECK((kernel.H.array() - h / 2.0).abs().maxCoeff() < 1e-15);
}

TEST_CASE("constant potential kernel equals the closed Bessel form") {
  const double c = 9.0, h = 3.0, b = 1.0;
  auto q = SampledFunction::constant(b, 400, Complex(c));
  KernelGrid kernel = build_kernel(q, Complex(h), 256);
  double rel = 0.0;
  for (int i = 256 / 2; i <= 256; ++i) {
    for (int j = 256 / 2; j <= i; ++j) {  // v <= u: the region 0 <= t <= x
      const double u = kernel.node(i), v = kernel.node(j);
      if (u + v > b + 1e-14) continue;
      const double z = 2.0 * std::sqrt(c * u * v);
      const double exact = 0.5 * h * bessel_i0(z) + c * u * bessel_i1_over_x(z);
      rel = std::max(rel, std::abs(kernel.H(i, j).real() - exact) / exact);
    }
  }
  CHECK(rel <= 1e-6);
}

TEST_CASE("goursat boundary conditions hold on the grid") {
  auto q = SampledFunction::sample(1.0, 600, [](double x) { return Complex(x * x, 0.3 * x); });
  const Complex h(0.5, 0.2);
  KernelGrid kernel = build_kernel(q, h, 128);
  const int mid = 64;
  // H(0, v) = h/2
  for (int j = 0; j <= 128; ++j)
    CHECK(std::abs(kernel.H(mid, j) - h / 2.0) < 1e-12);
  // H(u, 0) = h/2 + (1/2) int_0^u q
  auto Q = q.antiderivative();
  for (int i = 0; i <= 128; ++i) {
    const Complex want = h / 2.0 + 0.5 * Q(kernel.node(i));
    CHECK(std::abs(kernel.H(i, mid) - want) < 1e-10);
  }
}

TEST_CASE("kernel estimate holds pointwise") {
  auto q = SampledFunction::sample(1.0, 600, [](double x) { return Complex(x * x); });
  const Complex h(0.4);
  KernelGrid kernel = build_kernel(q, h, 128);
  const double c = q.max_abs();
  for (int i = 0; i <= 128; ++i) {
    for (int j = 0; j <= 128; ++j) {
      const double u = kernel.node(i), v = kernel.node(j);
      const double x = u + v, t = u - v;
      const double bound = kernel_bound(c, h, x, t);
      CHECK(std::abs(kernel.H(i, j)) <= bound * (1.0 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("transmutation maps x^k to phi_k") {
  const double b = 1.0;
  auto f = SampledFunction::sample(b, 1200,
                                   [](double x) { return Complex(std::exp(3 * x)); });
  PhiBasis basis = build_basis(f, 8);
  auto q = SampledFunction::constant(b, 1200, Complex(9.0));
  KernelGrid kernel = build_kernel(q, Complex(3.0), 256);
  for (int k = 0; k <= 6; ++k) {
    auto xk = SampledFunction::sample(b, 1200,
                                      [k](double x) { return Complex(std::pow(x, k)); });
    auto mapped = transmute(kernel, xk);
    CHECK(testing::max_rel_error(mapped.values(), basis.phi[k].values()) <= 1e-4);
  }
}

TEST_CASE("inverse composition returns the original powers") {
  const double b = 1.0;
  auto q = SampledFunction::constant(b, 1200, Complex(9.0));
  KernelGrid kernel = build_kernel(q, Complex(3.0), 256);
  for (int k = 0; k <= 6; ++k) {
    auto xk = SampledFunction::sample(b, 1200,
                                      [k](double x) { return Complex(std::pow(x, k)); });
    auto roundtrip = transmute_inverse(kernel, transmute(kernel, xk));
    double err = 0.0;
    for (int i = 0; i <= 1200; ++i)
      err = std::max(err, std::abs(roundtrip.value(i) - xk.value(i)));
    CHECK(err <= 1e-4);
  }
}

TEST_CASE("inverse maps phi_k back to x^k") {
  const double b = 1.0;
  auto f = SampledFunction::sample(b, 1200,
                                   [](double x) { return Complex(std::exp(3 * x)); });
  PhiBasis basis = build_basis(f, 6);
  auto q = SampledFunction::constant(b, 1200, Complex(9.0));
  KernelGrid kernel = build_kernel(q, Complex(3.0), 256);
  for (int k = 0; k <= 6; ++k) {
    auto back = transmute_inverse(kernel, basis.phi[k]);
    double err = 0.0;
    for (int i = 0; i <= 1200; ++i)
      err = std::max(err, std::abs(back.value(i) - std::pow(back.node(i), k)));
    CHECK(err <= 1e-4);
  }
}

TEST_CASE("norm bound values and monotonicity") {
  auto zero = SampledFunction::constant(2.0, 100, Complex(0.0));
  CHECK(transmutation_norm_bound(zero, Complex(0.0), 2.0) == 1.0);

  auto q9 = SampledFunction::constant(2.0, 100, Complex(9.0));
  const double want = 1.0 + 2.0 * (3.0 * bessel_oracle(0, 6.0) + 6.0 * bessel_oracle(1, 6.0));
  CHECK(transmutation_norm_bound(q9, Complex(3.0), 2.0) ==
        doctest::Approx(want).epsilon(1e-10));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double c = uni(rng), dh = uni(rng), b = 0.5 + uni(rng) / 5.0;
    auto qa = SampledFunction::constant(b, 60, Complex(c));
    auto qb = SampledFunction::constant(b, 60, Complex(c + 1.0));
    CHECK(transmutation_norm_bound(qa, Complex(dh), b) <=
          transmutation_norm_bound(qb, Complex(dh), b));
    CHECK(transmutation_norm_bound(qa, Complex(dh), b) <=
          transmutation_norm_bound(qa, Complex(dh + 0.5), b));
  }
}

TEST_CASE("operator norm observed on test functions stays below the bound") {
  const double b = 1.0;
  auto q = SampledFunction::sample(b, 800, [](double x) { return Complex(x * x); });
  KernelGrid kernel = build_kernel(q, Complex(0.7), 128);
  const double bound = transmutation_norm_bound(q, Complex(0.7), b);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a1 = uni(rng), a2 = uni(rng), a3 = uni(rng);
    auto u = SampledFunction::sample(b, 800, [&](double x) {
      return Complex(a1 + a2 * std::sin(3 * x) + a3 * x * x);
    });
    auto Tu = transmute(kernel, u);
    CHECK(Tu.max_abs() <= bound * u.max_abs() * (1.0 + 1e-9));
    auto Tinv_u = transmute_inverse(kernel, u);
    CHECK(Tinv_u.max_abs() <= bound * u.max_abs() * (1.0 + 1e-9));
  }
}

TEST_SUITE_END();
