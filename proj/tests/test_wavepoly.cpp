#include <cmath>
#include <random>

#include "doctest.h"
#include "kleinwave/basis.hpp"
#include "kleinwave/wavepoly.hpp"
#include "test_util.hpp"

using namespace kleinwave;

namespace {

// exact wave-operator residual p_xx - p_tt from the binomial form
double exact_wave_residual(int m, double x, double t) {
  if (m == 0) return 0.0;
  const int s = (m % 2 == 1) ? (m + 1) / 2 : m / 2;
  const int k_start = (m % 2 == 1) ? 0 : 1;
  double acc = 0.0;
  for (int k = k_start; k <= s; k += 2) {
    const double c = binomial(s, k);
    const int px = s - k;
    if (px >= 2) acc += c * px * (px - 1) * std::pow(x, px - 2) * std::pow(t, k);
    if (k >= 2) acc -= c * k * (k - 1) * std::pow(x, px) * std::pow(t, k - 2);
  }
  return acc;
}

}  // namespace

TEST_SUITE_BEGIN("wavepoly");

TEST_CASE("the first wave polynomials") {
  for (double x : {-1.3, 0.0, 0.7}) {
    for (double t : {-0.4, 0.0, 1.1}) {
      CHECK(wave_poly(0, x, t) == 1.0);
      CHECK(wave_poly(1, x, t) == doctest::Approx(x));
      CHECK(wave_poly(2, x, t) == doctest::Approx(t));
      CHECK(wave_poly(3, x, t) == doctest::Approx(x * x + t * t));
      CHECK(wave_poly(4, x, t) == doctest::Approx(2 * x * t));
    }
  }
}

TEST_CASE("sum and difference give powers of x +- t") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      const double x = uni(rng), t = uni(rng);
      const double plus = wave_poly(2 * n - 1, x, t) + wave_poly(2 * n, x, t);
      const double minus = wave_poly(2 * n - 1, x, t) - wave_poly(2 * n, x, t);
      CHECK(plus == doctest::Approx(std::pow(x + t, n)).epsilon(1e-12));
      CHECK(minus == doctest::Approx(std::pow(x - t, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("parity in t") {
  for (int m = 1; m <= 12; ++m) {
    const double x = 0.83, t = 1.21;
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    CHECK(wave_poly(m, x, -t) == doctest::Approx(sign * wave_poly(m, x, t)));
  }
}

TEST_CASE("wave residual of p_m vanishes identically") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  for (int m = 0; m <= 14; ++m)
    for (int trial = 0; trial < 5; ++trial)
      CHECK(std::abs(exact_wave_residual(m, uni(rng), uni(rng))) < 1e-10);
}

TEST_CASE("goursat solution basics") {
  auto c = SampledFunction::constant(1.0, 200, Complex(2.5, -1.0));
  CHECK(goursat_solution(c, c, 0.7, -0.9) == Complex(2.5, -1.0));

  auto lin = SampledFunction::sample(1.0, 200, [](double x) { return Complex(x); });
  auto zero = SampledFunction::constant(1.0, 200, Complex(0.0));
  CHECK(std::abs(goursat_solution(lin, zero, 0.6, 0.8) - Complex(0.7)) < 1e-13);

  auto one = SampledFunction::constant(1.0, 200, Complex(1.0));
  CHECK_THROWS_AS(goursat_solution(lin, one, 0.1, 0.1), InvalidInputError);
  CHECK_THROWS_AS(goursat_solution(c, c, 1.5, 0.8), DomainError);
}

TEST_CASE("wave expansion of power-series data") {
  SUBCASE("constants") {
    ComplexVector a(1), b(1);
    a << Complex(1.0);
    b << Complex(1.0);
    WaveCoefficients w = wave_expansion(a, b);
    CHECK(w.coeffs.size() == 1);
    CHECK(w.coeffs[0] == Complex(1.0));
  }
  SUBCASE("linear in phi only") {
    ComplexVector a(2), b(2);
    a << Complex(0.0), Complex(1.0);
    b << Complex(0.0), Complex(0.0);
    WaveCoefficients w = wave_expansion(a, b);
    CHECK(w.coeffs[1] == Complex(0.5));
    CHECK(w.coeffs[2] == Complex(0.5));
  }
  SUBCASE("mismatched constants are rejected") {
    ComplexVector a(2), b(2);
    a << Complex(1.0), Complex(0.0);
    b << Complex(2.0), Complex(0.0);
    CHECK_THROWS_AS(wave_expansion(a, b), InvalidInputError);
  }
}

TEST_CASE("wave expansion equals the goursat solution pointwise") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ComplexVector alpha(7), beta(7);
  for (int i = 0; i < 7; ++i) {
    alpha[i] = Complex(uni(rng), uni(rng));
    beta[i] = Complex(uni(rng), uni(rng));
  }
  beta[0] = alpha[0];
  auto poly = [](const ComplexVector& c, double x) {
    Complex acc(0.0);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  auto phi = SampledFunction::sample(1.0, 800, [&](double x) { return poly(alpha, x); });
  auto psi = SampledFunction::sample(1.0, 800, [&](double x) { return poly(beta, x); });
  WaveCoefficients w = wave_expansion(alpha, beta);
  for (int trial = 0; trial < 25; ++trial) {
    double x = 2.0 * uni(rng), t = 2.0 * uni(rng);
    if (std::abs(x + t) > 2.0 || std::abs(x - t) > 2.0) continue;
    const Complex via_goursat = goursat_solution(phi, psi, x, t);
    const Complex via_sum = eval_wave_sum(w, x, t);
    // the sampled data carries interpolation error; the coefficients are exact
    CHECK(std::abs(via_goursat - via_sum) < 1e-11);
  }
}

TEST_CASE("generalized wave polynomials") {
  auto f = SampledFunction::sample(1.0, 2000,
                                   [](double x) { return Complex(std::exp(3 * x)); });
  PhiBasis basis = build_basis(f, 8);

  SUBCASE("u_0 is f for every t") {
    for (double t : {-1.0, 0.0, 2.5})
      CHECK(gen_wave_poly(basis, 0, 0.4, t) == basis.f(0.4));
  }
  SUBCASE("t = 0 relations") {
    for (int n = 1; n <= 6; ++n) {
      for (double x : {-0.8, 0.1, 0.9}) {
        CHECK(std::abs(gen_wave_poly(basis, 2 * n - 1, x, 0.0) - basis.phi[n](x)) <
              1e-12 * basis.phi[n].max_abs());
        CHECK(gen_wave_poly(basis, 2 * n, x, 0.0) == Complex(0.0));
        // d/dt u_{2n} at t = 0 equals n phi_{n-1}
        const double dt = 1e-6;
        const Complex slope =
            (gen_wave_poly(basis, 2 * n, x, dt) - gen_wave_poly(basis, 2 * n, x, -dt)) /
            (2.0 * dt);
        CHECK(std::abs(slope - double(n) * basis.phi[n - 1](x)) <
              1e-6 * std::max(1.0, std::abs(basis.phi[n - 1](x)) * n));
      }
    }
  }
  SUBCASE("basis too short raises a capacity error") {
    CHECK_THROWS_AS(gen_wave_poly(basis, 2 * 8 + 1, 0.2, 0.1), CapacityError);
  }
}

TEST_CASE("u_m collapses to p_m when f == 1") {
  auto one = SampledFunction::constant(1.0, 2000, Complex(1.0));
  PhiBasis basis = build_basis(one, 7);
  double err = 0.0;
  for (int m = 0; m <= 12; ++m)
    for (double x : {-0.95, -0.3, 0.2, 0.75})
      for (double t : {0.0, 0.4, 1.3})
        err = std::max(err, std::abs(gen_wave_poly(basis, m, x, t) - wave_poly(m, x, t)));
  CHECK(err <= 1e-10);
}

TEST_CASE("u_m satisfies the Klein-Gordon equation (finite differences)") {
  auto f = SampledFunction::sample(1.0, 2000,
                                   [](double x) { return Complex(std::exp(3 * x)); });
  PhiBasis basis = build_basis(f, 7);
  const double q = 9.0, d = 1e-3;
  for (int m = 0; m <= 12; ++m) {
    double umax = 0.0, rmax = 0.0;
    for (double x : {-0.4, -0.1, 0.2, 0.5}) {
      for (double t : {0.05, 0.2, 0.4}) {
        const Complex u = gen_wave_poly(basis, m, x, t);
        const Complex uxx = (gen_wave_poly(basis, m, x + d, t) - 2.0 * u +
                             gen_wave_poly(basis, m, x - d, t)) / (d * d);
        const Complex utt = (gen_wave_poly(basis, m, x, t + d) - 2.0 * u +
                             gen_wave_poly(basis, m, x, t - d)) / (d * d);
        umax = std::max(umax, std::abs(u));
        rmax = std::max(rmax, std::abs(uxx - utt - q * u));
      }
    }
    CHECK(rmax <= 1e-4 * std::max(1.0, umax));
  }
}

TEST_SUITE_END();
