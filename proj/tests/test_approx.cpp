#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "kleinwave/approx.hpp"
#include "kleinwave/simplex.hpp"
#include "kleinwave/spps.hpp"
#include "test_util.hpp"

using namespace kleinwave;

namespace {

std::shared_ptr<PhiBasis> monomial_basis(double b, int segments, int order) {
  auto one = SampledFunction::constant(b, segments, Complex(1.0));
  return std::make_shared<PhiBasis>(build_basis(one, order));
}

std::shared_ptr<PhiBasis> exp3_basis(double b, int segments, int order) {
  auto f = SampledFunction::sample(b, segments,
                                   [](double x) { return Complex(std::exp(3 * x)); });
  BasisOptions opts;
  opts.fprime0 = Complex(3.0);
  return std::make_shared<PhiBasis>(build_basis(f, order, opts));
}

}  // namespace

TEST_SUITE_BEGIN("approx");

TEST_CASE("simplex solves small problems") {
  SUBCASE("equality form") {
    // maximize 3x + 2y  s.t.  x + y = 4, x - y = 2, x,y >= 0  ->  x=3, y=1
    RealMatrix A(2, 2);
    A << 1, 1, 1, -1;
    RealVector rhs(2), c(2);
    rhs << 4, 2;
    c << 3, 2;
    SimplexResult r = simplex_maximize(A, rhs, c);
    REQUIRE(r.status == SimplexResult::Status::Optimal);
    CHECK(r.objective == doctest::Approx(11.0));
    CHECK(r.x[0] == doctest::Approx(3.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
  }
  SUBCASE("infeasible") {
    RealMatrix A(2, 1);
    A << 1, 1;
    RealVector rhs(2), c(1);
    rhs << 1, 2;
    c << 1;
    CHECK(simplex_maximize(A, rhs, c).status == SimplexResult::Status::Infeasible);
  }
  SUBCASE("unbounded") {
    RealMatrix A(1, 2);
    A << 1, -1;
    RealVector rhs(1), c(2);
    rhs << 0;
    c << 1, 1;
    CHECK(simplex_maximize(A, rhs, c).status == SimplexResult::Status::Unbounded);
  }
  SUBCASE("multipliers reproduce the dual solution") {
    // max x+y s.t. 2x + y = 10, x + 3y = 15 -> x=3, y=4; duals solve A^T pi = c
    RealMatrix A(2, 2);
    A << 2, 1, 1, 3;
    RealVector rhs(2), c(2);
    rhs << 10, 15;
    c << 1, 1;
    SimplexResult r = simplex_maximize(A, rhs, c);
    REQUIRE(r.status == SimplexResult::Status::Optimal);
    RealVector pi = A.transpose().partialPivLu().solve(c);
    CHECK(r.multipliers[0] == doctest::Approx(pi[0]));
    CHECK(r.multipliers[1] == doctest::Approx(pi[1]));
  }
}

TEST_CASE("tchebyshev interpolation hand-checked cases") {
  auto basis = monomial_basis(1.0, 400, 3);
  SUBCASE("degree 0 on {-1, 1}") {
    ReferenceSet ref;
    ref.points = RealVector(2);
    ref.points << -1.0, 1.0;
    RealVector gv(2);
    gv << 0.0, 2.0;
    TchebInterpResult r = tchebyshev_interpolation(gv, ref, *basis, 0);
    CHECK(r.coeffs[0] == doctest::Approx(1.0));
    CHECK(r.levelled_error == doctest::Approx(-1.0));
  }
  SUBCASE("x^2 at degree 1 on {-1, 0, 1}") {
    ReferenceSet ref;
    ref.points = RealVector(3);
    ref.points << -1.0, 0.0, 1.0;
    RealVector gv(3);
    gv << 1.0, 0.0, 1.0;
    TchebInterpResult r = tchebyshev_interpolation(gv, ref, *basis, 1);
    CHECK(r.coeffs[0] == doctest::Approx(0.5));
    CHECK(r.coeffs[1] == doctest::Approx(0.0));
    CHECK(r.levelled_error == doctest::Approx(0.5));
  }
  SUBCASE("exact recovery of data in the span") {
    ReferenceSet ref;
    ref.points = RealVector(5);
    ref.points << -0.9, -0.4, 0.1, 0.5, 0.95;
    RealVector gv(5);
    for (int j = 0; j < 5; ++j) {
      const double x = ref.points[j];
      gv[j] = 2.0 - x + 0.5 * x * x - 3.0 * x * x * x;
    }
    TchebInterpResult r = tchebyshev_interpolation(gv, ref, *basis, 3);
    CHECK(std::abs(r.levelled_error) < 1e-12);
    CHECK(r.coeffs[0] == doctest::Approx(2.0));
    CHECK(r.coeffs[3] == doctest::Approx(-3.0));
  }
}

TEST_CASE("initial reference sets") {
  auto g = SampledFunction::sample(1.0, 400,
                                   [](double x) { return Complex(std::exp(x)); });
  SUBCASE("chebyshev points, n = 1, b = 1") {
    auto basis = monomial_basis(1.0, 400, 3);
    ReferenceSet ref = initial_reference(ReferenceKind::Chebyshev, *basis, 1, g);
    REQUIRE(ref.size() == 3);
    CHECK(ref.points[0] == doctest::Approx(-1.0));
    CHECK(ref.points[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ref.points[2] == doctest::Approx(1.0));
  }
  SUBCASE("chebyshev points, n = 2, b = 2") {
    auto basis = monomial_basis(2.0, 400, 3);
    auto g2 = SampledFunction::sample(2.0, 400,
                                      [](double x) { return Complex(std::exp(x)); });
    ReferenceSet ref = initial_reference(ReferenceKind::Chebyshev, *basis, 2, g2);
    REQUIRE(ref.size() == 4);
    CHECK(ref.points[0] == doctest::Approx(-2.0));
    CHECK(ref.points[1] == doctest::Approx(-1.0));
    CHECK(ref.points[2] == doctest::Approx(1.0));
    CHECK(ref.points[3] == doctest::Approx(2.0));
  }
  SUBCASE("least-squares extrema fall back on an in-span function") {
    auto basis = monomial_basis(1.0, 400, 3);
    auto in_span = SampledFunction::sample(1.0, 400,
                                           [](double x) { return Complex(1.0 + x); });
    ReferenceSet ref = initial_reference(ReferenceKind::LsqExtrema, *basis, 2, in_span);
    REQUIRE(ref.size() == 4);  // chebyshev fallback
    CHECK(ref.points[0] == doctest::Approx(-1.0));
  }
  SUBCASE("least-squares extrema of a genuine residual alternate") {
    auto basis = monomial_basis(1.0, 400, 5);
    ReferenceSet ref = initial_reference(ReferenceKind::LsqExtrema, *basis, 4, g);
    REQUIRE(ref.size() == 6);
    for (int j = 0; j + 1 < 6; ++j) CHECK(ref.points[j] < ref.points[j + 1]);
  }
}

TEST_CASE("remez equioscillation for x^2 at degree 1") {
  auto basis = monomial_basis(1.0, 2000, 3);
  auto g = SampledFunction::sample(1.0, 2000,
                                   [](double x) { return Complex(x * x); });
  double c0 = 0.0, c1 = 0.0;
  const double oracle = testing::brute_force_minimax_deg1(
      [](double x) { return x * x; }, &c0, &c1);
  CHECK(oracle == doctest::Approx(0.5).epsilon(1e-4));

  ApproxResult r = remez(g, basis, 1);
  CHECK(r.max_deviation == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::abs(r.levelled_error) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::abs(r.poly.coeffs[0] - Complex(0.5)) < 1e-8);
  CHECK(std::abs(r.poly.coeffs[1]) < 1e-8);
  REQUIRE(r.reference.size() == 3);
  CHECK(r.reference.points[0] == doctest::Approx(-1.0).epsilon(1e-4));
  CHECK(r.reference.points[1] == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(r.reference.points[2] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("remez on data in the span converges immediately") {
  auto basis = exp3_basis(1.0, 1500, 5);
  ComplexVector c(4);
  c << Complex(0.2), Complex(-1.0), Complex(0.4), Complex(0.05);
  FPolynomial p(basis, c);
  auto g = basis->f.with_values(p.values_on_grid());
  ApproxResult r = remez(g, basis, 3);
  CHECK(r.iterations == 1);
  CHECK(r.max_deviation <= 1e-12 * g.max_abs());
}

TEST_CASE("remez rejects complex data") {
  auto basis = monomial_basis(1.0, 400, 3);
  auto g = SampledFunction::sample(1.0, 400,
                                   [](double x) { return Complex(x, x * x); });
  CHECK_THROWS_AS(remez(g, basis, 2), InvalidInputError);
}

TEST_CASE("both exchange rules agree on a smooth function") {
  auto basis = monomial_basis(1.0, 2000, 9);
  auto g = SampledFunction::sample(
      1.0, 2000, [](double x) { return Complex(std::exp(x) * std::sin(2 * x)); });
  RemezOptions single;
  single.exchange = ExchangeRule::Single;
  RemezOptions general;
  general.exchange = ExchangeRule::General;
  ApproxResult rs = remez(g, basis, 7, single);
  ApproxResult rg = remez(g, basis, 7, general);
  CHECK(rs.max_deviation == doctest::Approx(rg.max_deviation).epsilon(1e-8));
  CHECK(rg.iterations <= rs.iterations);
}

TEST_CASE("remez history is monotone and certifies alternation") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto basis = monomial_basis(1.0, 2000, 11);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = uni(rng), w = 2.0 + 2.0 * std::abs(uni(rng)), ph = uni(rng);
    auto g = SampledFunction::sample(1.0, 2000, [&](double x) {
      return Complex(std::sin(w * x + ph) + a * x * x * x);
    });
    const int degree = 4 + trial;
    RemezOptions opts;
    opts.exchange = (trial % 2 == 0) ? ExchangeRule::Single : ExchangeRule::General;
    ApproxResult r = remez(g, basis, degree, opts);
    CHECK((r.max_deviation - std::abs(r.levelled_error)) / r.max_deviation < 1e-8);
    for (std::size_t k = 1; k < r.history.size(); ++k)
      CHECK(r.history[k].first >= r.history[k - 1].first * (1.0 - 1e-9) - 1e-15);
    // final residual alternates on the reference set
    int sign = 0;
    for (int j = 0; j < r.reference.size(); ++j) {
      const double res =
          (g(r.reference.points[j]) - r.poly(r.reference.points[j])).real();
      const int s = res > 0 ? 1 : -1;
      if (j > 0) CHECK(s == -sign);
      sign = s;
      CHECK(std::abs(res) == doctest::Approx(std::abs(r.levelled_error)).epsilon(1e-6));
    }
  }
}

TEST_CASE("remez iterates sandwich the true best approximation") {
  auto basis = monomial_basis(1.0, 2000, 3);
  auto g = SampledFunction::sample(1.0, 2000,
                                   [](double x) { return Complex(std::exp(x)); });
  const double best =
      testing::brute_force_minimax_deg1([](double x) { return std::exp(x); });
  RemezOptions opts;
  opts.initial = ReferenceKind::LsqExtrema;
  ApproxResult r = remez(g, basis, 1, opts);
  for (const auto& [abs_e, d] : r.history) {
    CHECK(abs_e <= best * (1.0 + 1e-6));
    CHECK(d >= best * (1.0 - 1e-6));
  }
  CHECK(r.max_deviation == doctest::Approx(best).epsilon(1e-5));
}

TEST_CASE("achieved deviation is nonincreasing in the degree") {
  auto basis = monomial_basis(1.0, 2000, 10);
  auto g = SampledFunction::sample(1.0, 2000,
                                   [](double x) { return Complex(std::exp(2 * x)); });
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 9; n += 2) {
    ApproxResult r = remez(g, basis, n);
    CHECK(r.max_deviation <= prev * (1.0 + 1e-12));
    prev = r.max_deviation;
  }
}

TEST_CASE("lsq approximation") {
  auto basis = monomial_basis(1.0, 3000, 4);
  SUBCASE("exact recovery in the span") {
    ComplexVector c(3);
    c << Complex(1.0, 0.5), Complex(-2.0), Complex(0.0, 1.0);
    FPolynomial p(basis, c);
    auto g = basis->f.with_values(p.values_on_grid());
    FPolynomial fit = lsq_approx(g, basis, 2);
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(fit.coeffs[k] - c[k]) < 1e-12);
  }
  SUBCASE("x^2 at degree 1 tends to the continuum coefficient 1/3") {
    auto g = SampledFunction::sample(1.0, 3000,
                                     [](double x) { return Complex(x * x); });
    FPolynomial fit = lsq_approx(g, basis, 1);
    CHECK(std::abs(fit.coeffs[0] - Complex(1.0 / 3.0)) < 1e-3);
    CHECK(std::abs(fit.coeffs[1]) < 1e-10);
  }
  SUBCASE("residual is orthogonal to the span") {
    auto g = SampledFunction::sample(1.0, 3000,
                                     [](double x) { return Complex(std::sin(3 * x)); });
    FPolynomial fit = lsq_approx(g, basis, 4);
    ComplexVector resid = g.values() - fit.values_on_grid();
    for (int k = 0; k <= 4; ++k) {
      const Complex dot = basis->phi[k].values().dot(resid);
      CHECK(std::abs(dot) <= 1e-10 * basis->phi[k].values().norm() * resid.norm() +
                                 1e-12);
    }
  }
  SUBCASE("least squares never beats the minimax deviation") {
    auto g = SampledFunction::sample(1.0, 3000,
                                     [](double x) { return Complex(std::cosh(x)); });
    FPolynomial fit = lsq_approx(g, basis, 3);
    ApproxResult best = remez(g, basis, 3);
    CHECK(max_deviation_on_grid(g, fit) >= best.max_deviation * (1.0 - 1e-10));
  }
}

TEST_CASE("lp route on real data") {
  auto basis = monomial_basis(1.0, 2000, 5);
  SUBCASE("data in the span") {
    ComplexVector c(3);
    c << Complex(0.3), Complex(1.0), Complex(-0.7);
    FPolynomial p(basis, c);
    auto g = basis->f.with_values(p.values_on_grid());
    ApproxResult r = minimax_lp(g, basis, 2);
    CHECK(r.max_deviation <= 1e-10);
  }
  SUBCASE("x^2 at degree 1 agrees with the classical solution") {
    auto g = SampledFunction::sample(1.0, 2000,
                                     [](double x) { return Complex(x * x); });
    MinimaxLpOptions opts;
    opts.grid_size = 2001;
    ApproxResult r = minimax_lp(g, basis, 1, opts);
    CHECK(r.levelled_error == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.max_deviation == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(r.poly.coeffs[0] - Complex(0.5)) < 1e-6);
  }
  SUBCASE("agreement with remez on a smooth function") {
    auto g = SampledFunction::sample(1.0, 2000,
                                     [](double x) { return Complex(std::exp(x)); });
    ApproxResult lp = minimax_lp(g, basis, 5, {2001, 16, 200000});
    ApproxResult rz = remez(g, basis, 5);
    CHECK(std::abs(lp.max_deviation - rz.max_deviation) <=
          1e-8 * std::max(1.0, rz.max_deviation) + 1e-12);
  }
}

TEST_CASE("lp route on complex data") {
  // complex-valued basis (f = e^{ix}) and complex data
  auto f = SampledFunction::sample(2.0, 1500, [](double x) {
    return Complex(std::cos(x), std::sin(x));
  });
  auto basis = std::make_shared<PhiBasis>(build_basis(f, 6));
  SUBCASE("complex data in the span is recovered") {
    ComplexVector c(3);
    c << Complex(0.5, -0.3), Complex(1.0, 1.0), Complex(0.0, -0.5);
    FPolynomial p(basis, c);
    auto g = basis->f.with_values(p.values_on_grid());
    ApproxResult r = minimax_lp(g, basis, 2, {512, 16, 200000});
    CHECK(r.max_deviation <= 1e-9 * g.max_abs());
  }
  SUBCASE("achieved deviation beats least squares") {
    auto g = SampledFunction::sample(2.0, 1500, [](double x) {
      return Complex(std::cos(2 * x), 0.3 * x);
    });
    ApproxResult r = minimax_lp(g, basis, 5, {512, 16, 200000});
    FPolynomial fit = lsq_approx(g, basis, 5);
    // the m-gon linearization overestimates |.| by at most 1/cos(pi/m)
    CHECK(r.max_deviation <=
          max_deviation_on_grid(g, fit) / std::cos(M_PI / 16.0) * (1.0 + 1e-9));
    CHECK(r.levelled_error <= r.max_deviation * (1.0 + 1e-9));
  }
}

TEST_CASE("superalgebraic decay of the best approximation for entire data") {
  auto basis = exp3_basis(2.0, 3000, 17);
  auto g = SampledFunction::sample(2.0, 3000, [](double x) {
    return Complex(std::cosh(std::sqrt(8.0) * x));
  });
  ApproxResult r8 = remez(g, basis, 8);
  ApproxResult r16 = remez(g, basis, 16);
  CHECK(r16.max_deviation < r8.max_deviation / 100.0);
}

TEST_CASE("reference data errors for the exp(3x) basis on [-2,2]") {
  // g = cosh(sqrt(8) x) at degree 11 reaches ~1e-9; h = 1 at degree 18 ~1e-8
  auto basis = exp3_basis(2.0, 3000, 19);
  auto g = SampledFunction::sample(2.0, 3000, [](double x) {
    return Complex(std::cosh(std::sqrt(8.0) * x));
  });
  ApproxResult rg = remez(g, basis, 11);
  CHECK(rg.max_deviation <= 1e-7);
  CHECK(rg.max_deviation >= 1e-11);
  auto h = SampledFunction::constant(2.0, 3000, Complex(1.0));
  ApproxResult rh = remez(h, basis, 18);
  CHECK(rh.max_deviation <= 1e-6);
  CHECK(rh.max_deviation >= 1e-10);
}

TEST_SUITE_END();
