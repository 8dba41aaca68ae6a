#include "kleinwave/cauchy.hpp"

#include <cmath>

#include "kleinwave/spps.hpp"
#include "kleinwave/transmute.hpp"
#include "kleinwave/wavepoly.hpp"

namespace kleinwave {

ComplexVector assemble_wave_coefficients(const ComplexVector& alpha,
                                         const ComplexVector& beta) {
  if (alpha.size() == 0)
    throw InvalidInputError("assemble_wave_coefficients: alpha must not be empty");
  const int n_alpha = static_cast<int>(alpha.size()) - 1;  // highest m with alpha_m
  const int n_beta = static_cast<int>(beta.size()) - 1;    // highest m with beta_m
  int top = 0;
  if (n_alpha >= 1) top = std::max(top, 2 * n_alpha - 1);
  if (n_beta >= 0) top = std::max(top, 2 * (n_beta + 1));
  ComplexVector a = ComplexVector::Zero(top + 1);
  a[0] = alpha[0];
  for (int m = 1; m <= n_alpha; ++m) a[2 * m - 1] = alpha[m];
  for (int m = 0; m <= n_beta; ++m) a[2 * (m + 1)] = beta[m] / Complex(m + 1);
  return a;
}

ComplexVector GeneralizedWaveSolution::t_polynomial(double x) const {
  // u_N(x, t) = sum_j c_j(x) t^j with
  //   even j: c_j = sum_{s >= max(j,1)} a_{2s-1} binom(s, j) phi_{s-j}(x),
  //            plus a_0 phi_0(x) at j = 0,
  //   odd  j: c_j = sum_{s >= j} a_{2s} binom(s, j) phi_{s-j}(x).
  const int top = static_cast<int>(a.size()) - 1;
  const int s_max = (top + 1) / 2;
  ComplexVector phi_at(s_max + 1);
  for (int k = 0; k <= s_max; ++k) phi_at[k] = basis->phi[k](x);

  ComplexVector c = ComplexVector::Zero(s_max + 1);
  c[0] = a[0] * phi_at[0];
  for (int s = 1; s <= s_max; ++s) {
    const Complex a_odd = (2 * s - 1 <= top) ? a[2 * s - 1] : Complex(0.0);
    const Complex a_even = (2 * s <= top) ? a[2 * s] : Complex(0.0);
    if (a_odd != Complex(0.0))
      for (int j = 0; j <= s; j += 2) c[j] += a_odd * binomial(s, j) * phi_at[s - j];
    if (a_even != Complex(0.0))
      for (int j = 1; j <= s; j += 2) c[j] += a_even * binomial(s, j) * phi_at[s - j];
  }
  return c;
}

Complex GeneralizedWaveSolution::operator()(double x, double t) const {
  const ComplexVector c = t_polynomial(x);
  Complex acc(0.0);
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) acc = acc * t + c[j];
  return acc;
}

namespace {

ComplexVector approximate_data(const SampledFunction& data,
                               const std::optional<SpectralData>& spectral,
                               std::shared_ptr<const PhiBasis> basis,
                               Strategy strategy, int degree,
                               const SolveOptions& options) {
  switch (strategy) {
    case Strategy::Taylor: {
      if (!spectral)
        throw ConfigError(
            "taylor strategy requires spectral metadata (lambda, v(0), v'(0)) "
            "for the data function");
      return spectral_taylor_coefficients(spectral->lambda, spectral->v0,
                                          spectral->v0p, basis->h, degree);
    }
    case Strategy::Remez: {
      ApproxResult r = remez(data, basis, degree, options.remez);
      return r.poly.coeffs;
    }
    case Strategy::Lp: {
      ApproxResult r = minimax_lp(data, basis, degree, options.lp);
      return r.poly.coeffs;
    }
  }
  throw ConfigError("unknown strategy");
}

}  // namespace

GeneralizedWaveSolution solve_cauchy(const CauchyProblem& problem,
                                     Strategy strategy,
                                     const SolveOptions& options) {
  if (!same_grid(problem.q, problem.g) || !same_grid(problem.q, problem.h))
    throw InvalidInputError("solve_cauchy: q, g, h must share one grid");
  const int n_g = options.n_g;
  const int n_h = options.n_h >= 0 ? options.n_h : std::max(options.n_g - 1, 0);
  if (n_g < 0) throw InvalidInputError("solve_cauchy: n_g must be >= 0");

  SampledFunction f = particular_solution(problem.q, problem.fprime0);
  BasisOptions basis_options;
  basis_options.fprime0 = problem.fprime0;
  const int basis_order = std::max(n_g, n_h + 1);
  auto basis = std::make_shared<const PhiBasis>(
      build_basis(f, basis_order, basis_options));

  ComplexVector alpha =
      approximate_data(problem.g, problem.g_spectral, basis, strategy, n_g, options);
  ComplexVector beta =
      approximate_data(problem.h, problem.h_spectral, basis, strategy, n_h, options);

  GeneralizedWaveSolution solution;
  solution.basis = basis;
  solution.alpha = alpha;
  solution.beta = beta;
  solution.a = assemble_wave_coefficients(alpha, beta);
  solution.q = problem.q;

  const double eps1 =
      max_deviation_on_grid(problem.g, FPolynomial(basis, alpha));
  const double eps2 =
      max_deviation_on_grid(problem.h, FPolynomial(basis, beta));
  solution.certificate =
      error_certificate(eps1, eps2, problem.q, basis->h, problem.b);
  return solution;
}

TriangleMesh evaluate_on_triangle(const GeneralizedWaveSolution& solution,
                                  double step) {
  if (!(step > 0.0)) throw InvalidInputError("evaluate_on_triangle: step must be positive");
  const double b = solution.half_width();
  const double slack = 1e-12 * b;
  const int jmax = static_cast<int>(std::floor(b / step + 1e-12));
  const int imax = static_cast<int>(std::floor(b / step + 1e-12));

  TriangleMesh mesh;
  mesh.step = step;
  std::vector<int> column;
  for (int j = 0; j <= jmax; ++j) {
    const double t = j * step;
    for (int i = -imax; i <= imax; ++i) {
      const double x = i * step;
      if (std::abs(x) + t > b + slack) continue;
      mesh.x.push_back(x);
      mesh.t.push_back(t);
      column.push_back(i + imax);
    }
  }
  // each distinct x builds its t-polynomial once
  std::vector<ComplexVector> poly_of(2 * imax + 1);
  mesh.u.resize(static_cast<Eigen::Index>(mesh.x.size()));
  for (std::size_t idx = 0; idx < mesh.size(); ++idx) {
    ComplexVector& c = poly_of[column[idx]];
    if (c.size() == 0) c = solution.t_polynomial(mesh.x[idx]);
    const double t = mesh.t[idx];
    Complex acc(0.0);
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * t + c[k];
    mesh.u[idx] = acc;
  }
  return mesh;
}

ErrorCertificate error_certificate(double eps1, double eps2,
                                   const SampledFunction& q, Complex h_scalar,
                                   double b) {
  if (eps1 < 0.0 || eps2 < 0.0)
    throw InvalidInputError("error_certificate: data errors must be nonnegative");
  ErrorCertificate cert;
  cert.eps1 = eps1;
  cert.eps2 = eps2;
  const double bound = transmutation_norm_bound(q, h_scalar, b);
  cert.normT_bound = bound;
  cert.normTinv_bound = bound;
  cert.total = bound * bound * (eps1 + eps2 * b);
  return cert;
}

double residual_check(const GeneralizedWaveSolution& solution, double step) {
  if (!(step > 0.0)) throw InvalidInputError("residual_check: step must be positive");
  const double b = solution.half_width();
  const double slack = 1e-12 * b;
  const int jmax = static_cast<int>(std::floor(b / step + 1e-12));
  const int imax = static_cast<int>(std::floor(b / step + 1e-12));

  // values on the full lattice, evaluated once per column
  const int cols = 2 * imax + 1;
  ComplexMatrix u(cols, jmax + 1);
  std::vector<bool> inside(cols * (jmax + 1), false);
  for (int ci = 0; ci < cols; ++ci) {
    const double x = (ci - imax) * step;
    const ComplexVector c = solution.t_polynomial(x);
    for (int j = 0; j <= jmax; ++j) {
      const double t = j * step;
      if (std::abs(x) + t > b + slack) continue;
      Complex acc(0.0);
      for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * t + c[k];
      u(ci, j) = acc;
      inside[ci * (jmax + 1) + j] = true;
    }
  }
  auto is_inside = [&](int ci, int j) {
    return ci >= 0 && ci < cols && j >= 0 && j <= jmax && inside[ci * (jmax + 1) + j];
  };
  double max_residual = 0.0;
  const double inv2 = 1.0 / (step * step);
  for (int ci = 1; ci + 1 < cols; ++ci) {
    const double x = (ci - imax) * step;
    const Complex qx = solution.q(x);
    for (int j = 1; j < jmax; ++j) {
      if (!is_inside(ci, j) || !is_inside(ci - 1, j) || !is_inside(ci + 1, j) ||
          !is_inside(ci, j - 1) || !is_inside(ci, j + 1))
        continue;
      const Complex uxx = (u(ci + 1, j) - 2.0 * u(ci, j) + u(ci - 1, j)) * inv2;
      const Complex utt = (u(ci, j + 1) - 2.0 * u(ci, j) + u(ci, j - 1)) * inv2;
      const Complex res = uxx - utt - qx * u(ci, j);
      max_residual = std::max(max_residual, std::abs(res));
    }
  }
  return max_residual;
}

}  // namespace kleinwave
