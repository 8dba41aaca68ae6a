#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "kleinwave/approx.hpp"
#include "kleinwave/basis.hpp"
#include "kleinwave/sampled_function.hpp"
#include "kleinwave/types.hpp"

namespace kleinwave {

/// Declares that a data function solves v'' - q v = lambda v with the given
/// initial values, so its expansion coefficients are available in closed form.
struct SpectralData {
  Complex lambda;
  Complex v0;
  Complex v0p;
};

/// Cauchy problem for u_xx - u_tt - q(x) u = 0 on the characteristic triangle
/// |x| + t <= b, t >= 0, with u(x,0) = g and u_t(x,0) = h.
struct CauchyProblem {
  double b = 0.0;
  SampledFunction q;
  SampledFunction g;
  SampledFunction h;
  Complex fprime0 = 0.0;  // f'(0) for the particular solution f
  std::optional<SpectralData> g_spectral;
  std::optional<SpectralData> h_spectral;
  std::function<Complex(double, double)> exact;  // optional reference solution
};

/// A-posteriori bound on the solution error induced by approximating the
/// initial data: total = ||T|| ||T^{-1}|| (eps1 + eps2 * b), with both
/// operator norms bounded by the same Bessel expression.
struct ErrorCertificate {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double normT_bound = 1.0;
  double normTinv_bound = 1.0;
  double total = 0.0;
};

enum class Strategy { Taylor, Remez, Lp };

struct SolveOptions {
  int n_g = 20;
  int n_h = -1;  // defaults to n_g - 1
  RemezOptions remez;
  MinimaxLpOptions lp;
};

/// Approximate Cauchy solution sum_m a_m u_m over the generalized wave
/// polynomials of the basis; evaluation is exact in t and interpolated in x.
struct GeneralizedWaveSolution {
  std::shared_ptr<const PhiBasis> basis;
  ComplexVector a;      // coefficients over u_0 .. u_M
  ComplexVector alpha;  // g-approximant coefficients over phi
  ComplexVector beta;   // h-approximant coefficients over phi
  ErrorCertificate certificate;
  SampledFunction q;    // problem potential, kept for residual checks

  double half_width() const { return basis->half_width(); }
  Complex operator()(double x, double t) const;
  /// Coefficients of the t-polynomial u_N(x, .) at fixed x.
  ComplexVector t_polynomial(double x) const;
};

/// a_0 = alpha_0, a_{2m-1} = alpha_m (m >= 1), a_{2(m+1)} = beta_m / (m+1).
ComplexVector assemble_wave_coefficients(const ComplexVector& alpha,
                                         const ComplexVector& beta);

GeneralizedWaveSolution solve_cauchy(const CauchyProblem& problem,
                                     Strategy strategy,
                                     const SolveOptions& options = {});

/// Uniform mesh of the closed triangle |x| + t <= b, t >= 0.
struct TriangleMesh {
  double step = 0.0;
  std::vector<double> x;
  std::vector<double> t;
  ComplexVector u;
  std::size_t size() const { return x.size(); }
};

TriangleMesh evaluate_on_triangle(const GeneralizedWaveSolution& solution,
                                  double step);

ErrorCertificate error_certificate(double eps1, double eps2,
                                   const SampledFunction& q, Complex h_scalar,
                                   double b);

/// Max |u_xx - u_tt - q u| over interior mesh points by the 5-point stencil;
/// O(step^2) for an exact solution of the equation.
double residual_check(const GeneralizedWaveSolution& solution, double step);

}  // namespace kleinwave
