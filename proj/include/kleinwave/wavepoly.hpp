#pragma once

#include "kleinwave/basis.hpp"
#include "kleinwave/sampled_function.hpp"
#include "kleinwave/types.hpp"

namespace kleinwave {

/// Binomial coefficient by multiplicative recurrence in floating point.
double binomial(int n, int k);

/// Wave polynomial p_m: p_0 = 1, p_1 = x, p_2 = t, p_3 = x^2 + t^2,
/// p_4 = 2xt, ...; p_{2n-1} + p_{2n} = (x+t)^n and p_{2n-1} - p_{2n} = (x-t)^n.
double wave_poly(int m, double x, double t);

/// Coefficients over the wave polynomials {p_m} (or the generalized {u_m}).
struct WaveCoefficients {
  ComplexVector coeffs;
};

Complex eval_wave_sum(const WaveCoefficients& w, double x, double t);

/// Solution of the wave-equation Goursat problem with data phi on x - t = 0
/// and psi on x + t = 0: w(x,t) = phi((x+t)/2) + psi((x-t)/2) - phi(0).
/// Defined on the closed square with vertices (+-2b, 0) and (0, +-2b).
Complex goursat_solution(const SampledFunction& phi, const SampledFunction& psi,
                         double x, double t);

/// Wave-polynomial expansion of the Goursat solution with power-series data
/// phi = sum alpha_n x^n, psi = sum beta_n x^n (requires alpha_0 = beta_0):
/// coeff(p_0) = alpha_0, coeff(p_{2n-1}) = (alpha_n + beta_n)/2^n,
/// coeff(p_{2n}) = (alpha_n - beta_n)/2^n.
WaveCoefficients wave_expansion(const ComplexVector& alpha,
                                const ComplexVector& beta);

/// Generalized wave polynomial u_m: u_0 = f(x), and for m >= 1 the wave
/// polynomial formula with x^j replaced by phi_j(x). Solves the Klein-Gordon
/// equation of the basis potential.
Complex gen_wave_poly(const PhiBasis& basis, int m, double x, double t);

}  // namespace kleinwave
