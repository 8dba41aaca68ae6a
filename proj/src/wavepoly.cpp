#include "kleinwave/wavepoly.hpp"

#include <cmath>

namespace kleinwave {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * double(n - k + i) / double(i);
  return acc;
}

double wave_poly(int m, double x, double t) {
  if (m < 0) throw InvalidInputError("wave_poly: m must be >= 0");
  if (m == 0) return 1.0;
  double acc = 0.0;
  if (m % 2 == 1) {
    const int s = (m + 1) / 2;
    for (int k = 0; k <= s; k += 2)
      acc += binomial(s, k) * std::pow(x, s - k) * std::pow(t, k);
  } else {
    const int s = m / 2;
    for (int k = 1; k <= s; k += 2)
      acc += binomial(s, k) * std::pow(x, s - k) * std::pow(t, k);
  }
  return acc;
}

Complex eval_wave_sum(const WaveCoefficients& w, double x, double t) {
  Complex acc(0.0);
  for (int m = 0; m < w.coeffs.size(); ++m)
    if (w.coeffs[m] != Complex(0.0)) acc += w.coeffs[m] * wave_poly(m, x, t);
  return acc;
}

Complex goursat_solution(const SampledFunction& phi, const SampledFunction& psi,
                         double x, double t) {
  const double b = phi.half_width();
  const Complex at0_phi = phi(0.0), at0_psi = psi(0.0);
  const double scale = std::max({1.0, phi.max_abs(), psi.max_abs()});
  if (std::abs(at0_phi - at0_psi) > 1e-10 * scale)
    throw InvalidInputError("goursat_solution: incompatible data, phi(0) != psi(0)");
  const double u = (x + t) / 2.0, v = (x - t) / 2.0;
  const double slack = 1e-12 * std::max(1.0, b);
  if (std::abs(u) > b + slack || std::abs(v) > b + slack)
    throw DomainError("goursat_solution: point outside the characteristic square");
  return phi(std::clamp(u, -b, b)) + psi(std::clamp(v, -b, b)) - at0_phi;
}

WaveCoefficients wave_expansion(const ComplexVector& alpha,
                                const ComplexVector& beta) {
  if (alpha.size() == 0 || beta.size() == 0)
    throw InvalidInputError("wave_expansion: empty coefficient vector");
  if (std::abs(alpha[0] - beta[0]) >
      1e-12 * std::max({1.0, std::abs(alpha[0]), std::abs(beta[0])}))
    throw InvalidInputError("wave_expansion: alpha_0 != beta_0");
  const int top = static_cast<int>(std::max(alpha.size(), beta.size())) - 1;
  WaveCoefficients out;
  out.coeffs = ComplexVector::Zero(top == 0 ? 1 : 2 * top + 1);
  out.coeffs[0] = alpha[0];
  double pow2 = 1.0;
  for (int n = 1; n <= top; ++n) {
    pow2 *= 2.0;
    const Complex a = n < alpha.size() ? alpha[n] : Complex(0.0);
    const Complex c = n < beta.size() ? beta[n] : Complex(0.0);
    out.coeffs[2 * n - 1] = (a + c) / pow2;
    out.coeffs[2 * n] = (a - c) / pow2;
  }
  return out;
}

Complex gen_wave_poly(const PhiBasis& basis, int m, double x, double t) {
  if (m < 0) throw InvalidInputError("gen_wave_poly: m must be >= 0");
  if (m == 0) return basis.f(x);
  const int s = (m % 2 == 1) ? (m + 1) / 2 : m / 2;
  if (basis.n_max < s)
    throw CapacityError("gen_wave_poly: basis order " + std::to_string(basis.n_max) +
                        " too small for m = " + std::to_string(m));
  // Horner in t over precomputed phi values at x; only every other power of t
  // appears, so step by t^2.
  const int k0 = (m % 2 == 1) ? (s % 2 == 0 ? s : s - 1)   // largest even k <= s
                              : (s % 2 == 1 ? s : s - 1);  // largest odd k <= s
  const double t2 = t * t;
  Complex acc(0.0);
  for (int k = k0; k >= 0; k -= 2) {
    acc = acc * t2 + binomial(s, k) * basis.phi[s - k](x);
  }
  if (m % 2 == 0) acc *= t;  // odd powers carry one extra factor of t
  return acc;
}

}  // namespace kleinwave
