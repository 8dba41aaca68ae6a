#include "kleinwave/spps.hpp"

#include <cmath>

namespace kleinwave {

namespace {

constexpr int kMaxPicardIterations = 50;
constexpr double kPicardTol = 1e-14;
constexpr double kVanishingTol = 1e-8;

// Picard iteration for y = y0 + y0p*x + int_0^x (x-s) q(s) y(s) ds, with the
// nested kernel realized as two chained antiderivatives.
SampledFunction picard(const SampledFunction& q, Complex y0, Complex y0p,
                       ParticularSolutionInfo* info) {
  const double b = q.half_width();
  const int n = q.segments();
  ComplexVector base(n + 1);
  for (int i = 0; i <= n; ++i) base[i] = y0 + y0p * q.node(i);
  SampledFunction y = q.with_values(base);
  double update = 0.0;
  int it = 0;
  for (; it < kMaxPicardIterations; ++it) {
    SampledFunction next =
        q.with_values(base) + (q * y).antiderivative().antiderivative();
    update = (next.values() - y.values()).cwiseAbs().maxCoeff();
    y = next;
    if (update <= kPicardTol * std::max(1.0, y.max_abs())) {
      ++it;
      break;
    }
  }
  if (info) {
    info->iterations = it;
    info->last_update = update;
  }
  if (update > 1e-10 * std::max(1.0, y.max_abs()))
    throw NumericError("picard iteration did not converge on [-" +
                       std::to_string(b) + ", " + std::to_string(b) + "]");
  return y;
}

}  // namespace

SampledFunction volterra_solution(const SampledFunction& q, Complex lambda,
                                  Complex v0, Complex v0p,
                                  ParticularSolutionInfo* info) {
  if (lambda == Complex(0.0)) return picard(q, v0, v0p, info);
  SampledFunction shifted =
      q + SampledFunction::constant(q.half_width(), q.segments(), lambda,
                                    q.interp_order());
  return picard(shifted, v0, v0p, info);
}

namespace {

// A real solution vanishes inside the interval iff it changes sign between
// nodes (or dips below the rejection threshold); magnitude alone cannot tell
// a decaying exponential from a zero crossing.
bool vanishes_on_grid(const SampledFunction& f) {
  if (f.min_abs() < kVanishingTol * f.max_abs()) return true;
  if (f.is_real()) {
    for (int i = 0; i < f.segments(); ++i)
      if (f.value(i).real() * f.value(i + 1).real() <= 0.0) return true;
  }
  return false;
}

}  // namespace

SampledFunction particular_solution(const SampledFunction& q, Complex fprime0,
                                    ParticularSolutionInfo* info) {
  SampledFunction f = picard(q, Complex(1.0), fprime0, info);
  if (!vanishes_on_grid(f)) return f;

  const bool real_data = q.is_real() && std::abs(fprime0.imag()) == 0.0;
  if (real_data) {
    SampledFunction y2 = picard(q, Complex(0.0), Complex(1.0), nullptr);
    SampledFunction combined = f + Complex(0.0, 1.0) * y2;
    if (!vanishes_on_grid(combined) &&
        combined.min_abs() >= kVanishingTol * combined.max_abs()) {
      if (info) info->complexified = true;
      return combined;
    }
  }
  throw VanishingFError(
      "particular_solution: solution vanishes on the grid (min|f| = " +
      std::to_string(f.min_abs()) + ")");
}

SppsSeries spps_solution(const PhiBasis& basis, Complex lambda, Complex u0,
                         Complex u0p, int n_terms) {
  if (n_terms < 0) throw InvalidInputError("spps_solution: n_terms must be >= 0");
  if (basis.n_max < 2 * n_terms + 1)
    throw CapacityError("spps_solution: basis order " +
                        std::to_string(basis.n_max) + " is below 2*n_terms+1 = " +
                        std::to_string(2 * n_terms + 1));
  const Complex c1 = u0;
  const Complex c2 = u0p - basis.h * u0;

  ComplexVector acc = ComplexVector::Zero(basis.f.values().size());
  Complex even_coeff(1.0);  // lambda^k / (2k)!
  Complex odd_coeff(1.0);   // lambda^k / (2k+1)!
  for (int k = 0; k <= n_terms; ++k) {
    if (k > 0) {
      even_coeff *= lambda / Complex(double(2 * k - 1) * double(2 * k));
      odd_coeff *= lambda / Complex(double(2 * k) * double(2 * k + 1));
    }
    acc += c1 * even_coeff * basis.phi[2 * k].values();
    acc += c2 * odd_coeff * basis.phi[2 * k + 1].values();
  }

  SppsSeries out;
  out.u = basis.f.with_values(std::move(acc));
  out.terms_used = n_terms + 1;
  // factorial tail of the majorant |lambda|^k b^{2k} / (2k)!
  const double b = basis.half_width();
  const double z = std::abs(lambda) * b * b;
  double tail_term = 1.0;
  for (int k = 1; k <= n_terms + 1; ++k)
    tail_term *= z / (double(2 * k - 1) * double(2 * k));
  out.tail_bound = tail_term * (std::abs(c1) + std::abs(c2) * b) *
                   std::max(1.0, basis.f.max_abs());
  out.truncated = out.tail_bound > 1e-16 * std::max(1.0, out.u.max_abs());
  return out;
}

ComplexVector spectral_taylor_coefficients(Complex lambda, Complex v0,
                                           Complex v0p, Complex h, int order) {
  if (order < 0)
    throw InvalidInputError("spectral_taylor_coefficients: order must be >= 0");
  const Complex c1 = v0;
  const Complex c2 = v0p - h * v0;
  ComplexVector alpha = ComplexVector::Zero(order + 1);
  Complex even_coeff(1.0), odd_coeff(1.0);
  for (int k = 0; 2 * k <= order; ++k) {
    if (k > 0) {
      even_coeff *= lambda / Complex(double(2 * k - 1) * double(2 * k));
      odd_coeff *= lambda / Complex(double(2 * k) * double(2 * k + 1));
    }
    alpha[2 * k] = c1 * even_coeff;
    if (2 * k + 1 <= order) alpha[2 * k + 1] = c2 * odd_coeff;
  }
  return alpha;
}

}  // namespace kleinwave
