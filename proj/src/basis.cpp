#include "kleinwave/basis.hpp"

#include <cmath>

namespace kleinwave {

bool PhiBasis::real_valued(double tol) const {
  double scale = std::max(1.0, f.max_abs());
  return f.max_abs_imag() <= tol * scale;
}

PhiBasis build_basis(const SampledFunction& f_in, int order,
                     const BasisOptions& options) {
  if (order < 0) throw InvalidInputError("build_basis: order must be >= 0");
  if (order > options.max_order)
    throw CapacityError("build_basis: order " + std::to_string(order) +
                        " exceeds the cap " + std::to_string(options.max_order));
  if (f_in.segments() % 2 != 0)
    throw InvalidInputError("build_basis: grid must have a node at x = 0");
  if (f_in.min_abs() < options.vanishing_tol * f_in.max_abs())
    throw VanishingFError("build_basis: f vanishes on the grid (min|f| = " +
                          std::to_string(f_in.min_abs()) + ")");

  PhiBasis basis;
  const Complex f0 = f_in.value_at_zero();
  basis.f = (Complex(1.0) / f0) * f_in;
  basis.h = options.fprime0 ? *options.fprime0 / f0
                            : basis.f.derivative().value_at_zero();
  basis.n_max = order;

  const SampledFunction w_plus = basis.f * basis.f;
  const SampledFunction w_minus = reciprocal(w_plus);
  const SampledFunction one =
      SampledFunction::constant(basis.f.half_width(), basis.f.segments(),
                                Complex(1.0), basis.f.interp_order());

  basis.Xt.reserve(order + 1);
  basis.X.reserve(order + 1);
  basis.phi.reserve(order + 1);
  basis.psi.reserve(order + 1);
  basis.Xt.push_back(one);
  basis.X.push_back(one);
  basis.phi.push_back(basis.f);
  basis.psi.push_back(reciprocal(basis.f));

  for (int k = 1; k <= order; ++k) {
    // X~^(k) integrates with weight (f^2)^{(-1)^{k-1}}, X^(k) with (f^2)^{(-1)^k}
    const SampledFunction& wt = (k % 2 == 1) ? w_plus : w_minus;
    const SampledFunction& wx = (k % 2 == 1) ? w_minus : w_plus;
    basis.Xt.push_back(Complex(k) * (basis.Xt[k - 1] * wt).antiderivative());
    basis.X.push_back(Complex(k) * (basis.X[k - 1] * wx).antiderivative());
    if (k % 2 == 1) {
      basis.phi.push_back(basis.f * basis.X[k]);
      basis.psi.push_back(basis.Xt[k] * basis.psi[0]);
    } else {
      basis.phi.push_back(basis.f * basis.Xt[k]);
      basis.psi.push_back(basis.X[k] * basis.psi[0]);
    }
  }
  return basis;
}

SampledFunction f_derivative(const SampledFunction& g, const PhiBasis& basis,
                             int order, int max_order) {
  if (order < 0) throw InvalidInputError("f_derivative: order must be >= 0");
  if (order > max_order)
    throw CapacityError("f_derivative: order " + std::to_string(order) +
                        " exceeds the differentiation cap " +
                        std::to_string(max_order));
  if (!same_grid(g, basis.f))
    throw InvalidInputError("f_derivative: g is not on the basis grid");
  SampledFunction cur = g;
  const SampledFunction inv_f = reciprocal(basis.f);
  for (int k = 1; k <= order; ++k) {
    if (k % 2 == 1)
      cur = basis.f * (cur * inv_f).derivative();
    else
      cur = inv_f * (basis.f * cur).derivative();
  }
  return cur;
}

FPolynomial::FPolynomial(std::shared_ptr<const PhiBasis> basis_in,
                         ComplexVector coeffs_in)
    : basis(std::move(basis_in)), coeffs(std::move(coeffs_in)) {
  if (!basis) throw InvalidInputError("FPolynomial: null basis");
  if (coeffs.size() == 0) throw InvalidInputError("FPolynomial: empty coefficients");
  if (degree() > basis->n_max)
    throw CapacityError("FPolynomial: degree exceeds basis order");
}

Complex FPolynomial::operator()(double x) const {
  Complex acc(0.0);
  for (int k = 0; k <= degree(); ++k) {
    if (coeffs[k] != Complex(0.0)) acc += coeffs[k] * basis->phi[k](x);
  }
  return acc;
}

ComplexVector FPolynomial::values_on_grid() const {
  ComplexVector acc = ComplexVector::Zero(basis->f.values().size());
  for (int k = 0; k <= degree(); ++k) {
    if (coeffs[k] != Complex(0.0)) acc += coeffs[k] * basis->phi[k].values();
  }
  return acc;
}

Complex fpoly_eval(const FPolynomial& p, double x) { return p(x); }

}  // namespace kleinwave
