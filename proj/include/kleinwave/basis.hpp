#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "kleinwave/sampled_function.hpp"
#include "kleinwave/types.hpp"

namespace kleinwave {

/// The transmuted power basis {phi_k} together with its dual {psi_k} and the
/// raw recursive integrals they are built from. phi_0 = f, psi_0 = 1/f, and
/// phi_k(0) = psi_k(0) = 0 for k >= 1 (integration starts at x0 = 0).
struct PhiBasis {
  SampledFunction f;   // normalized so f(0) = 1
  Complex h = 0.0;     // f'(0)
  double x0 = 0.0;     // expansion center (fixed at 0)
  int n_max = 0;
  std::vector<SampledFunction> phi;  // phi_0 .. phi_n
  std::vector<SampledFunction> psi;  // psi_0 .. psi_n
  std::vector<SampledFunction> Xt;   // X~^(0) .. X~^(n)
  std::vector<SampledFunction> X;    // X^(0) .. X^(n)

  double half_width() const { return f.half_width(); }
  bool real_valued(double tol = 1e-12) const;
};

struct BasisOptions {
  int max_order = 200;           // capacity cap on n
  double vanishing_tol = 1e-8;   // reject f when min|f| < tol * max|f|
  /// f'(0) when known exactly (e.g. from the construction of f); if absent it
  /// is recovered by finite differences.
  std::optional<Complex> fprime0;
};

/// Builds phi_0..phi_n and psi_0..psi_n from a non-vanishing f by the
/// alternating recursive-integral scheme with weights (f^2)^{+-1}. The input
/// is rescaled so that f(0) = 1 before construction.
PhiBasis build_basis(const SampledFunction& f, int order,
                     const BasisOptions& options = {});

/// k-th generalized derivative of g with respect to the basis function f:
/// alternately f (d/dx)(. / f) and (1/f)(d/dx)(f .), k times. k = 0 returns g.
/// Numerical differentiation is ill-conditioned, so k is capped.
SampledFunction f_derivative(const SampledFunction& g, const PhiBasis& basis,
                             int order, int max_order = 4);

/// Finite linear combination sum_k coeffs[k] * phi_k. Trailing zero
/// coefficients are allowed.
struct FPolynomial {
  std::shared_ptr<const PhiBasis> basis;
  ComplexVector coeffs;

  FPolynomial() = default;
  FPolynomial(std::shared_ptr<const PhiBasis> basis_in, ComplexVector coeffs_in);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex operator()(double x) const;
  /// Values at all grid nodes (uses the stored basis samples, no interpolation).
  ComplexVector values_on_grid() const;
};

Complex fpoly_eval(const FPolynomial& p, double x);

}  // namespace kleinwave
