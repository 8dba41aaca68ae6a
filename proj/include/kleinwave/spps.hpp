#pragma once

#include "kleinwave/basis.hpp"
#include "kleinwave/sampled_function.hpp"
#include "kleinwave/types.hpp"

namespace kleinwave {

struct ParticularSolutionInfo {
  int iterations = 0;
  double last_update = 0.0;   // max successive-iterate difference at exit
  bool complexified = false;  // combined two real solutions as y1 + i*y2
};

/// Non-vanishing solution of f'' - q f = 0 with f(0) = 1, f'(0) = fprime0,
/// computed by Picard iteration on the equivalent second-kind Volterra
/// equation. When the real solution vanishes on the grid and the data are
/// real, the complex combination y1 + i*y2 of the two standard solutions is
/// returned instead (their Wronskian is 1, so it cannot vanish).
SampledFunction particular_solution(const SampledFunction& q, Complex fprime0,
                                    ParticularSolutionInfo* info = nullptr);

/// Solution of v'' - q v = lambda v with v(0) = v0, v'(0) = v0p, for given
/// initial values v0, v0p; Picard iteration (used as an independent check).
SampledFunction volterra_solution(const SampledFunction& q, Complex lambda,
                                  Complex v0, Complex v0p,
                                  ParticularSolutionInfo* info = nullptr);

struct SppsSeries {
  SampledFunction u;
  int terms_used = 0;
  double tail_bound = 0.0;
  bool truncated = false;  // tail estimate above tolerance at n_terms
};

/// Spectral-parameter power-series solution of u'' - q u = lambda u with
/// u(0) = u0, u'(0) = u0p, assembled from the basis: c1 * sum lambda^k
/// phi_{2k}/(2k)! + c2 * sum lambda^k phi_{2k+1}/(2k+1)! with c1 = u0 and
/// c2 = u0p - h*u0. Requires basis order >= 2*n_terms + 1.
SppsSeries spps_solution(const PhiBasis& basis, Complex lambda, Complex u0,
                         Complex u0p, int n_terms);

/// Generalized Taylor coefficients over phi_0..phi_n of the solution of
/// v'' - q v = lambda v with v(0) = v0, v'(0) = v0p:
/// alpha_{2k} = c1 lambda^k/(2k)!, alpha_{2k+1} = c2 lambda^k/(2k+1)!.
ComplexVector spectral_taylor_coefficients(Complex lambda, Complex v0,
                                           Complex v0p, Complex h, int order);

}  // namespace kleinwave
