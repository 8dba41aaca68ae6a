#include "kleinwave/approx.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "kleinwave/simplex.hpp"

namespace kleinwave {

namespace {

RealVector basis_column_scales(const PhiBasis& basis, int degree) {
  RealVector s(degree + 1);
  for (int k = 0; k <= degree; ++k) s[k] = std::max(basis.phi[k].max_abs(), 1e-300);
  return s;
}

void require_real_problem(const SampledFunction& g, const PhiBasis& basis,
                          const char* who) {
  if (!basis.real_valued() || !g.is_real())
    throw InvalidInputError(std::string(who) +
                            ": basis or data is complex-valued; use minimax_lp "
                            "(the Haar condition may fail)");
}

// real residual r(x) = g(x) - sum c_k phi_k(x), evaluated off-grid
struct ResidualFn {
  const SampledFunction& g;
  const PhiBasis& basis;
  const RealVector& coeffs;

  double operator()(double x) const {
    Complex acc = g(x);
    for (int k = 0; k < coeffs.size(); ++k)
      if (coeffs[k] != 0.0) acc -= coeffs[k] * basis.phi[k](x);
    return acc.real();
  }
};

// One extremum candidate of the residual.
struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

// Iterated three-point parabolic refinement of an extremum of sign `sgn`
// bracketed by [a, c] with interior point m. Falls back to the best sampled
// point when the parabola degenerates.
template <typename F>
Extremum refine_extremum(const F& r, double a, double m, double c, double sgn) {
  double xs[3] = {a, m, c};
  double vs[3] = {sgn * r(a), sgn * r(m), sgn * r(c)};
  // keep the middle point the best of the three
  if (vs[0] > vs[1] && vs[0] >= vs[2]) std::swap(xs[0], xs[1]), std::swap(vs[0], vs[1]);
  if (vs[2] > vs[1]) std::swap(xs[2], xs[1]), std::swap(vs[2], vs[1]);
  for (int round = 0; round < 6; ++round) {
    const double d1 = vs[0] - vs[1], d2 = vs[2] - vs[1];
    const double h1 = xs[0] - xs[1], h2 = xs[2] - xs[1];
    const double denom = 2.0 * (d1 * h2 - d2 * h1);
    if (denom == 0.0) break;
    const double vertex = xs[1] + (d1 * h2 * h2 - d2 * h1 * h1) / denom;
    const double lo = std::min({xs[0], xs[1], xs[2]});
    const double hi = std::max({xs[0], xs[1], xs[2]});
    if (!(vertex > lo && vertex < hi) || vertex == xs[1]) break;
    const double vv = sgn * r(vertex);
    // replace the worst outer point, keep the bracket around the best
    if (vv >= vs[1]) {
      if (vertex < xs[1]) {
        xs[2] = xs[1], vs[2] = vs[1];
      } else {
        xs[0] = xs[1], vs[0] = vs[1];
      }
      xs[1] = vertex, vs[1] = vv;
    } else {
      if (vertex < xs[1]) {
        xs[0] = vertex, vs[0] = vv;
      } else {
        xs[2] = vertex, vs[2] = vv;
      }
    }
    if (std::abs(xs[2] - xs[0]) < 1e-13 * std::max(1.0, std::abs(xs[1]))) break;
  }
  return {xs[1], sgn * vs[1]};
}

std::vector<Extremum> local_extrema(const RealVector& xs, const RealVector& r) {
  std::vector<Extremum> out;
  const int n = static_cast<int>(r.size());
  for (int i = 0; i < n; ++i) {
    const bool left_ok = (i == 0) || std::abs(r[i]) >= std::abs(r[i - 1]);
    const bool right_ok = (i == n - 1) || std::abs(r[i]) > std::abs(r[i + 1]);
    const bool sign_peak =
        (i > 0 && i < n - 1) &&
        ((r[i] >= r[i - 1] && r[i] >= r[i + 1]) || (r[i] <= r[i - 1] && r[i] <= r[i + 1]));
    if ((left_ok && right_ok) || sign_peak) out.push_back({xs[i], r[i]});
  }
  return out;
}

// Greedy alternating chain: keep the strongest extremum of each same-sign run,
// then trim the weaker ends until exactly `count` points remain.
bool alternating_chain(std::vector<Extremum> extrema, int count,
                       std::vector<Extremum>& out) {
  out.clear();
  for (const Extremum& e : extrema) {
    if (e.value == 0.0) continue;
    if (out.empty() || (out.back().value > 0) != (e.value > 0))
      out.push_back(e);
    else if (std::abs(e.value) > std::abs(out.back().value))
      out.back() = e;
  }
  if (static_cast<int>(out.size()) < count) return false;
  while (static_cast<int>(out.size()) > count) {
    if (std::abs(out.front().value) < std::abs(out.back().value))
      out.erase(out.begin());
    else
      out.pop_back();
  }
  return true;
}

}  // namespace

TchebInterpResult tchebyshev_interpolation(const RealVector& g_values,
                                           const ReferenceSet& reference,
                                           const PhiBasis& basis, int degree) {
  const int rows = degree + 2;
  if (reference.size() != rows)
    throw InvalidInputError("tchebyshev_interpolation: reference set must have n+2 points");
  if (g_values.size() != rows)
    throw InvalidInputError("tchebyshev_interpolation: value count mismatch");
  if (basis.n_max < degree)
    throw CapacityError("tchebyshev_interpolation: basis order too small");
  if (!basis.real_valued())
    throw InvalidInputError(
        "tchebyshev_interpolation: basis is complex-valued; use minimax_lp");
  for (int j = 0; j + 1 < rows; ++j)
    if (!(reference.points[j] < reference.points[j + 1]))
      throw InvalidInputError("tchebyshev_interpolation: points must be strictly increasing");

  const RealVector scales = basis_column_scales(basis, degree);
  RealMatrix A(rows, rows);
  for (int j = 0; j < rows; ++j) {
    const double x = reference.points[j];
    for (int k = 0; k <= degree; ++k)
      A(j, k) = basis.phi[k](x).real() / scales[k];
    A(j, degree + 1) = (j % 2 == 0) ? 1.0 : -1.0;
  }
  RealVector sol = A.partialPivLu().solve(g_values);
  double residual = (A * sol - g_values).norm();
  const double rhs_scale = std::max(1.0, g_values.norm());
  if (!(residual <= 1e-10 * rhs_scale)) {
    sol = A.colPivHouseholderQr().solve(g_values);
    residual = (A * sol - g_values).norm();
    if (!(residual <= 1e-10 * rhs_scale))
      throw HaarConditionError(
          "tchebyshev_interpolation: levelled system is numerically singular "
          "(relative residual " + std::to_string(residual / rhs_scale) + ")");
  }
  TchebInterpResult out;
  out.coeffs = sol.head(degree + 1).cwiseQuotient(scales);
  out.levelled_error = sol[degree + 1];
  return out;
}

ReferenceSet initial_reference(ReferenceKind kind, const PhiBasis& basis,
                               int degree, const SampledFunction& g) {
  const double b = basis.half_width();
  const int count = degree + 2;
  ReferenceSet chebyshev;
  chebyshev.points.resize(count);
  for (int k = 0; k < count; ++k)
    chebyshev.points[k] = -b * std::cos(k * M_PI / (degree + 1));
  chebyshev.points[0] = -b;
  chebyshev.points[count - 1] = b;
  if (kind == ReferenceKind::Chebyshev) return chebyshev;

  // extrema of the least-squares residual
  FPolynomial fit = lsq_approx(g, std::make_shared<PhiBasis>(basis), degree);
  RealVector r = (g.values() - fit.values_on_grid()).real();
  std::vector<Extremum> chain;
  if (!alternating_chain(local_extrema(g.nodes(), r), count, chain)) {
    std::clog << "initial_reference: fewer than " << count
              << " alternating least-squares extrema; falling back to the "
                 "Chebyshev points\n";
    return chebyshev;
  }
  ReferenceSet out;
  out.points.resize(count);
  for (int i = 0; i < count; ++i) out.points[i] = chain[i].x;
  return out;
}

namespace {

struct IterationState {
  RealVector coeffs;
  double E = 0.0;
  RealVector grid_residual;
  std::vector<Extremum> extrema;  // refined, in increasing x
  double D = 0.0;
};

}  // namespace

ApproxResult remez(const SampledFunction& g,
                   std::shared_ptr<const PhiBasis> basis, int degree,
                   const RemezOptions& options) {
  if (!basis) throw InvalidInputError("remez: null basis");
  if (degree < 0) throw InvalidInputError("remez: degree must be >= 0");
  require_real_problem(g, *basis, "remez");
  if (!same_grid(g, basis->f))
    throw InvalidInputError("remez: data is not on the basis grid");

  const double b = basis->half_width();
  const double scale = std::max(1.0, g.max_abs());
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() * scale;

  ReferenceSet ref = initial_reference(options.initial, *basis, degree, g);
  ApproxResult result;
  double prev_abs_e = 0.0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    RealVector gv(ref.size());
    for (int j = 0; j < ref.size(); ++j) gv[j] = g(ref.points[j]).real();
    TchebInterpResult interp = tchebyshev_interpolation(gv, ref, *basis, degree);
    ResidualFn rfn{g, *basis, interp.coeffs};

    // residual on the evaluation grid
    RealVector r = g.values().real();
    for (int k = 0; k <= degree; ++k)
      if (interp.coeffs[k] != 0.0)
        r -= interp.coeffs[k] * basis->phi[k].values().real();

    // locate and refine every alternation extremum
    std::vector<Extremum> raw = local_extrema(g.nodes(), r);
    std::vector<Extremum> refined;
    refined.reserve(raw.size());
    const double step = g.step();
    for (const Extremum& e : raw) {
      const double sgn = e.value >= 0.0 ? 1.0 : -1.0;
      const double a = std::max(-b, e.x - step), c = std::min(b, e.x + step);
      refined.push_back(refine_extremum(rfn, a, e.x, c, sgn));
    }
    double D = std::abs(interp.levelled_error);
    for (const Extremum& e : refined) D = std::max(D, std::abs(e.value));

    result.poly = FPolynomial(basis, interp.coeffs.cast<Complex>());
    result.levelled_error = interp.levelled_error;
    result.max_deviation = D;
    result.reference = ref;
    result.iterations = iter + 1;
    result.history.emplace_back(std::abs(interp.levelled_error), D);

    if (D <= floor) return result;  // data lies in the span
    if ((D - std::abs(interp.levelled_error)) / D < options.tol) return result;

    const double abs_e = std::abs(interp.levelled_error);
    if (iter >= 3 && abs_e < prev_abs_e * (1.0 - 1e-7) - floor) {
      std::ostringstream msg;
      msg << "remez: levelled error stagnated (|E| fell from " << prev_abs_e
          << " to " << abs_e << " at iteration " << iter << ", D = " << D << ")";
      throw NumericError(msg.str());
    }
    prev_abs_e = std::max(prev_abs_e, abs_e);

    // swap the global deviation maximizer into the reference set, keeping the
    // signs alternating; returns false when it is already a reference point
    auto single_exchange = [&]() -> bool {
      Extremum best = refined.front();
      for (const Extremum& e : refined)
        if (std::abs(e.value) > std::abs(best.value)) best = e;
      double closest = std::numeric_limits<double>::infinity();
      for (int j = 0; j < ref.size(); ++j)
        closest = std::min(closest, std::abs(best.x - ref.points[j]));
      if (closest < 1e-14 * b) return false;
      RealVector& pts = ref.points;
      const int count = ref.size();
      if (best.x < pts[0]) {
        const double r0 = rfn(pts[0]);
        if ((best.value > 0) == (r0 > 0)) {
          pts[0] = best.x;
        } else {  // enter on the left, drop the far-end point
          for (int j = count - 1; j > 0; --j) pts[j] = pts[j - 1];
          pts[0] = best.x;
        }
      } else if (best.x > pts[count - 1]) {
        const double rn = rfn(pts[count - 1]);
        if ((best.value > 0) == (rn > 0)) {
          pts[count - 1] = best.x;
        } else {  // enter on the right, drop the far-end point
          for (int j = 0; j + 1 < count; ++j) pts[j] = pts[j + 1];
          pts[count - 1] = best.x;
        }
      } else {
        // interior: replace the nearest reference point with the same
        // residual sign
        int right = 0;
        while (right < count && pts[right] < best.x) ++right;
        const int left = right - 1;
        const double rl = (left >= 0) ? rfn(pts[left]) : 0.0;
        if (left >= 0 && (rl > 0) == (best.value > 0))
          pts[left] = best.x;
        else
          pts[right] = best.x;
      }
      std::sort(pts.data(), pts.data() + pts.size());
      return true;
    };

    if (options.exchange == ExchangeRule::Single) {
      if (!single_exchange()) return result;
    } else {
      // general exchange: one signed extremum per interval between residual
      // zeros (z_0 = -b, z_{n+2} = b)
      const int count = ref.size();
      std::vector<double> zeros;
      zeros.push_back(-b);
      for (int j = 0; j + 1 < count; ++j) {
        double lo = ref.points[j], hi = ref.points[j + 1];
        double rlo = rfn(lo);
        // bisection for the sign change the alternation guarantees
        double rhi = rfn(hi);
        if ((rlo > 0) == (rhi > 0)) {
          zeros.push_back(0.5 * (lo + hi));
          continue;
        }
        for (int it2 = 0; it2 < 60 && hi - lo > 1e-14 * b; ++it2) {
          const double mid = 0.5 * (lo + hi);
          const double rm = rfn(mid);
          if ((rm > 0) == (rlo > 0)) {
            lo = mid;
            rlo = rm;
          } else {
            hi = mid;
          }
        }
        zeros.push_back(0.5 * (lo + hi));
      }
      zeros.push_back(b);
      RealVector next(count);
      for (int j = 0; j < count; ++j) {
        const double lo = zeros[j], hi = zeros[j + 1];
        const double sgn = rfn(ref.points[j]) >= 0.0 ? 1.0 : -1.0;
        // best candidate among the refined extrema inside [lo, hi] and the
        // old reference point itself
        Extremum best{ref.points[j], rfn(ref.points[j])};
        for (const Extremum& e : refined)
          if (e.x >= lo && e.x <= hi && sgn * e.value > sgn * best.value) best = e;
        next[j] = best.x;
      }
      std::sort(next.data(), next.data() + next.size());
      bool distinct = true;
      for (int j = 0; j + 1 < count; ++j)
        if (!(next[j] < next[j + 1])) distinct = false;
      if (distinct) {
        ref.points = next;
      } else if (!single_exchange()) {
        return result;
      }
    }
  }
  return result;
}

ApproxResult minimax_lp(const SampledFunction& g,
                        std::shared_ptr<const PhiBasis> basis, int degree,
                        const MinimaxLpOptions& options) {
  if (!basis) throw InvalidInputError("minimax_lp: null basis");
  if (degree < 0) throw InvalidInputError("minimax_lp: degree must be >= 0");
  if (basis->n_max < degree)
    throw CapacityError("minimax_lp: basis order too small");
  if (options.grid_size < degree + 2)
    throw InvalidInputError("minimax_lp: grid_size must be at least degree + 2");

  const bool complex_case = !(basis->real_valued() && g.is_real());
  const int angles = complex_case ? options.angles : 2;
  if (angles < 2 || angles % 2 != 0)
    throw InvalidInputError("minimax_lp: angle count must be even and >= 2");

  const double b = basis->half_width();
  const int N = options.grid_size;
  const int n_coeff = degree + 1;
  const int n_unknowns = complex_case ? 2 * n_coeff : n_coeff;
  const int m_rows = n_unknowns + 1;
  const int n_cols = N * angles;

  const RealVector scales = basis_column_scales(*basis, degree);

  // samples at the LP grid
  RealVector xs(N);
  for (int j = 0; j < N; ++j) xs[j] = -b + 2.0 * b * j / (N - 1);
  ComplexMatrix phi_at(N, n_coeff);
  ComplexVector g_at(N);
  for (int j = 0; j < N; ++j) {
    g_at[j] = g(xs[j]);
    for (int k = 0; k < n_coeff; ++k)
      phi_at(j, k) = basis->phi[k](xs[j]) / scales[k];
  }

  // dual problem: maximize d'y subject to sum y = 1, W'y = 0, y >= 0
  RealMatrix A = RealMatrix::Zero(m_rows, n_cols);
  RealVector d(n_cols);
  for (int l = 0; l < angles; ++l) {
    const Complex rot = std::polar(1.0, 2.0 * M_PI * l / angles);
    for (int j = 0; j < N; ++j) {
      const int col = l * N + j;
      A(0, col) = 1.0;
      d[col] = (rot * g_at[j]).real();
      for (int k = 0; k < n_coeff; ++k) {
        const Complex w = rot * phi_at(j, k);
        A(1 + k, col) = w.real();
        if (complex_case) A(1 + n_coeff + k, col) = -w.imag();
      }
    }
  }
  RealVector rhs = RealVector::Zero(m_rows);
  rhs[0] = 1.0;
  RealVector obj = d;

  SimplexResult lp = simplex_maximize(A, rhs, obj, options.max_iterations);
  if (lp.status != SimplexResult::Status::Optimal)
    throw NumericError("minimax_lp: the LP solve failed (status " +
                       std::to_string(static_cast<int>(lp.status)) +
                       "); this formulation is always feasible and bounded");

  ComplexVector coeffs(n_coeff);
  for (int k = 0; k < n_coeff; ++k) {
    const double re = lp.multipliers[1 + k];
    const double im = complex_case ? lp.multipliers[1 + n_coeff + k] : 0.0;
    coeffs[k] = Complex(re, im) / scales[k];
  }

  ApproxResult result;
  result.poly = FPolynomial(basis, std::move(coeffs));
  result.levelled_error = std::abs(lp.objective);
  result.iterations = lp.iterations;
  result.max_deviation = max_deviation_on_grid(g, result.poly);
  result.history.emplace_back(result.levelled_error, result.max_deviation);
  return result;
}

FPolynomial lsq_approx(const SampledFunction& g,
                       std::shared_ptr<const PhiBasis> basis, int degree) {
  if (!basis) throw InvalidInputError("lsq_approx: null basis");
  if (degree < 0 || degree > basis->n_max)
    throw CapacityError("lsq_approx: degree outside the basis order");
  if (!same_grid(g, basis->f))
    throw InvalidInputError("lsq_approx: data is not on the basis grid");
  const int rows = static_cast<int>(g.values().size());
  const int cols = degree + 1;
  const RealVector scales = basis_column_scales(*basis, degree);
  ComplexMatrix A(rows, cols);
  for (int k = 0; k < cols; ++k) A.col(k) = basis->phi[k].values() / scales[k];
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(A);
  if (qr.rank() < cols)
    throw HaarConditionError("lsq_approx: basis columns are rank deficient on this grid");
  ComplexVector sol = qr.solve(g.values());
  for (int k = 0; k < cols; ++k) sol[k] /= scales[k];
  return FPolynomial(basis, std::move(sol));
}

double max_deviation_on_grid(const SampledFunction& g, const FPolynomial& p) {
  return (g.values() - p.values_on_grid()).cwiseAbs().maxCoeff();
}

}  // namespace kleinwave
