#include "kleinwave/problems.hpp"

#include <cmath>
#include <map>

namespace kleinwave {

namespace {

Complex ex1_g(double x) { return std::cosh(std::sqrt(8.0) * x); }

Complex ex2_g(double x) { return std::cos(std::sqrt(26.0) * x); }

Complex ex3_g(double x) {
  return std::exp(x * x / 2.0) * (1.0 + std::sqrt(M_PI) / 2.0 * std::erf(x));
}

Complex ex3_h(double x) { return x * std::exp(x * x / 2.0); }

const std::map<std::string, std::function<Complex(double)>>& registry() {
  static const std::map<std::string, std::function<Complex(double)>> map = {
      {"zero", [](double) { return Complex(0.0); }},
      {"one", [](double) { return Complex(1.0); }},
      {"x", [](double x) { return Complex(x); }},
      {"x^2", [](double x) { return Complex(x * x); }},
      {"ex1_g", [](double x) { return ex1_g(x); }},
      {"ex2_g", [](double x) { return ex2_g(x); }},
      {"ex3_g", [](double x) { return ex3_g(x); }},
      {"ex3_h", [](double x) { return ex3_h(x); }},
  };
  return map;
}

}  // namespace

std::function<Complex(double)> lookup_function(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end())
    throw ConfigError("unknown function id '" + id + "' (known: " +
                      [] {
                        std::string s;
                        for (const auto& [k, v] : registry())
                          s += (s.empty() ? "" : ", ") + k;
                        return s;
                      }() + ")");
  return it->second;
}

std::vector<std::string> function_registry_ids() {
  std::vector<std::string> ids;
  for (const auto& [k, v] : registry()) ids.push_back(k);
  return ids;
}

std::vector<std::string> example_names() { return {"ex1", "ex2", "ex3"}; }

NamedProblem example_problem(const std::string& name, int grid_segments) {
  const double b = 2.0;
  NamedProblem named;
  named.name = name;
  CauchyProblem& p = named.problem;
  p.b = b;

  if (name == "ex1") {
    const double c = 3.0, lambda1 = 1.0;
    p.q = SampledFunction::constant(b, grid_segments, Complex(c * c));
    p.g = SampledFunction::sample(b, grid_segments, ex1_g);
    p.h = SampledFunction::constant(b, grid_segments, Complex(1.0));
    p.fprime0 = c;  // f = e^{3x}
    p.g_spectral = SpectralData{Complex(-lambda1 * lambda1), Complex(1.0), Complex(0.0)};
    p.h_spectral = SpectralData{Complex(-c * c), Complex(1.0), Complex(0.0)};
    p.exact = [c, lambda1](double x, double t) {
      return Complex(std::sin(c * t) / c +
                     std::cos(lambda1 * t) * std::cosh(std::sqrt(8.0) * x));
    };
    named.default_strategy = Strategy::Remez;
    named.taylor_n = 20;
    named.remez_n_g = 11;
    named.remez_n_h = 18;
    named.lp_n_g = 11;
    named.lp_n_h = 18;
    return named;
  }
  if (name == "ex2") {
    const Complex c(0.0, 5.0);  // c = 5i, q = c^2 = -25
    const double lambda1 = 1.0;
    p.q = SampledFunction::constant(b, grid_segments, c * c);
    p.g = SampledFunction::sample(b, grid_segments, ex2_g);
    p.h = SampledFunction::constant(b, grid_segments, Complex(1.0));
    p.fprime0 = c;  // f = e^{5ix}
    p.g_spectral = SpectralData{Complex(-lambda1 * lambda1), Complex(1.0), Complex(0.0)};
    p.h_spectral = SpectralData{-c * c, Complex(1.0), Complex(0.0)};
    p.exact = [](double x, double t) {
      return Complex(std::sinh(5.0 * t) / 5.0 +
                     std::cos(t) * std::cos(std::sqrt(26.0) * x));
    };
    named.default_strategy = Strategy::Lp;
    named.taylor_n = 50;
    named.remez_n_g = 14;  // remez rejects the complex basis; kept for symmetry
    named.remez_n_h = 25;
    named.lp_n_g = 14;
    named.lp_n_h = 25;
    return named;
  }
  if (name == "ex3") {
    p.q = SampledFunction::sample(b, grid_segments, [](double x) { return Complex(x * x); });
    p.g = SampledFunction::sample(b, grid_segments, ex3_g);
    p.h = SampledFunction::sample(b, grid_segments, ex3_h);
    p.fprime0 = 0.0;
    p.g_spectral = SpectralData{Complex(1.0), Complex(1.0), Complex(1.0)};
    p.h_spectral = SpectralData{Complex(3.0), Complex(0.0), Complex(1.0)};
    p.exact = [](double x, double t) {
      const double g = ex3_g(x).real(), h = ex3_h(x).real();
      const double s3 = std::sqrt(3.0);
      return Complex(g * std::cosh(t) + h * std::sinh(s3 * t) / s3);
    };
    named.default_strategy = Strategy::Remez;
    named.taylor_n = 20;
    named.remez_n_g = 16;
    named.remez_n_h = 19;
    named.lp_n_g = 16;
    named.lp_n_h = 19;
    return named;
  }
  throw ConfigError("unknown example '" + name + "' (known: ex1, ex2, ex3)");
}

}  // namespace kleinwave
