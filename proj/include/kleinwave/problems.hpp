#pragma once

#include <string>
#include <vector>

#include "kleinwave/cauchy.hpp"

namespace kleinwave {

/// A built-in benchmark problem with its reference parameters.
struct NamedProblem {
  std::string name;
  CauchyProblem problem;
  Strategy default_strategy = Strategy::Remez;
  int taylor_n = 20;
  int remez_n_g = 11, remez_n_h = 18;
  int lp_n_g = 14, lp_n_h = 25;
};

/// The three benchmark problems:
///   ex1: q = 9 constant, f = e^{3x}, b = 2,
///        g = cosh(sqrt(8) x), h = 1, exact sin(3t)/3 + cos(t) cosh(sqrt(8) x);
///   ex2: q = -25 constant (c = 5i), f = e^{5ix}, b = 2,
///        g = cos(sqrt(26) x), h = 1, exact sinh(5t)/5 + cos(t) cos(sqrt(26) x);
///   ex3: q = x^2, b = 2, g = e^{x^2/2}(1 + int_0^x e^{-s^2} ds),
///        h = x e^{x^2/2}, exact g cosh(t) + h sinh(sqrt(3) t)/sqrt(3).
NamedProblem example_problem(const std::string& name, int grid_segments = 3000);

std::vector<std::string> example_names();

/// Registry of closed-form functions selectable from run configurations.
std::function<Complex(double)> lookup_function(const std::string& id);
std::vector<std::string> function_registry_ids();

}  // namespace kleinwave
