// kleinwave: solve Cauchy problems for the variable-coefficient Klein-Gordon
// equation by expanding the initial data in a transmuted power basis.
//
// Subcommands:
//   solve    --config FILE [--out DIR]
//   example  {ex1|ex2|ex3} [--strategy S] [--n K] [--n-h K] [--out DIR]
//   basis    --config FILE [--out DIR]
//   validate [--quick]
//
// Exit codes: 0 success, 1 configuration error, 2 numeric error,
// 3 validation failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "kleinwave/basis.hpp"
#include "kleinwave/cauchy.hpp"
#include "kleinwave/io.hpp"
#include "kleinwave/problems.hpp"
#include "kleinwave/spps.hpp"
#include "kleinwave/transmute.hpp"

namespace {

using json = nlohmann::json;
using namespace kleinwave;

int default_grid_segments() {
  if (const char* env = std::getenv("KLEINWAVE_GRID_N")) {
    const int n = std::atoi(env);
    if (n >= 8 && n % 2 == 0) return n;
    throw ConfigError("KLEINWAVE_GRID_N must be an even integer >= 8, got '" +
                      std::string(env) + "'");
  }
  return SampledFunction::kDefaultSegments;
}

Complex parse_complex(const json& node, const std::string& field) {
  if (node.is_number()) return Complex(node.get<double>());
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number())
    return Complex(node[0].get<double>(), node[1].get<double>());
  throw ConfigError("config error: " + field + ": expected a number or [re, im]");
}

SampledFunction parse_function(const json& node, const std::string& field,
                               double b, int segments) {
  if (!node.is_object() || !node.contains("kind"))
    throw ConfigError("config error: " + field + ": expected an object with a 'kind'");
  const std::string kind = node["kind"].get<std::string>();
  if (kind == "constant") {
    if (!node.contains("value"))
      throw ConfigError("config error: " + field + ".value is required for kind=constant");
    return SampledFunction::constant(b, segments,
                                     parse_complex(node["value"], field + ".value"));
  }
  if (kind == "table") {
    if (!node.contains("values") || !node["values"].is_array())
      throw ConfigError("config error: " + field + ".values must be an array");
    const json& vals = node["values"];
    if (static_cast<int>(vals.size()) != segments + 1)
      throw ConfigError("config error: " + field + ".values: expected " +
                        std::to_string(segments + 1) + " entries, got " +
                        std::to_string(vals.size()));
    ComplexVector v(segments + 1);
    for (int i = 0; i <= segments; ++i)
      v[i] = parse_complex(vals[i], field + ".values[" + std::to_string(i) + "]");
    return SampledFunction(b, std::move(v));
  }
  if (kind == "expression") {
    if (!node.contains("id"))
      throw ConfigError("config error: " + field + ".id is required for kind=expression");
    auto fn = lookup_function(node["id"].get<std::string>());
    return SampledFunction::sample(b, segments, fn);
  }
  throw ConfigError("config error: " + field + ".kind: unknown kind '" + kind +
                    "' (expected constant | table | expression)");
}

std::optional<SpectralData> parse_spectral(const json& node, const std::string& field) {
  if (!node.contains("spectral")) return std::nullopt;
  const json& s = node["spectral"];
  SpectralData data;
  data.lambda = parse_complex(s.at("lambda"), field + ".spectral.lambda");
  data.v0 = parse_complex(s.at("v0"), field + ".spectral.v0");
  data.v0p = parse_complex(s.at("v0p"), field + ".spectral.v0p");
  return data;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "taylor") return Strategy::Taylor;
  if (s == "remez") return Strategy::Remez;
  if (s == "lp") return Strategy::Lp;
  throw ConfigError("unknown strategy '" + s + "' (expected taylor | remez | lp)");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Taylor: return "taylor";
    case Strategy::Remez: return "remez";
    case Strategy::Lp: return "lp";
  }
  return "?";
}

void run_problem(const CauchyProblem& problem, Strategy strategy,
                 const SolveOptions& options, double mesh_step,
                 const std::string& prefix, const std::string& outdir,
                 int precision = 17) {
  GeneralizedWaveSolution solution = solve_cauchy(problem, strategy, options);
  TriangleMesh mesh = evaluate_on_triangle(solution, mesh_step);

  std::optional<double> observed;
  if (problem.exact) {
    double err = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i)
      err = std::max(err, std::abs(mesh.u[i] - problem.exact(mesh.x[i], mesh.t[i])));
    observed = err;
  }

  std::filesystem::create_directories(outdir);
  const std::string solution_csv = outdir + "/" + prefix + "_solution.csv";
  const std::string data_errors_csv = outdir + "/" + prefix + "_data_errors.csv";
  const std::string certificate_json = outdir + "/" + prefix + "_certificate.json";
  write_solution_csv(solution_csv, mesh, problem.exact, precision);
  write_data_errors_csv(data_errors_csv, problem, solution, precision);
  const int n_h_eff = options.n_h >= 0 ? options.n_h : options.n_g - 1;
  write_certificate_json(certificate_json, solution, strategy_name(strategy),
                         options.n_g, n_h_eff, observed);

  std::cout << prefix << ": data errors eps1 = "
            << format_number(solution.certificate.eps1, 6)
            << ", eps2 = " << format_number(solution.certificate.eps2, 6)
            << ", certificate total = "
            << format_number(solution.certificate.total, 6) << "\n";
  if (observed)
    std::cout << prefix << ": observed max |u - u_N| over the mesh = "
              << format_number(*observed, 6) << "\n";
  std::cout << prefix << ": wrote " << solution_csv << ", " << data_errors_csv
            << ", " << certificate_json << "\n";
}

int cmd_solve(const std::string& config_path, const std::string& outdir) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config error: " + std::string(e.what()));
  }
  try {
    const double b = cfg.at("b").get<double>();
    if (!(b > 0)) throw ConfigError("config error: b must be positive");
    const int segments = cfg.value("grid_N", default_grid_segments());
    if (segments < 8 || segments % 2 != 0)
      throw ConfigError("config error: grid_N must be an even integer >= 8");

    CauchyProblem problem;
    problem.b = b;
    problem.q = parse_function(cfg.at("q"), "q", b, segments);
    problem.g = parse_function(cfg.at("g"), "g", b, segments);
    problem.h = parse_function(cfg.at("h"), "h", b, segments);
    problem.g_spectral = parse_spectral(cfg.at("g"), "g");
    problem.h_spectral = parse_spectral(cfg.at("h"), "h");
    if (cfg.contains("fprime0"))
      problem.fprime0 = parse_complex(cfg["fprime0"], "fprime0");

    const Strategy strategy = parse_strategy(cfg.value("strategy", "remez"));
    SolveOptions options;
    options.n_g = cfg.value("n", 20);
    options.n_h = cfg.value("n_h", -1);
    if (cfg.contains("exchange")) {
      const std::string ex = cfg["exchange"].get<std::string>();
      if (ex == "single")
        options.remez.exchange = ExchangeRule::Single;
      else if (ex == "general")
        options.remez.exchange = ExchangeRule::General;
      else
        throw ConfigError("config error: exchange must be single | general");
    }
    options.lp.grid_size = cfg.value("lp_grid_N", options.lp.grid_size);
    options.lp.angles = cfg.value("lp_angles_m", options.lp.angles);
    const double mesh_step = cfg.value("mesh_step", b / 200.0);
    const int precision = cfg.value("precision", 17);

    std::string prefix = cfg.value("name", "");
    if (prefix.empty())
      prefix = std::filesystem::path(config_path).stem().string();

    run_problem(problem, strategy, options, mesh_step, prefix, outdir, precision);
    return 0;
  } catch (const json::exception& e) {
    throw ConfigError("config error: " + std::string(e.what()));
  }
}

int cmd_example(const std::string& name, const std::string& strategy_arg, int n,
                int n_h, const std::string& outdir) {
  NamedProblem named = example_problem(name, default_grid_segments());
  const Strategy strategy =
      strategy_arg.empty() ? named.default_strategy : parse_strategy(strategy_arg);
  SolveOptions options;
  switch (strategy) {
    case Strategy::Taylor:
      options.n_g = named.taylor_n;
      options.n_h = named.taylor_n - 1;
      break;
    case Strategy::Remez:
      options.n_g = named.remez_n_g;
      options.n_h = named.remez_n_h;
      break;
    case Strategy::Lp:
      options.n_g = named.lp_n_g;
      options.n_h = named.lp_n_h;
      break;
  }
  if (n >= 0) options.n_g = n;
  if (n_h >= 0) options.n_h = n_h;
  run_problem(named.problem, strategy, options, named.problem.b / 200.0,
              named.name, outdir);
  // generalized-Taylor comparison run at the reference order
  if (strategy != Strategy::Taylor && named.problem.g_spectral &&
      named.problem.h_spectral) {
    SolveOptions taylor_options;
    taylor_options.n_g = named.taylor_n;
    taylor_options.n_h = named.taylor_n - 1;
    run_problem(named.problem, Strategy::Taylor, taylor_options,
                named.problem.b / 200.0,
                named.name + "_taylor" + std::to_string(named.taylor_n), outdir);
  }
  return 0;
}

int cmd_basis(const std::string& config_path, const std::string& outdir) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config error: " + std::string(e.what()));
  }
  const double b = cfg.at("b").get<double>();
  const int segments = cfg.value("grid_N", default_grid_segments());
  const int order = cfg.value("n", 20);
  SampledFunction q = parse_function(cfg.at("q"), "q", b, segments);
  Complex fprime0(0.0);
  if (cfg.contains("fprime0")) fprime0 = parse_complex(cfg["fprime0"], "fprime0");

  SampledFunction f = particular_solution(q, fprime0);
  BasisOptions basis_options;
  basis_options.fprime0 = fprime0;
  if (cfg.contains("max_order")) basis_options.max_order = cfg["max_order"].get<int>();
  PhiBasis basis = build_basis(f, order, basis_options);

  std::filesystem::create_directories(outdir);
  std::string prefix = cfg.value("name", "");
  if (prefix.empty()) prefix = std::filesystem::path(config_path).stem().string();
  const std::string table_path = outdir + "/" + prefix + "_basis.csv";
  write_basis_csv(table_path, basis);

  // ladder-identity diagnostics: d1 phi_k = k psi_{k-1}, d2 phi_k = k(k-1) phi_{k-2}
  nlohmann::ordered_json report;
  report["n"] = order;
  report["min_abs_f"] = basis.f.min_abs();
  report["h"] = {basis.h.real(), basis.h.imag()};
  json ladder = json::array();
  for (int k = 1; k <= std::min(order, 5); ++k) {
    json row;
    row["k"] = k;
    auto d1 = f_derivative(basis.phi[k], basis, 1);
    double scale = std::max(1e-300, double(k) * basis.psi[k - 1].max_abs());
    row["d1_rel_residual"] =
        (d1.values() - double(k) * basis.psi[k - 1].values()).cwiseAbs().maxCoeff() /
        scale;
    if (k >= 2) {
      auto d2 = f_derivative(basis.phi[k], basis, 2);
      scale = std::max(1e-300, double(k) * (k - 1) * basis.phi[k - 2].max_abs());
      row["d2_rel_residual"] = (d2.values() -
                                double(k) * double(k - 1) * basis.phi[k - 2].values())
                                   .cwiseAbs()
                                   .maxCoeff() /
                               scale;
    }
    ladder.push_back(row);
  }
  report["ladder"] = ladder;
  const std::string report_path = outdir + "/" + prefix + "_basis_report.json";
  std::ofstream rep(report_path, std::ios::binary);
  rep << report.dump(2) << "\n";

  std::cout << prefix << ": wrote " << table_path << ", " << report_path << "\n";
  return 0;
}

struct ValidationRow {
  std::string name;
  double value;
  double tol;
  bool pass() const { return value <= tol; }
};

int cmd_validate(bool quick) {
  std::vector<ValidationRow> rows;
  const int M = quick ? 128 : 512;
  const int N = quick ? 600 : 1200;
  const int kmax = quick ? 4 : 8;

  {  // zero potential: T is the identity
    auto q = SampledFunction::constant(1.0, 200, Complex(0.0));
    KernelGrid kernel = build_kernel(q, Complex(0.0), 64);
    auto u = SampledFunction::sample(1.0, 400,
                                     [](double x) { return Complex(std::sin(2 * x)); });
    auto round = transmute_inverse(kernel, transmute(kernel, u));
    rows.push_back({"q=0: kernel vanishes", kernel.H.cwiseAbs().maxCoeff(), 1e-12});
    rows.push_back({"q=0: T^-1 T = id",
                    (round.values() - u.values()).cwiseAbs().maxCoeff(), 1e-12});
  }
  {  // constant potential: kernel equals the closed Bessel form
    const double c = 9.0, h = 3.0;
    auto q = SampledFunction::constant(1.0, N, Complex(c));
    KernelGrid kernel = build_kernel(q, Complex(h), M);
    double rel = 0.0;
    for (int i = M / 2; i <= M; ++i) {
      for (int j = M / 2; j <= i; ++j) {
        const double u = kernel.node(i), v = kernel.node(j);
        if (u + v > 1.0 + 1e-14) continue;
        const double z = 2.0 * std::sqrt(c * u * v);
        const double exact = 0.5 * h * bessel_i0(z) + c * u * bessel_i1_over_x(z);
        rel = std::max(rel, std::abs(kernel.H(i, j).real() - exact) / exact);
      }
    }
    rows.push_back({"q=9: kernel matches Bessel form", rel, 1e-6});

    auto f = SampledFunction::sample(1.0, N,
                                     [](double x) { return Complex(std::exp(3 * x)); });
    BasisOptions opts;
    opts.fprime0 = Complex(3.0);
    PhiBasis basis = build_basis(f, kmax, opts);
    double map_err = 0.0, inv_err = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      auto xk = SampledFunction::sample(1.0, N,
                                        [k](double x) { return Complex(std::pow(x, k)); });
      auto mapped = transmute(kernel, xk);
      map_err = std::max(map_err,
                         (mapped.values() - basis.phi[k].values()).cwiseAbs().maxCoeff() /
                             basis.phi[k].max_abs());
      auto round = transmute_inverse(kernel, mapped);
      inv_err = std::max(inv_err,
                         (round.values() - xk.values()).cwiseAbs().maxCoeff());
    }
    rows.push_back({"q=9: T[x^k] -> phi_k", map_err, 1e-4});
    rows.push_back({"q=9: T^-1 T = id on x^k", inv_err, 1e-4});
  }
  {  // variable potential mapping
    auto q = SampledFunction::sample(1.0, N, [](double x) { return Complex(x * x); });
    auto f = particular_solution(q, Complex(0.0));
    PhiBasis basis = build_basis(f, 6);
    KernelGrid kernel = build_kernel(q, Complex(0.0), quick ? 128 : 256);
    double map_err = 0.0;
    for (int k = 0; k <= 6; ++k) {
      auto xk = SampledFunction::sample(1.0, N,
                                        [k](double x) { return Complex(std::pow(x, k)); });
      auto mapped = transmute(kernel, xk);
      map_err = std::max(map_err,
                         (mapped.values() - basis.phi[k].values()).cwiseAbs().maxCoeff() /
                             basis.phi[k].max_abs());
    }
    rows.push_back({"q=x^2: T[x^k] -> phi_k", map_err, 1e-4});
  }
  {  // kernel estimate, three potentials
    struct BoundCase {
      std::string label;
      SampledFunction q;
      Complex h;
    };
    std::vector<BoundCase> cases;
    cases.push_back({"q=9", SampledFunction::constant(1.0, 400, Complex(9.0)), Complex(3.0)});
    cases.push_back({"q=x^2",
                     SampledFunction::sample(2.0, 400, [](double x) { return Complex(x * x); }),
                     Complex(0.0)});
    cases.push_back({"q=-25", SampledFunction::constant(2.0, 400, Complex(-25.0)),
                     Complex(0.0, 5.0)});
    for (const BoundCase& bc : cases) {
      KernelGrid kernel = build_kernel(bc.q, bc.h, 128);
      const double c = bc.q.max_abs();
      double worst = 0.0;
      for (int i = 0; i <= 128; ++i) {
        for (int j = 0; j <= 128; ++j) {
          const double u = kernel.node(i), v = kernel.node(j);
          const double bound = kernel_bound(c, bc.h, u + v, u - v);
          const double excess =
              (std::abs(kernel.H(i, j)) - bound) / std::max(1.0, bound);
          worst = std::max(worst, excess);
        }
      }
      rows.push_back({"kernel bound holds (" + bc.label + ")", worst, 1e-9});
    }
  }

  bool all_pass = true;
  std::printf("%-40s %12s %10s  %s\n", "check", "value", "tolerance", "result");
  for (const ValidationRow& row : rows) {
    all_pass = all_pass && row.pass();
    std::printf("%-40s %12.3e %10.1e  %s\n", row.name.c_str(), row.value, row.tol,
                row.pass() ? "PASS" : "FAIL");
  }
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy solver for u_xx - u_tt - q(x) u = 0 via generalized wave polynomials"};
  app.require_subcommand(1);

  std::string config_path, outdir = ".", example_name, strategy;
  int n = -1, n_h = -1;
  bool quick = false;

  CLI::App* solve = app.add_subcommand("solve", "solve a configured problem");
  solve->add_option("--config", config_path, "JSON problem configuration")->required();
  solve->add_option("--out", outdir, "output directory (default .)");

  CLI::App* example = app.add_subcommand("example", "run a built-in benchmark problem");
  example->add_option("name", example_name, "ex1 | ex2 | ex3")->required();
  example->add_option("--strategy", strategy, "taylor | remez | lp");
  example->add_option("--n", n, "g-approximant order override");
  example->add_option("--n-h", n_h, "h-approximant order override");
  example->add_option("--out", outdir, "output directory (default .)");

  CLI::App* basis = app.add_subcommand("basis", "build and report a phi basis");
  basis->add_option("--config", config_path, "JSON basis configuration")->required();
  basis->add_option("--out", outdir, "output directory (default .)");

  CLI::App* validate = app.add_subcommand("validate", "run the transmutation validation suite");
  validate->add_flag("--quick", quick, "reduced resolutions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, outdir);
    if (example->parsed()) return cmd_example(example_name, strategy, n, n_h, outdir);
    if (basis->parsed()) return cmd_basis(config_path, outdir);
    if (validate->parsed()) return cmd_validate(quick);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidInputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const VanishingFError& e) {
    std::cerr << "numeric error (module spps): " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
