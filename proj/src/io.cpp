#include "kleinwave/io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace kleinwave {

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  return out;
}

}  // namespace

void write_solution_csv(const std::string& path, const TriangleMesh& mesh,
                        const std::function<Complex(double, double)>& exact,
                        int precision) {
  std::ofstream out = open_out(path);
  out << "x,t,re_u,im_u";
  if (exact) out << ",re_exact,im_exact,abs_err";
  out << "\n";
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    out << format_number(mesh.x[i], precision) << ','
        << format_number(mesh.t[i], precision) << ','
        << format_number(mesh.u[i].real(), precision) << ','
        << format_number(mesh.u[i].imag(), precision);
    if (exact) {
      const Complex e = exact(mesh.x[i], mesh.t[i]);
      out << ',' << format_number(e.real(), precision) << ','
          << format_number(e.imag(), precision) << ','
          << format_number(std::abs(mesh.u[i] - e), precision);
    }
    out << "\n";
  }
}

void write_data_errors_csv(const std::string& path, const CauchyProblem& problem,
                           const GeneralizedWaveSolution& solution,
                           int precision) {
  std::ofstream out = open_out(path);
  out << "x,abs_err_g,abs_err_h\n";
  const ComplexVector pg =
      FPolynomial(solution.basis, solution.alpha).values_on_grid();
  const ComplexVector ph =
      FPolynomial(solution.basis, solution.beta).values_on_grid();
  for (int i = 0; i <= problem.g.segments(); ++i) {
    out << format_number(problem.g.node(i), precision) << ','
        << format_number(std::abs(problem.g.value(i) - pg[i]), precision) << ','
        << format_number(std::abs(problem.h.value(i) - ph[i]), precision) << "\n";
  }
}

void write_certificate_json(const std::string& path,
                            const GeneralizedWaveSolution& solution,
                            const std::string& strategy_name, int n_g, int n_h,
                            std::optional<double> observed_max_error) {
  nlohmann::ordered_json j;
  j["strategy"] = strategy_name;
  j["n_g"] = n_g;
  j["n_h"] = n_h;
  j["eps1"] = solution.certificate.eps1;
  j["eps2"] = solution.certificate.eps2;
  j["normT_bound"] = solution.certificate.normT_bound;
  j["normTinv_bound"] = solution.certificate.normTinv_bound;
  j["total"] = solution.certificate.total;
  if (observed_max_error) j["observed_max_error"] = *observed_max_error;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_basis_csv(const std::string& path, const PhiBasis& basis,
                     int precision) {
  std::ofstream out = open_out(path);
  out << "x";
  for (int k = 0; k <= basis.n_max; ++k)
    out << ",re_phi" << k << ",im_phi" << k;
  out << "\n";
  for (int i = 0; i <= basis.f.segments(); ++i) {
    out << format_number(basis.f.node(i), precision);
    for (int k = 0; k <= basis.n_max; ++k) {
      const Complex v = basis.phi[k].value(i);
      out << ',' << format_number(v.real(), precision) << ','
          << format_number(v.imag(), precision);
    }
    out << "\n";
  }
}

}  // namespace kleinwave
