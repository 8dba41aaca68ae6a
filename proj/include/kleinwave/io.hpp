#pragma once

#include <optional>
#include <string>

#include "kleinwave/basis.hpp"
#include "kleinwave/cauchy.hpp"

namespace kleinwave {

/// Shortest representation with `precision` significant digits.
std::string format_number(double v, int precision = 17);

/// Rows `x,t,re_u,im_u[,re_exact,im_exact,abs_err]`, header mandatory,
/// LF line endings.
void write_solution_csv(const std::string& path, const TriangleMesh& mesh,
                        const std::function<Complex(double, double)>& exact,
                        int precision = 17);

/// Rows `x,abs_err_g,abs_err_h` over the data grid.
void write_data_errors_csv(const std::string& path, const CauchyProblem& problem,
                           const GeneralizedWaveSolution& solution,
                           int precision = 17);

void write_certificate_json(const std::string& path,
                            const GeneralizedWaveSolution& solution,
                            const std::string& strategy_name, int n_g, int n_h,
                            std::optional<double> observed_max_error);

/// Rows `x,re_phi0,im_phi0,...,re_phiN,im_phiN`.
void write_basis_csv(const std::string& path, const PhiBasis& basis,
                     int precision = 17);

}  // namespace kleinwave
