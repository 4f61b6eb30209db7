#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace arlab {

/// Decimal with 17 significant digits ("%.17g"); round-trips every double.
std::string format_real(double x);

/// Matrix text: row-major, rows separated by ';', entries by ','.
/// e.g. "0.9,0.1;0,0.8". Whitespace around tokens is ignored.
Eigen::MatrixXd parse_matrix(std::string_view text);
std::string format_matrix(const Eigen::MatrixXd& m);

/// Strict double parse of a whole token (surrounding whitespace allowed).
double parse_real(std::string_view token);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace arlab
