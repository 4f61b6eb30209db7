#include "arlab/format.hpp"

#include <charconv>
#include <cstdio>

#include "arlab/error.hpp"

namespace arlab {

std::string format_real(double x) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_real(std::string_view token) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc{} || ptr != end) {
        throw ValidationError("not a number: '" + std::string(token) + "'");
    }
    return value;
}

Eigen::MatrixXd parse_matrix(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ValidationError("empty matrix");
    const auto rows = split(text, ';');
    std::vector<std::vector<double>> values;
    for (const auto row : rows) {
        std::vector<double> entries;
        for (const auto tok : split(row, ',')) entries.push_back(parse_real(tok));
        if (!values.empty() && entries.size() != values.front().size()) {
            throw ValidationError("ragged matrix rows in '" + std::string(text) + "'");
        }
        values.push_back(std::move(entries));
    }
    Eigen::MatrixXd m(values.size(), values.front().size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = values[i][j];
    return m;
}

std::string format_matrix(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i > 0) out += ';';
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ',';
            out += format_real(m(i, j));
        }
    }
    return out;
}

}  // namespace arlab
