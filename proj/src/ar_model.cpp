#include "arlab/ar_model.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "arlab/error.hpp"
#include "arlab/format.hpp"

namespace arlab {

namespace {

void require_same_dim(Index traj_dim, Index a_dim, const char* op) {
    if (traj_dim != a_dim) {
        throw ValidationError(std::string(op) + ": trajectory dimension " + std::to_string(traj_dim) +
                              " does not match system dimension " + std::to_string(a_dim));
    }
}

void require_dense_size(Index dim, Index horizon) {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (dim * horizon > kDenseCap) {
        throw ValidationError("dense assembly needs n*d <= " + std::to_string(kDenseCap) + ", got " +
                              std::to_string(dim * horizon));
    }
}

}  // namespace

SystemMatrix::SystemMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
        throw ValidationError("system matrix must be square with dim >= 1, got " +
                              std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
    }
    if (!entries_.allFinite()) throw ValidationError("system matrix has non-finite entries");
}

SystemMatrix SystemMatrix::scalar(double a) { return SystemMatrix(Eigen::MatrixXd::Constant(1, 1, a)); }
SystemMatrix SystemMatrix::zero(Index dim) { return SystemMatrix(Eigen::MatrixXd::Zero(dim, dim)); }
SystemMatrix SystemMatrix::identity(Index dim) { return SystemMatrix(Eigen::MatrixXd::Identity(dim, dim)); }
SystemMatrix SystemMatrix::parse(std::string_view text) { return SystemMatrix(parse_matrix(text)); }

std::string SystemMatrix::to_string() const { return format_matrix(entries_); }

double SystemMatrix::max_abs_diff(const SystemMatrix& other) const {
    if (other.dim() != dim()) return std::numeric_limits<double>::infinity();
    return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

Trajectory::Trajectory(Eigen::MatrixXd states) : states_(std::move(states)) {
    if (states_.rows() < 1 || states_.cols() < 1) throw ValidationError("trajectory needs n >= 1 and d >= 1");
    if (!states_.allFinite()) throw ValidationError("trajectory has non-finite states");
}

Trajectory Trajectory::zeros(Index dim, Index horizon) { return Trajectory(Eigen::MatrixXd::Zero(dim, horizon)); }

Trajectory draw_noise(Index dim, Index horizon, const SeedSpec& seed) {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    if (dim < 1) throw ValidationError("dimension must be >= 1");
    CounterRng rng(seed);
    Eigen::MatrixXd w(dim, horizon);
    double* p = w.data();
    for (Index i = 0; i < w.size(); ++i) p[i] = rng.normal();
    return Trajectory(std::move(w));
}

Trajectory simulate(const SystemMatrix& a, Index horizon, const SeedSpec& seed) {
    return color(draw_noise(a.dim(), horizon, seed), a);
}

Trajectory whiten(const Trajectory& traj, const SystemMatrix& a) {
    require_same_dim(traj.dim(), a.dim(), "whiten");
    const auto& z = traj.states();
    Eigen::MatrixXd w(z.rows(), z.cols());
    w.col(0) = z.col(0);
    for (Index k = 1; k < z.cols(); ++k) w.col(k).noalias() = z.col(k) - a.matrix() * z.col(k - 1);
    return Trajectory(std::move(w));
}

Trajectory color(const Trajectory& noise, const SystemMatrix& a) {
    require_same_dim(noise.dim(), a.dim(), "color");
    const auto& w = noise.states();
    Eigen::MatrixXd z(w.rows(), w.cols());
    z.col(0) = w.col(0);
    for (Index k = 1; k < w.cols(); ++k) {
        z.col(k).noalias() = a.matrix() * z.col(k - 1);
        z.col(k) += w.col(k);
        if (!z.col(k).allFinite()) throw OverflowError("non-finite state in AR recursion", static_cast<std::size_t>(k + 1));
    }
    return Trajectory(std::move(z));
}

double whitened_norm_sq(const Eigen::MatrixXd& states, const Eigen::MatrixXd& a) {
    const Index d = states.rows();
    const Index n = states.cols();
    const double* z = states.data();
    const double* am = a.data();  // column-major
    double total = 0.0;
    for (Index j = 0; j < d; ++j) total += z[j] * z[j];
    for (Index k = 1; k < n; ++k) {
        const double* cur = z + k * d;
        const double* prev = cur - d;
        for (Index i = 0; i < d; ++i) {
            double r = cur[i];
            for (Index j = 0; j < d; ++j) r -= am[j * d + i] * prev[j];
            total += r * r;
        }
    }
    return total;
}

double log_density(const Trajectory& traj, const SystemMatrix& a) {
    require_same_dim(traj.dim(), a.dim(), "log_density");
    const double nd = static_cast<double>(traj.dim() * traj.horizon());
    return -0.5 * nd * std::log(2.0 * std::numbers::pi) - 0.5 * whitened_norm_sq(traj.states(), a.matrix());
}

Eigen::MatrixXd dense_factor(const SystemMatrix& a, Index horizon) {
    require_dense_size(a.dim(), horizon);
    const Index d = a.dim();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d * horizon, d * horizon);
    // Explicit powers A^0..A^{n-1}; block (i, j) = A^{i-j}.
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d, d);
    for (Index lag = 0; lag < horizon; ++lag) {
        for (Index j = 0; j + lag < horizon; ++j) l.block((j + lag) * d, j * d, d, d) = power;
        power = (power * a.matrix()).eval();
    }
    return l;
}

Eigen::MatrixXd dense_inverse_factor(const SystemMatrix& a, Index horizon) {
    require_dense_size(a.dim(), horizon);
    const Index d = a.dim();
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(d * horizon, d * horizon);
    for (Index k = 1; k < horizon; ++k) l.block(k * d, (k - 1) * d, d, d) = -a.matrix();
    return l;
}

Eigen::MatrixXd dense_covariance(const SystemMatrix& a, Index horizon) {
    const Eigen::MatrixXd l = dense_factor(a, horizon);
    Eigen::MatrixXd sigma = l * l.transpose();
    if (!sigma.allFinite()) throw OverflowError("non-finite dense covariance", static_cast<std::size_t>(horizon));
    return sigma;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
    out << 'k';
    for (Index j = 1; j <= traj.dim(); ++j) out << ",z_" << j;
    out << '\n';
    for (Index k = 0; k < traj.horizon(); ++k) {
        out << (k + 1);
        for (Index j = 0; j < traj.dim(); ++j) out << ',' << format_real(traj.states()(j, k));
        out << '\n';
    }
}

Trajectory read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("trajectory csv: missing header");
    const auto header = split(trim(line), ',');
    if (header.size() < 2 || trim(header[0]) != "k") throw ValidationError("trajectory csv: header must be k,z_1,...,z_d");
    const Index d = static_cast<Index>(header.size() - 1);
    for (Index j = 1; j <= d; ++j) {
        if (trim(header[j]) != "z_" + std::to_string(j)) throw ValidationError("trajectory csv: bad column '" + std::string(header[j]) + "'");
    }
    std::vector<double> values;
    Index rows = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(trim(line), ',');
        if (static_cast<Index>(cells.size()) != d + 1) {
            throw ValidationError("trajectory csv: row " + std::to_string(rows + 1) + " has wrong column count");
        }
        if (parse_real(cells[0]) != static_cast<double>(rows + 1)) {
            throw ValidationError("trajectory csv: steps must be numbered 1..n");
        }
        for (Index j = 1; j <= d; ++j) values.push_back(parse_real(cells[j]));
        ++rows;
    }
    if (rows == 0) throw ValidationError("trajectory csv: no rows");
    return Trajectory(Eigen::Map<Eigen::MatrixXd>(values.data(), d, rows));
}

}  // namespace arlab
