#include "arlab/gram.hpp"

#include <string>

#include "arlab/error.hpp"

namespace arlab {

namespace {

template <class Visit>
void run_recursion(const SystemMatrix& a, Index steps, Visit&& visit) {
    if (steps < 1) throw ValidationError("prefix index must be >= 1");
    const Index d = a.dim();
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd p = identity;
    Eigen::MatrixXd ap(d, d);
    visit(p);
    for (Index j = 2; j <= steps; ++j) {
        ap.noalias() = a.matrix() * p;
        p.noalias() = ap * a.matrix().transpose();
        p += identity;
        p = (0.5 * (p + p.transpose())).eval();
        if (!p.allFinite()) throw OverflowError("non-finite state covariance", static_cast<std::size_t>(j));
        visit(p);
    }
}

}  // namespace

PrefixCovariance prefix_covariance(const SystemMatrix& a, Index i) {
    PrefixCovariance out{i, {}};
    run_recursion(a, i, [&](const Eigen::MatrixXd& p) { out.matrix = p; });
    return out;
}

GramMatrix gram(const SystemMatrix& a, Index horizon) {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    GramMatrix out{horizon, Eigen::MatrixXd::Zero(a.dim(), a.dim())};
    Index step = 0;
    run_recursion(a, horizon, [&](const Eigen::MatrixXd& p) {
        ++step;
        out.matrix += p;
        if (!out.matrix.allFinite()) throw OverflowError("non-finite Gram matrix", static_cast<std::size_t>(step));
    });
    return out;
}

double weighted_trace(const SystemMatrix& astar, const SystemMatrix& a, const Eigen::MatrixXd& g) {
    if (astar.dim() != a.dim() || g.rows() != a.dim()) {
        throw ValidationError("weighted trace: dimension mismatch");
    }
    const Eigen::MatrixXd delta = astar.matrix() - a.matrix();
    // tr(D^T D G) = sum_ij (D G)_ij D_ij
    const double value = (delta * g).cwiseProduct(delta).sum();
    if (!std::isfinite(value)) throw OverflowError("non-finite weighted trace", static_cast<std::size_t>(g.rows()));
    return value;
}

double weighted_error(const SystemMatrix& astar, const SystemMatrix& ahat, Index horizon) {
    return weighted_trace(astar, ahat, gram(astar, horizon).matrix) / static_cast<double>(horizon);
}

}  // namespace arlab
