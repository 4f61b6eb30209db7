#include "arlab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "arlab/error.hpp"
#include "arlab/gram.hpp"
#include "arlab/kernels.hpp"

namespace arlab {

namespace {

void require_pair(const SystemMatrix& a, const SystemMatrix& b, Index horizon) {
    if (a.dim() != b.dim()) {
        throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
}

void require_samples(Index samples) {
    if (samples < 2) throw ValidationError("Monte-Carlo estimators need at least 2 samples");
}

template <class Transform>
DivergenceEstimate summarize(std::vector<double>& values, Transform&& f) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        values[j] = f(values[j]);
        if (!std::isfinite(values[j])) throw OverflowError("non-finite Monte-Carlo summand", j + 1);
    }
    const MeanSe s = mean_and_se(values);
    return {s.mean, s.std_error, static_cast<Index>(values.size())};
}

}  // namespace

double trace_functional(const SystemMatrix& astar, const SystemMatrix& a, Index horizon) {
    require_pair(astar, a, horizon);
    // Row i of L_A^{-1} L_{A*} carries lags 1..i-1, so the weight is G_{n-1}.
    if (horizon == 1) return 0.0;
    return weighted_trace(astar, a, gram(astar, horizon - 1).matrix);
}

double trace_functional_dense(const SystemMatrix& astar, const SystemMatrix& a, Index horizon) {
    require_pair(astar, a, horizon);
    const Eigen::MatrixXd sigma_star = dense_covariance(astar, horizon);
    const Eigen::MatrixXd inv_factor = dense_inverse_factor(a, horizon);
    const Eigen::MatrixXd precision = inv_factor.transpose() * inv_factor;
    const double nd = static_cast<double>(astar.dim() * horizon);
    // tr(S P) for symmetric S, P is the entrywise inner product.
    return sigma_star.cwiseProduct(precision).sum() - nd;
}

DivergenceEstimate kl(const SystemMatrix& a, const SystemMatrix& b, Index horizon) {
    return {0.5 * trace_functional(a, b, horizon), 0.0, 0};
}

DivergenceEstimate kl_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon, Index samples,
                         const SeedSpec& seed, int workers) {
    require_pair(a, b, horizon);
    require_samples(samples);
    auto r = log_ratio_samples(a, b, horizon, samples, seed, workers);
    return summarize(r, [](double x) { return -x; });
}

DivergenceEstimate hellinger_sq_exact(const SystemMatrix& a, const SystemMatrix& b, Index horizon) {
    require_pair(a, b, horizon);
    if (a.max_abs_diff(b) == 0.0) return {};
    const Eigen::MatrixXd mid = 0.5 * (dense_covariance(a, horizon) + dense_covariance(b, horizon));
    const Eigen::LLT<Eigen::MatrixXd> llt(mid);
    if (llt.info() != Eigen::Success) throw NumericError("(Sigma_A + Sigma_B)/2 is not numerically positive definite");
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    if (!std::isfinite(log_det)) throw NumericError("non-finite log-determinant");
    // det >= 1 in exact arithmetic; roundoff can push log_det marginally below 0.
    const double value = -std::expm1(-0.5 * std::max(log_det, 0.0));
    return {std::clamp(value, 0.0, 1.0), 0.0, 0};
}

DivergenceEstimate hellinger_sq_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon, Index samples,
                                   const SeedSpec& seed, int workers) {
    require_pair(a, b, horizon);
    require_samples(samples);
    auto r = log_ratio_samples(a, b, horizon, samples, seed, workers);
    return summarize(r, [](double x) { return 1.0 - std::exp(0.5 * x); });
}

DivergenceEstimate tv_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon, Index samples,
                         const SeedSpec& seed, int workers) {
    require_pair(a, b, horizon);
    require_samples(samples);
    auto r = log_ratio_samples(a, b, horizon, samples, seed, workers);
    // 1 - e^x <= 0 for x >= 0, so the positive part never needs e^x for large x.
    return summarize(r, [](double x) { return x >= 0.0 ? 0.0 : -std::expm1(x); });
}

DivergenceEstimate donsker_varadhan_mc(const SystemMatrix& a, const SystemMatrix& b, Index horizon,
                                       Index samples, const SeedSpec& seed, int workers) {
    require_pair(a, b, horizon);
    require_samples(samples);
    // Under P_A: F = -r_A/2 with r_A = log p_B - log p_A.
    auto under_a = log_ratio_samples(a, b, horizon, samples, child_seed(seed, 0), workers);
    const DivergenceEstimate first = summarize(under_a, [](double x) { return -0.5 * x; });
    // Under P_B: r_B = log p_A - log p_B, so exp F = exp(r_B / 2).
    auto under_b = log_ratio_samples(b, a, horizon, samples, child_seed(seed, 1), workers);
    const DivergenceEstimate second = summarize(under_b, [](double x) { return std::exp(0.5 * x); });
    if (!(second.value > 0.0)) throw NumericError("Donsker-Varadhan: non-positive moment estimate");
    const double rel = second.std_error / second.value;
    return {first.value - std::log(second.value), std::sqrt(first.std_error * first.std_error + rel * rel), samples};
}

}  // namespace arlab
