#include "arlab/kernels.hpp"

#include <cmath>
#include <limits>

#include "arlab/error.hpp"
#include "kernels_common.hpp"

namespace arlab {

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

Index argmax_first(std::span<const double> log_likelihoods) {
    Index best = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < log_likelihoods.size(); ++j) {
        const double v = log_likelihoods[j];
        if (!std::isfinite(v)) continue;
        if (best < 0 || v > best_value) {
            best = static_cast<Index>(j);
            best_value = v;
        }
    }
    if (best < 0) throw NumericError("no class member has a finite log-likelihood");
    return best;
}

MeanSe mean_and_se(std::span<const double> values) {
    MeanSe out;
    if (values.empty()) return out;
    const double m = static_cast<double>(values.size());
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / m;
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (m - 1.0) / m);
    return out;
}

std::vector<double> log_ratio_samples(const SystemMatrix& a, const SystemMatrix& b, Index horizon,
                                      Index samples, const SeedSpec& seed, int workers) {
    if (a.dim() != b.dim()) throw ValidationError("log ratio: dimension mismatch");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(samples));
    parallel_for(samples, workers, [&](Index j) { out[j] = detail::log_ratio_item(a, b, horizon, seed, j); });
    return out;
}

std::vector<Index> trial_selections(const SystemMatrix& astar, std::span<const SystemMatrix> members,
                                    Index horizon, Index trials, const SeedSpec& seed, int workers) {
    std::vector<Index> out(static_cast<std::size_t>(trials));
    const int threads = resolve_workers(workers);
    Index failed = trials;
    std::exception_ptr error;
#pragma omp parallel num_threads(threads)
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (Index t = 0; t < trials; ++t) {
            try {
                out[t] = detail::selection_item(astar, members, horizon, seed, t, scratch);
            } catch (...) {
#pragma omp critical(arlab_trial_selections)
                if (t < failed) {
                    failed = t;
                    error = std::current_exception();
                }
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace arlab
