#include "arlab/error.hpp"
#include "arlab/kernels.hpp"
#include "kernels_common.hpp"

namespace arlab::reference {

std::vector<double> log_ratio_samples(const SystemMatrix& a, const SystemMatrix& b, Index horizon,
                                      Index samples, const SeedSpec& seed) {
    if (a.dim() != b.dim()) throw ValidationError("log ratio: dimension mismatch");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (Index j = 0; j < samples; ++j) out.push_back(detail::log_ratio_item(a, b, horizon, seed, j));
    return out;
}

std::vector<Index> trial_selections(const SystemMatrix& astar, std::span<const SystemMatrix> members,
                                    Index horizon, Index trials, const SeedSpec& seed) {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(trials));
    std::vector<double> scratch;
    for (Index t = 0; t < trials; ++t) out.push_back(detail::selection_item(astar, members, horizon, seed, t, scratch));
    return out;
}

}  // namespace arlab::reference
