#pragma once

#include <cstdint>

namespace arlab {

/// Identifies one reproducible random stream.
struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Stream key: mix64(base_seed ^ mix64(stream_index + golden)).
constexpr std::uint64_t stream_key(const SeedSpec& s) noexcept {
    return mix64(s.base_seed ^ mix64(s.stream_index + kGolden));
}

/// Sub-stream `index` of `parent`: {stream_key(parent), index}. Used for
/// per-trial and per-sample streams so that no two work items share draws.
constexpr SeedSpec child_seed(const SeedSpec& parent, std::uint64_t index) noexcept {
    return SeedSpec{stream_key(parent), index};
}

/// Counter-based generator. Word i (0-based) of a stream is
/// mix64(key + (i + 1) * golden), i.e. the SplitMix64 sequence started at the
/// stream key. Normals come from Box-Muller on pairs of 53-bit uniforms in
/// (0, 1]; both outputs of a pair are used (cos first, then sin).
class CounterRng {
public:
    explicit CounterRng(const SeedSpec& seed) noexcept : key_(stream_key(seed)) {}

    std::uint64_t next_u64() noexcept {
        ++counter_;
        return mix64(key_ + counter_ * kGolden);
    }

    /// Uniform on (0, 1].
    double uniform() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace arlab
