#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arlab/ar_model.hpp"
#include "arlab/error.hpp"
#include "arlab/inference.hpp"

namespace arlab::harness {

enum class ClassMode { Explicit, Grid };

struct ClassSpec {
    ClassMode mode = ClassMode::Grid;
    std::vector<SystemMatrix> members;  // explicit mode
    std::optional<SystemMatrix> center;  // grid mode
    double radius = 0.0;
    Index points_per_axis = 0;
};

struct ExperimentConfig {
    SystemMatrix truth = SystemMatrix::zero(1);
    ClassSpec class_spec;
    std::vector<Index> horizons;
    Index trials = 1000;
    std::uint64_t base_seed = 0;
    Index mc_samples = 100000;
    std::string output_path;  // empty: standard output

    /// Class from class_spec with the truth injected (appended if absent).
    HypothesisClass build_class() const;
};

/// All validation failures of one document, in input order.
class ConfigError : public ValidationError {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// Flat key-value document with [model], [class], [experiment], [output]
/// sections (or fully qualified `section.key = value` lines). '#' starts a comment.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Header of the verify-bound report.
inline constexpr std::string_view kReportHeader = "n,quantity,value";

struct VerifyResult {
    std::string csv;
    bool all_hold = true;
    Index overflow_horizons = 0;
};

/// Stream for horizon index h: SeedSpec{base_seed, h}; trial t then draws from
/// child_seed(SeedSpec{base_seed, h}, t).
SeedSpec horizon_seed(std::uint64_t base_seed, std::size_t horizon_index);

/// run_trials + both certificates for every horizon, rendered as CSV rows.
VerifyResult verify_bound(const ExperimentConfig& config, int workers);

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitOverflow = 3;
inline constexpr int kExitBoundViolated = 4;

/// Entry point of the `arlab` command-line tool. Output that would go to
/// standard output is written to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arlab::harness
