#include <sstream>

#include "arlab/format.hpp"
#include "arlab/harness.hpp"

namespace arlab::harness {

namespace {

class ReportWriter {
public:
    ReportWriter() { out_ << kReportHeader << '\n'; }

    void text(std::string_view n, std::string_view quantity, std::string_view value) {
        out_ << n << ',' << quantity << ',' << value << '\n';
    }
    void real(std::string_view n, std::string_view quantity, double value) { text(n, quantity, format_real(value)); }
    void flag(std::string_view n, std::string_view quantity, bool value) { text(n, quantity, value ? "1" : "0"); }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

}  // namespace

SeedSpec horizon_seed(std::uint64_t base_seed, std::size_t horizon_index) {
    return SeedSpec{base_seed, static_cast<std::uint64_t>(horizon_index)};
}

VerifyResult verify_bound(const ExperimentConfig& config, int workers) {
    const HypothesisClass hypotheses = config.build_class();
    ReportWriter w;
    w.text("meta", "mi_estimator", "plugin_selection_entropy");
    w.text("meta", "mi_estimator_bias", "plugin_entropy_underestimates_mi_so_rhs_mi_may_be_underreported");
    w.real("meta", "class_size", static_cast<double>(hypotheses.size()));
    w.real("meta", "truth_index", static_cast<double>(*hypotheses.truth_index()));
    w.text("meta", "base_seed", std::to_string(config.base_seed));
    w.real("meta", "trials", static_cast<double>(config.trials));
    w.real("meta", "error_bound_constant", kErrorBoundConstant);
    w.real("meta", "cert_sigmas", kCertSigmas);

    VerifyResult result;
    TrialOptions options;
    options.workers = workers;
    options.hellinger_mc_samples = config.mc_samples;

    for (std::size_t h = 0; h < config.horizons.size(); ++h) {
        const Index horizon = config.horizons[h];
        const std::string n = std::to_string(horizon);
        TrialSummary summary;
        try {
            summary = run_trials(config.truth, hypotheses, horizon, config.trials,
                                 horizon_seed(config.base_seed, h), options);
        } catch (const OverflowError& e) {
            w.real(n, "overflow", static_cast<double>(e.step()));
            ++result.overflow_horizons;
            continue;
        }
        const BoundReport t1 = error_bound_certificate(summary, hypotheses);
        const HellingerChainReport t2 = hellinger_chain_certificate(summary);

        w.real(n, "lhs", t1.lhs);
        w.real(n, "se_lhs", t1.se_lhs);
        w.real(n, "mi_estimate", t1.mi_estimate);
        w.real(n, "se_mi", t1.se_mi);
        w.real(n, "rhs_mi", t1.rhs_mi);
        w.real(n, "rhs_log_card", t1.rhs_log_card);
        w.flag(n, "holds_mi", t1.holds_mi);
        w.flag(n, "holds_log_card", t1.holds_log_card);
        w.real(n, "slack_ratio", t1.slack_ratio);
        w.real(n, "e_h2", t2.e_h2);
        w.real(n, "se_e_h2", t2.se_e_h2);
        w.real(n, "middle_term", t2.middle_term);
        w.real(n, "rhs_hellinger", t2.rhs);
        w.flag(n, "holds_hellinger", t2.holds());
        w.flag(n, "hellinger_sampled", summary.hellinger_sampled);
        w.real(n, "misselection_rate", summary.misselection_rate);
        for (std::size_t j = 0; j < summary.selection_counts.size(); ++j) {
            w.real(n, "freq_" + std::to_string(j),
                   static_cast<double>(summary.selection_counts[j]) / static_cast<double>(summary.trials));
        }
        result.all_hold = result.all_hold && t1.holds_mi && t1.holds_log_card && t2.holds();
    }
    w.real("all", "overflow_horizons", static_cast<double>(result.overflow_horizons));
    w.flag("all", "all_bounds_hold", result.all_hold);
    result.csv = w.str();
    return result;
}

}  // namespace arlab::harness
