#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "arlab/divergence.hpp"
#include "arlab/format.hpp"
#include "arlab/harness.hpp"

namespace arlab::harness {

namespace {

struct GlobalFlags {
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::string output;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file '" + path + "'");
    file << text;
    if (!file) throw ValidationError("failed writing output file '" + path + "'");
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

std::string cmd_simulate(const GlobalFlags& g, const std::string& a, Index n, std::uint64_t stream) {
    const Trajectory z = simulate(SystemMatrix::parse(a), n, SeedSpec{g.seed.value_or(0), stream});
    std::ostringstream s;
    write_csv(s, z);
    return s.str();
}

std::string cmd_divergence(const GlobalFlags& g, const std::string& a_text, const std::string& b_text, Index n,
                           Index samples) {
    const SystemMatrix a = SystemMatrix::parse(a_text);
    const SystemMatrix b = SystemMatrix::parse(b_text);
    const SeedSpec seed{g.seed.value_or(0), 0};
    const double trace = trace_functional(a, b, n);
    const DivergenceEstimate k = kl(a, b, n);
    const double h2 = a.dim() * n <= kDenseCap ? hellinger_sq_exact(a, b, n).value
                                               : std::numeric_limits<double>::quiet_NaN();
    const DivergenceEstimate h2_mc = hellinger_sq_mc(a, b, n, samples, child_seed(seed, 0), g.workers);
    const DivergenceEstimate tv = tv_mc(a, b, n, samples, child_seed(seed, 1), g.workers);
    std::ostringstream s;
    s << "kl,trace_functional,hellinger_sq,hellinger_sq_mc,se_hellinger_sq_mc,tv_mc,se_tv_mc,samples\n";
    s << format_real(k.value) << ',' << format_real(trace) << ',' << format_real(h2) << ','
      << format_real(h2_mc.value) << ',' << format_real(h2_mc.std_error) << ',' << format_real(tv.value) << ','
      << format_real(tv.std_error) << ',' << samples << '\n';
    return s.str();
}

std::string cmd_mle(const std::string& traj_path, const std::string& members, const std::string& center,
                    double radius, Index points) {
    std::ifstream in(traj_path);
    if (!in) throw ValidationError("cannot open trajectory file '" + traj_path + "'");
    const Trajectory z = read_csv(in);
    const HypothesisClass hypotheses = [&] {
        if (!members.empty()) {
            std::vector<SystemMatrix> list;
            for (const auto part : split(members, '|')) list.push_back(SystemMatrix::parse(part));
            return HypothesisClass(std::move(list));
        }
        return grid_class(SystemMatrix::parse(center), radius, points);
    }();
    const MleResult r = mle_select(z, hypotheses);
    std::ostringstream s;
    s << "index,matrix,log_likelihood,selected\n";
    for (Index j = 0; j < hypotheses.size(); ++j) {
        s << j << ',' << quoted(hypotheses[j].to_string()) << ',' << format_real(r.log_likelihoods[j]) << ','
          << (j == r.index ? 1 : 0) << '\n';
    }
    return s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear AR(1) maximum-likelihood laboratory", "arlab"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--seed", g.seed, "Base seed (64-bit)");
    app.add_option("--workers", g.workers, "Worker threads (0 = all cores); never changes results")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--output", g.output, "Write output to this file instead of standard output");

    std::string a_text, b_text;
    Index horizon = 0;
    std::uint64_t stream = 0;
    auto* sim = app.add_subcommand("simulate", "Simulate z_k = A z_{k-1} + w_k; CSV k,z_1..z_d");
    sim->fallthrough();
    sim->add_option("-A,--A", a_text, "Dynamics matrix, e.g. \"0.9,0.1;0,0.8\"")->required();
    sim->add_option("-n,--n", horizon, "Horizon")->required()->check(CLI::PositiveNumber);
    sim->add_option("--stream", stream, "Stream index within the base seed");

    Index samples = 100000;
    auto* div = app.add_subcommand("divergence", "KL, trace functional, Hellinger and TV between P_A and P_B");
    div->fallthrough();
    div->add_option("-A,--A", a_text, "First dynamics matrix")->required();
    div->add_option("-B,--B", b_text, "Second dynamics matrix")->required();
    div->add_option("-n,--n", horizon, "Horizon")->required()->check(CLI::PositiveNumber);
    div->add_option("-m,--samples", samples, "Monte-Carlo samples")->check(CLI::Range(2, 1 << 30));

    std::string traj_path, members, center;
    double radius = 0.0;
    Index points = 0;
    auto* mle = app.add_subcommand("mle", "Maximum-likelihood selection over a finite class");
    mle->fallthrough();
    mle->add_option("--traj", traj_path, "Trajectory CSV (as written by simulate)")->required()->check(CLI::ExistingFile);
    auto* members_opt = mle->add_option("--members", members, "Explicit class, members separated by '|'");
    auto* center_opt = mle->add_option("--center", center, "Grid center matrix");
    mle->add_option("--radius", radius, "Grid radius")->needs(center_opt);
    mle->add_option("--points", points, "Grid points per axis")->needs(center_opt);
    members_opt->excludes(center_opt);

    std::string config_path;
    auto* verify = app.add_subcommand("verify-bound", "Monte-Carlo certification of the error bounds");
    verify->fallthrough();
    verify->add_option("config", config_path, "Experiment config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sim) {
            emit(cmd_simulate(g, a_text, horizon, stream), g.output, out);
        } else if (*div) {
            emit(cmd_divergence(g, a_text, b_text, horizon, samples), g.output, out);
        } else if (*mle) {
            if (members.empty() && center.empty()) {
                err << "arlab mle: one of --members or --center is required\n";
                return kExitUsage;
            }
            if (!center.empty() && (!(radius > 0.0) || points < 1)) {
                err << "arlab mle: --center needs --radius > 0 and --points >= 1\n";
                return kExitUsage;
            }
            emit(cmd_mle(traj_path, members, center, radius, points), g.output, out);
        } else if (*verify) {
            ExperimentConfig config = load_config(config_path);
            if (g.seed) config.base_seed = *g.seed;
            if (!g.output.empty()) config.output_path = g.output;
            const VerifyResult r = verify_bound(config, g.workers);
            emit(r.csv, config.output_path, out);
            if (r.overflow_horizons > 0) {
                err << "arlab verify-bound: numeric overflow in " << r.overflow_horizons << " horizon(s)\n";
                return kExitOverflow;
            }
            if (!r.all_hold) {
                err << "arlab verify-bound: a bound was violated beyond tolerance\n";
                return kExitBoundViolated;
            }
        }
    } catch (const ConfigError& e) {
        for (const auto& msg : e.errors()) err << "arlab: " << msg << '\n';
        return kExitValidation;
    } catch (const ValidationError& e) {
        err << "arlab: " << e.what() << '\n';
        return kExitValidation;
    } catch (const OverflowError& e) {
        err << "arlab: overflow: " << e.what() << '\n';
        return kExitOverflow;
    } catch (const NumericError& e) {
        err << "arlab: numeric failure: " << e.what() << '\n';
        return kExitOverflow;
    }
    return kExitOk;
}

}  // namespace arlab::harness
