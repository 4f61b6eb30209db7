#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arlab/format.hpp"
#include "arlab/harness.hpp"

using namespace arlab;
using namespace arlab::harness;

namespace {

const char* kMinimal = R"(
[model]
truth = 0.5
[class]
mode = grid
center = 0
radius = 0.9
points_per_axis = 3
[experiment]
horizons = 50
)";

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "arlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("parse_config applies defaults") {
    const ExperimentConfig c = parse_config(kMinimal);
    CHECK(c.trials == 1000);
    CHECK(c.mc_samples == 100000);
    CHECK(c.base_seed == 0);
    CHECK(c.horizons == std::vector<Index>{50});
    CHECK(c.output_path.empty());
    CHECK(c.class_spec.mode == ClassMode::Grid);
    const HypothesisClass cls = c.build_class();
    CHECK(cls.size() == 4);
    CHECK(cls.truth_index() == 3);
}

TEST_CASE("parse_config accepts qualified keys and explicit classes") {
    const ExperimentConfig c = parse_config(
        "model.truth = 0.5,0;0,0.5\n"
        "class.mode = explicit\n"
        "class.members = 0.5,0;0,0.5 | 0,0;0,0  # two members\n"
        "experiment.horizons = 5, 9\n"
        "experiment.base_seed = 18446744073709551615\n"
        "output.path = out.csv\n");
    CHECK(c.class_spec.members.size() == 2);
    CHECK(c.build_class().truth_index() == 0);
    CHECK(c.base_seed == 18446744073709551615ULL);
    CHECK(c.output_path == "out.csv");
}

TEST_CASE("parse_config rejects non-ascending horizons") {
    std::string text = kMinimal;
    text.replace(text.find("horizons = 50"), 13, "horizons = 50, 50");
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.errors().size() == 1);
        CHECK(e.errors()[0] == "horizons must be strictly ascending");
    }
}

TEST_CASE("parse_config names both keys on a dimension mismatch and reports every error") {
    try {
        parse_config(
            "[model]\ntruth = 0.5,0;0,0.5\n[class]\nmode = grid\ncenter = 0\nradius = 1\npoints_per_axis = 2\n"
            "[experiment]\nhorizons = 10\ntrials = 0\ncolour = blue\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const auto& errs = e.errors();
        CHECK(errs.size() == 3);
        const auto has = [&](std::string_view needle) {
            return std::any_of(errs.begin(), errs.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
        };
        CHECK(has("unknown key 'experiment.colour'"));
        CHECK(has("model.truth is 2x2 but class.center is 1x1"));
        CHECK(has("experiment.trials"));
    }
}

TEST_CASE("parse_config rejects missing keys and mode-inconsistent keys") {
    CHECK_THROWS_AS(parse_config("[class]\nmode = grid\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.truth=0.5\nclass.mode=explicit\nclass.members=0.1\nclass.radius=1\n"
                                 "experiment.horizons=3\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("model.truth=0.5\nclass.mode=explicit\nclass.members=0.1|0.1\nexperiment.horizons=3\n"),
                    ConfigError);
}

TEST_CASE("report header and singleton report are pinned") {
    const ExperimentConfig c = load_config(ARLAB_SOURCE_DIR "/configs/singleton.ini");
    const VerifyResult r = verify_bound(c, 2);
    CHECK(r.csv.rfind(std::string(kReportHeader) + "\n", 0) == 0);
    CHECK(r.csv == read_file(ARLAB_SOURCE_DIR "/tests/golden/singleton_report.csv"));
    CHECK(r.all_hold);
}

TEST_CASE("verify_bound output is independent of worker count") {
    ExperimentConfig c = parse_config(kMinimal);
    c.trials = 300;
    c.horizons = {10, 30};
    const std::string one = verify_bound(c, 1).csv;
    CHECK(verify_bound(c, 8).csv == one);
    CHECK(verify_bound(c, 1).csv == one);
}

TEST_CASE("cli: help, usage and validation exit codes") {
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({"simulate", "--help"}).code == kExitOk);
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"simulate", "--A", "0.5"}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    const CliRun bad = cli({"simulate", "--A", "0.5,1", "-n", "3"});
    CHECK(bad.code == kExitValidation);
    CHECK(bad.err.find("square") != std::string::npos);
    CHECK(cli({"verify-bound", "/nonexistent/config.ini"}).code == kExitValidation);
}

TEST_CASE("cli simulate is byte-identical for the same seed") {
    const CliRun a = cli({"--seed", "5", "simulate", "--A", "0.9,0.1;0,0.8", "-n", "20"});
    const CliRun b = cli({"simulate", "--A", "0.9,0.1;0,0.8", "-n", "20", "--seed", "5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("k,z_1,z_2\n", 0) == 0);
    CHECK(cli({"--seed", "6", "simulate", "--A", "0.9,0.1;0,0.8", "-n", "20"}).out != a.out);
}

TEST_CASE("cli divergence of a law with itself is zero") {
    const CliRun r = cli({"divergence", "--A", "0.4,0.1;0,0.3", "--B", "0.4,0.1;0,0.3", "-n", "10", "-m", "100"});
    CHECK(r.code == 0);
    const auto lines = split(r.out, '\n');
    CHECK(lines[0] == "kl,trace_functional,hellinger_sq,hellinger_sq_mc,se_hellinger_sq_mc,tv_mc,se_tv_mc,samples");
    CHECK(lines[1] == "0,0,0,0,0,0,0,100");
}

TEST_CASE("cli mle selects the generating matrix on a simulated file") {
    const auto path = temp_path("arlab_mle_traj.csv");
    CHECK(cli({"--seed", "8", "--output", path.string(), "simulate", "--A", "0.5", "-n", "200"}).code == 0);
    const CliRun r = cli({"mle", "--traj", path.string(), "--members", "-0.9|0|0.5|0.9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n2,\"0.5\",") != std::string::npos);
    const auto lines = split(r.out, '\n');
    CHECK(lines[3].substr(lines[3].size() - 2) == ",1");
    CHECK(cli({"mle", "--traj", path.string()}).code == kExitUsage);
    std::filesystem::remove(path);
}

TEST_CASE("cli verify-bound exit codes") {
    const auto out = temp_path("arlab_singleton.csv");
    CHECK(cli({"--output", out.string(), "verify-bound", ARLAB_SOURCE_DIR "/configs/singleton.ini"}).code == kExitOk);
    CHECK(read_file(out) == read_file(ARLAB_SOURCE_DIR "/tests/golden/singleton_report.csv"));
    std::filesystem::remove(out);

    const CliRun overflow = cli({"verify-bound", ARLAB_SOURCE_DIR "/configs/overflow.ini"});
    CHECK(overflow.code == kExitOverflow);
    CHECK(overflow.out.find("600,overflow,") != std::string::npos);
}
