#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "arlab/format.hpp"
#include "arlab/harness.hpp"

namespace arlab::harness {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "model.truth",     "class.mode",       "class.members",          "class.center",
    "class.radius",    "class.points_per_axis", "experiment.horizons", "experiment.trials",
    "experiment.mc_samples", "experiment.base_seed", "output.path",
};

std::string shape(const Eigen::MatrixXd& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

std::optional<std::uint64_t> parse_u64(std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

// Collects errors while converting values; returns nullopt on failure.
struct Reader {
    std::vector<std::string>& errors;

    std::optional<Eigen::MatrixXd> matrix(const std::string& key, std::string_view value) {
        try {
            Eigen::MatrixXd m = parse_matrix(value);
            if (m.rows() != m.cols()) {
                errors.push_back(key + ": matrix must be square, got " + shape(m));
                return std::nullopt;
            }
            if (!m.allFinite()) {
                errors.push_back(key + ": non-finite entries");
                return std::nullopt;
            }
            return m;
        } catch (const ValidationError& e) {
            errors.push_back(key + ": " + e.what());
            return std::nullopt;
        }
    }

    std::optional<std::uint64_t> count(const std::string& key, std::string_view value, std::uint64_t min) {
        const auto v = parse_u64(value);
        if (!v || *v < min) {
            errors.push_back(key + ": expected an integer >= " + std::to_string(min) + ", got '" +
                             std::string(trim(value)) + "'");
            return std::nullopt;
        }
        return v;
    }
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : ValidationError("invalid config: " + join(errors)), errors_(std::move(errors)) {}

HypothesisClass ExperimentConfig::build_class() const {
    if (class_spec.mode == ClassMode::Explicit) return HypothesisClass(class_spec.members).with_truth(truth);
    return grid_class(*class_spec.center, class_spec.radius, class_spec.points_per_axis).with_truth(truth);
}

ExperimentConfig parse_config(std::string_view text) {
    std::vector<std::string> errors;
    std::map<std::string, std::string, std::less<>> values;

    std::string section;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const auto line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        std::string key(trim(line.substr(0, eq)));
        if (key.find('.') == std::string::npos && !section.empty()) key = section + "." + key;
        if (!kKnownKeys.contains(key)) {
            errors.push_back("unknown key '" + key + "'");
            continue;
        }
        if (values.contains(key)) {
            errors.push_back("duplicate key '" + key + "'");
            continue;
        }
        values.emplace(key, std::string(trim(line.substr(eq + 1))));
    }

    Reader read{errors};
    ExperimentConfig config;
    const auto get = [&](std::string_view key) -> const std::string* {
        const auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };

    std::optional<Eigen::MatrixXd> truth;
    if (const auto* v = get("model.truth")) {
        truth = read.matrix("model.truth", *v);
    } else {
        errors.push_back("missing required key 'model.truth'");
    }

    std::optional<ClassMode> mode;
    if (const auto* v = get("class.mode")) {
        if (*v == "grid") mode = ClassMode::Grid;
        else if (*v == "explicit") mode = ClassMode::Explicit;
        else errors.push_back("class.mode: expected 'explicit' or 'grid', got '" + *v + "'");
    } else {
        errors.push_back("missing required key 'class.mode'");
    }

    if (mode == ClassMode::Grid) {
        config.class_spec.mode = ClassMode::Grid;
        if (get("class.members")) errors.push_back("class.members is only valid with class.mode = explicit");
        if (const auto* v = get("class.center")) {
            if (auto c = read.matrix("class.center", *v)) {
                if (truth && c->rows() != truth->rows()) {
                    errors.push_back("dimension mismatch: model.truth is " + shape(*truth) + " but class.center is " +
                                     shape(*c));
                }
                config.class_spec.center = SystemMatrix(std::move(*c));
            }
        } else {
            errors.push_back("missing required key 'class.center' for class.mode = grid");
        }
        if (const auto* v = get("class.radius")) {
            try {
                config.class_spec.radius = parse_real(*v);
                if (!(config.class_spec.radius > 0.0) || !std::isfinite(config.class_spec.radius)) {
                    errors.push_back("class.radius must be a positive finite number");
                }
            } catch (const ValidationError& e) {
                errors.push_back(std::string("class.radius: ") + e.what());
            }
        } else {
            errors.push_back("missing required key 'class.radius' for class.mode = grid");
        }
        if (const auto* v = get("class.points_per_axis")) {
            if (auto k = read.count("class.points_per_axis", *v, 1)) config.class_spec.points_per_axis = static_cast<Index>(*k);
        } else {
            errors.push_back("missing required key 'class.points_per_axis' for class.mode = grid");
        }
    } else if (mode == ClassMode::Explicit) {
        config.class_spec.mode = ClassMode::Explicit;
        for (const char* key : {"class.center", "class.radius", "class.points_per_axis"}) {
            if (get(key)) errors.push_back(std::string(key) + " is only valid with class.mode = grid");
        }
        if (const auto* v = get("class.members")) {
            std::size_t i = 0;
            for (const auto part : split(*v, '|')) {
                const std::string key = "class.members[" + std::to_string(i++) + "]";
                if (auto m = read.matrix(key, part)) {
                    if (truth && m->rows() != truth->rows()) {
                        errors.push_back("dimension mismatch: model.truth is " + shape(*truth) + " but " + key +
                                         " is " + shape(*m));
                    }
                    config.class_spec.members.emplace_back(std::move(*m));
                }
            }
        } else {
            errors.push_back("missing required key 'class.members' for class.mode = explicit");
        }
    }

    if (const auto* v = get("experiment.horizons")) {
        bool ok = true;
        for (const auto part : split(*v, ',')) {
            if (auto h = read.count("experiment.horizons", part, 1)) config.horizons.push_back(static_cast<Index>(*h));
            else ok = false;
        }
        if (ok) {
            for (std::size_t i = 1; i < config.horizons.size(); ++i) {
                if (config.horizons[i] <= config.horizons[i - 1]) {
                    errors.push_back("horizons must be strictly ascending");
                    break;
                }
            }
        }
    } else {
        errors.push_back("missing required key 'experiment.horizons'");
    }
    if (const auto* v = get("experiment.trials")) {
        if (auto t = read.count("experiment.trials", *v, 1)) config.trials = static_cast<Index>(*t);
    }
    if (const auto* v = get("experiment.mc_samples")) {
        if (auto m = read.count("experiment.mc_samples", *v, 2)) config.mc_samples = static_cast<Index>(*m);
    }
    if (const auto* v = get("experiment.base_seed")) {
        if (auto s = read.count("experiment.base_seed", *v, 0)) config.base_seed = *s;
    }
    if (const auto* v = get("output.path")) config.output_path = *v;

    if (truth) config.truth = SystemMatrix(std::move(*truth));

    if (errors.empty()) {
        try {
            (void)config.build_class();
        } catch (const ValidationError& e) {
            errors.push_back(std::string("class: ") + e.what());
        }
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace arlab::harness
