#include "chfsodp/config.hpp"

#include <algorithm>
#include <functional>

#include "chfsodp/errors.hpp"
#include "chfsodp/textio.hpp"

namespace chfsodp {

namespace {

struct KeyBinding {
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

void set_double(double& field, const std::string& key, const std::string& value) {
    if (!parse_double(value, field)) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

void set_long(long& field, const std::string& key, const std::string& value) {
    if (!parse_long(value, field)) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

void set_bool(bool& field, const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") {
        field = true;
    } else if (value == "false" || value == "0") {
        field = false;
    } else {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

const std::map<std::string, KeyBinding>& registry() {
    static const std::map<std::string, KeyBinding> keys = [] {
        std::map<std::string, KeyBinding> m;
        auto str = [&m](const std::string& key, std::string RunConfig::*field) {
            m[key] = {[field](RunConfig& c, const std::string& v) { c.*field = v; },
                      [field](const RunConfig& c) { return c.*field; }};
        };
        auto dbl = [&m](const std::string& key, double RunConfig::*field) {
            m[key] = {[field, key](RunConfig& c, const std::string& v) {
                          set_double(c.*field, key, v);
                      },
                      [field](const RunConfig& c) { return format_double(c.*field); }};
        };
        auto lng = [&m](const std::string& key, long RunConfig::*field) {
            m[key] = {[field, key](RunConfig& c, const std::string& v) {
                          set_long(c.*field, key, v);
                      },
                      [field](const RunConfig& c) { return std::to_string(c.*field); }};
        };
        str("manifest", &RunConfig::manifest);
        str("output_dir", &RunConfig::output_dir);
        str("features_csv", &RunConfig::features_csv);
        dbl("window_s", &RunConfig::window_s);
        lng("windows_per_record", &RunConfig::windows_per_record);
        dbl("median1_ms", &RunConfig::median1_ms);
        dbl("median2_ms", &RunConfig::median2_ms);
        dbl("notch_hz", &RunConfig::notch_hz);
        dbl("notch_q", &RunConfig::notch_q);
        str("partition_mode", &RunConfig::partition_mode);
        str("classifier", &RunConfig::classifier);
        str("mlp_neurons", &RunConfig::mlp_neurons);
        dbl("mlp_lr", &RunConfig::mlp_lr);
        lng("mlp_epochs", &RunConfig::mlp_epochs);
        lng("k", &RunConfig::k);
        m["seed"] = {[](RunConfig& c, const std::string& v) {
                         long s = 0;
                         if (!parse_long(v, s) || s < 0) {
                             throw ConfigError("bad value for seed: " + v);
                         }
                         c.seed = static_cast<std::uint64_t>(s);
                     },
                     [](const RunConfig& c) { return std::to_string(c.seed); }};
        m["sodp_svg"] = {[](RunConfig& c, const std::string& v) {
                             set_bool(c.sodp_svg, "sodp_svg", v);
                         },
                         [](const RunConfig& c) {
                             return std::string(c.sodp_svg ? "true" : "false");
                         }};
        lng("synth_normal", &RunConfig::synth_normal);
        lng("synth_chf", &RunConfig::synth_chf);
        dbl("synth_fs_hz", &RunConfig::synth_fs_hz);
        dbl("synth_duration_s", &RunConfig::synth_duration_s);
        dbl("synth_hr_bpm", &RunConfig::synth_hr_bpm);
        dbl("synth_rr_jitter_normal", &RunConfig::synth_rr_jitter_normal);
        dbl("synth_rr_jitter_chf", &RunConfig::synth_rr_jitter_chf);
        dbl("synth_amp_jitter", &RunConfig::synth_amp_jitter);
        dbl("synth_noise_std", &RunConfig::synth_noise_std);
        dbl("synth_drift_amp", &RunConfig::synth_drift_amp);
        dbl("synth_drift_hz", &RunConfig::synth_drift_hz);
        dbl("synth_mains_amp", &RunConfig::synth_mains_amp);
        dbl("synth_mains_hz", &RunConfig::synth_mains_hz);
        return m;
    }();
    return keys;
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
    const auto it = registry().find(key);
    if (it == registry().end()) throw ConfigError("unknown config key: " + key);
    it->second.set(config, value);
}

void validate(const RunConfig& config) {
    const double w = config.window_s;
    if (w != 3.0 && w != 5.0 && w != 7.0 && w != 10.0) {
        throw ConfigError("window_s must be one of {3, 5, 7, 10}");
    }
    if (config.windows_per_record < 1) {
        throw ConfigError("windows_per_record must be >= 1");
    }
    if (!(config.median1_ms > 0.0) || !(config.median2_ms > 0.0) ||
        !(config.median1_ms < config.median2_ms)) {
        throw ConfigError("need 0 < median1_ms < median2_ms");
    }
    if (!(config.notch_hz > 0.0) || !(config.notch_q > 0.0)) {
        throw ConfigError("notch_hz and notch_q must be positive");
    }
    parse_classifier_kind(config.classifier);
    if (config.mlp_neurons != "all") {
        const std::string& n = config.mlp_neurons;
        if (n != "3" && n != "5" && n != "7" && n != "9") {
            throw ConfigError("mlp_neurons must be one of {3, 5, 7, 9, all}");
        }
    }
    if (!(config.mlp_lr > 0.0)) throw ConfigError("mlp_lr must be positive");
    if (config.mlp_epochs < 0) throw ConfigError("mlp_epochs must be >= 0");
    if (config.k < 2) throw BadK("k must be >= 2, got " + std::to_string(config.k));
    config.partition_spec();  // validates the radii
}

}  // namespace

FilterConfig RunConfig::filter_config() const {
    return FilterConfig{median1_ms, median2_ms, notch_hz, notch_q};
}

PartitionSpec RunConfig::partition_spec() const {
    if (partition_mode == "adaptive") return PartitionSpec::adaptive();
    if (partition_mode.rfind("fixed:", 0) == 0) {
        const auto parts = split_csv(partition_mode.substr(6));
        double r1 = 0.0, r2 = 0.0, r3 = 0.0;
        if (parts.size() != 3 || !parse_double(parts[0], r1) ||
            !parse_double(parts[1], r2) || !parse_double(parts[2], r3)) {
            throw ConfigError("partition_mode fixed needs three radii");
        }
        if (!(0.0 < r1 && r1 < r2 && r2 < r3)) {
            throw ConfigError("fixed radii must satisfy 0 < r1 < r2 < r3");
        }
        return PartitionSpec::fixed_radii(r1, r2, r3);
    }
    throw ConfigError("partition_mode must be adaptive or fixed:r1,r2,r3");
}

ClassifierSpec RunConfig::classifier_spec() const {
    ClassifierSpec spec;
    spec.kind = parse_classifier_kind(classifier);
    if (mlp_neurons != "all") {
        spec.mlp_hidden = static_cast<int>(std::stol(mlp_neurons));
    }
    spec.mlp_lr = mlp_lr;
    spec.mlp_epochs = static_cast<int>(mlp_epochs);
    spec.seed = seed;
    return spec;
}

SynthSpec RunConfig::synth_spec() const {
    SynthSpec spec;
    spec.n_normal_subjects = static_cast<int>(synth_normal);
    spec.n_chf_subjects = static_cast<int>(synth_chf);
    spec.fs_hz = synth_fs_hz;
    spec.duration_s = synth_duration_s;
    spec.heart_rate_bpm = synth_hr_bpm;
    spec.rr_jitter_frac_normal = synth_rr_jitter_normal;
    spec.rr_jitter_frac_chf = synth_rr_jitter_chf;
    spec.beat_amp_jitter_frac = synth_amp_jitter;
    spec.noise_std = synth_noise_std;
    spec.drift_amp = synth_drift_amp;
    spec.drift_hz = synth_drift_hz;
    spec.mains_amp = synth_mains_amp;
    spec.mains_hz = synth_mains_hz;
    spec.seed = seed;
    return spec;
}

std::string RunConfig::echo() const {
    std::string out;
    for (const auto& [key, binding] : registry()) {
        out += key;
        out += " = ";
        out += binding.get(*this);
        out += '\n';
    }
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        ++line_no;
        std::string_view line = std::string_view(text).substr(start, end - start);
        start = end + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        apply_key(config, key, value);
    }
    return config;
}

RunConfig load_config(
    const std::filesystem::path& file,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
    RunConfig config;
    if (!file.empty()) {
        config = parse_config_text(read_file(file));
    }
    for (const auto& [key, value] : overrides) {
        apply_key(config, key, value);
    }
    validate(config);
    return config;
}

}  // namespace chfsodp
