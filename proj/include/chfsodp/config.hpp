#ifndef CHFSODP_CONFIG_HPP
#define CHFSODP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "chfsodp/classifiers.hpp"
#include "chfsodp/preprocess.hpp"
#include "chfsodp/sodp.hpp"
#include "chfsodp/synth.hpp"

namespace chfsodp {

// Every key has a default; unknown keys are a hard error. File format is
// one `key = value` per line with `#` comments; any key can be overridden
// on the command line as `--key value` or `--key=value`.
struct RunConfig {
    std::string manifest;
    std::string output_dir = "out";
    std::string features_csv;  // empty: <output_dir>/features.csv

    double window_s = 10.0;          // one of {3, 5, 7, 10}
    long windows_per_record = 150;

    double median1_ms = 200.0;
    double median2_ms = 600.0;
    double notch_hz = 60.0;
    double notch_q = 30.0;

    std::string partition_mode = "adaptive";  // or fixed:r1,r2,r3
    std::string classifier = "lda";           // lda | nb | mlp
    std::string mlp_neurons = "9";            // 3 | 5 | 7 | 9 | all
    double mlp_lr = 0.1;
    long mlp_epochs = 2000;
    long k = 10;
    std::uint64_t seed = 1;
    bool sodp_svg = false;

    long synth_normal = 18;
    long synth_chf = 15;
    double synth_fs_hz = 256.0;
    double synth_duration_s = 600.0;
    double synth_hr_bpm = 72.0;
    double synth_rr_jitter_normal = 0.02;
    double synth_rr_jitter_chf = 0.25;
    double synth_amp_jitter = 0.03;
    double synth_noise_std = 0.0;
    double synth_drift_amp = 0.1;
    double synth_drift_hz = 0.3;
    double synth_mains_amp = 0.05;
    double synth_mains_hz = 60.0;

    FilterConfig filter_config() const;
    PartitionSpec partition_spec() const;
    ClassifierSpec classifier_spec() const;  // honors mlp_neurons unless "all"
    SynthSpec synth_spec() const;

    // Canonical `key = value` echo of every key, for provenance sidecars.
    std::string echo() const;
};

// Defaults, then the file (if non-empty), then overrides. Validates.
RunConfig load_config(const std::filesystem::path& file,
                      const std::vector<std::pair<std::string, std::string>>& overrides);

RunConfig parse_config_text(const std::string& text);

}  // namespace chfsodp

#endif
