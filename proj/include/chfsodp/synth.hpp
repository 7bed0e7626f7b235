#ifndef CHFSODP_SYNTH_HPP
#define CHFSODP_SYNTH_HPP

#include <cstdint>
#include <filesystem>

#include "chfsodp/types.hpp"

namespace chfsodp {

// Synthetic cohort generator. Records are sums of Gaussian-bump beat
// templates at jittered R-R intervals plus drift, optional white noise and
// an optional mains sinusoid. The only class difference is the R-R jitter
// fraction; beats that follow an abnormally short or long cycle are
// rendered aberrant (widened, with an undershoot lobe), so irregularity
// shows up in the difference-plot geometry.
struct SynthSpec {
    int n_normal_subjects = 18;
    int n_chf_subjects = 15;
    double fs_hz = 256.0;
    double duration_s = 600.0;
    double heart_rate_bpm = 72.0;
    double rr_jitter_frac_normal = 0.02;
    double rr_jitter_frac_chf = 0.25;
    double beat_amp_jitter_frac = 0.03;
    double noise_std = 0.0;
    double drift_amp = 0.1;
    double drift_hz = 0.3;
    double mains_amp = 0.05;
    double mains_hz = 60.0;
    std::uint64_t seed = 1;
};

// Throws BadSpec on out-of-range fields.
void validate_spec(const SynthSpec& spec);

// Deterministic per (seed, subject_index, label). The mains term draws no
// random numbers, so records generated with and without it differ exactly
// by that sinusoid.
EcgRecord generate_record(const SynthSpec& spec, int subject_index, Label label);

// Writes per-subject sample files (synN-*/synC-*) and manifest.csv under
// the directory; returns the manifest with paths as written.
CohortManifest generate_cohort(const SynthSpec& spec,
                               const std::filesystem::path& directory);

}  // namespace chfsodp

#endif
