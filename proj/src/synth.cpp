#include "chfsodp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "chfsodp/errors.hpp"
#include "chfsodp/record_io.hpp"
#include "chfsodp/rng.hpp"

namespace chfsodp {

namespace {

// Fixed beat morphology. The template is P + QRS + T Gaussian bumps; the
// broad P/T lobes keep the interbeat segments sloped, which pins their
// difference-plot quadrants instead of leaving them to numeric noise.
constexpr double kQrsWidthS = 0.024;
constexpr double kPAmp = 0.12, kPOffsetS = -0.20, kPWidthS = 0.05;
constexpr double kTAmp = 0.28, kTOffsetS = 0.24, kTWidthS = 0.08;

// Aberrancy response to the deviation of the preceding R-R interval from
// the base interval: saturating, so a 2% jitter leaves beats untouched
// while a 25% jitter renders most beats fully aberrant.
constexpr double kDevSaturation = 0.1;
constexpr double kUndershootMax = 0.5;   // fraction of the QRS amplitude
constexpr double kWidenMax = 1.5;        // extra QRS width at saturation
constexpr double kUndershootOffsetQrs = 1.8;
constexpr double kUndershootWidthQrs = 1.1;

// Beat strength follows the filling time of the preceding cycle.
constexpr double kAmpRrExponent = 1.0;

struct Beat {
    double time_s;
    double amplitude;
    double undershoot;
    double qrs_width_s;
};

void add_bump(std::vector<double>& x, double fs, double center_s, double amp,
              double width_s) {
    if (amp == 0.0) return;
    const double span_s = 8.0 * width_s;
    const long n = static_cast<long>(x.size());
    long i0 = static_cast<long>(std::floor((center_s - span_s) * fs));
    long i1 = static_cast<long>(std::ceil((center_s + span_s) * fs));
    i0 = std::max(i0, 0L);
    i1 = std::min(i1, n - 1);
    for (long i = i0; i <= i1; ++i) {
        const double dt = static_cast<double>(i) / fs - center_s;
        x[static_cast<std::size_t>(i)] +=
            amp * std::exp(-dt * dt / (2.0 * width_s * width_s));
    }
}

}  // namespace

void validate_spec(const SynthSpec& spec) {
    if (spec.n_normal_subjects < 0 || spec.n_chf_subjects < 0) {
        throw BadSpec("subject counts must be non-negative");
    }
    if (!(spec.fs_hz > 0.0)) throw BadSpec("fs_hz must be positive");
    if (!(spec.duration_s > 0.0)) throw BadSpec("duration_s must be positive");
    if (!(spec.heart_rate_bpm > 0.0)) throw BadSpec("heart_rate_bpm must be positive");
    for (double frac : {spec.rr_jitter_frac_normal, spec.rr_jitter_frac_chf,
                        spec.beat_amp_jitter_frac}) {
        if (frac < 0.0 || frac > 1.0) throw BadSpec("fractions must be in [0, 1]");
    }
    if (spec.noise_std < 0.0 || spec.drift_amp < 0.0 || spec.mains_amp < 0.0) {
        throw BadSpec("amplitudes must be non-negative");
    }
}

EcgRecord generate_record(const SynthSpec& spec, int subject_index, Label label) {
    validate_spec(spec);
    const bool chf = label == Label::Chf;
    Rng rng(derive_seed(spec.seed,
                        static_cast<std::uint64_t>(subject_index) * 2 + (chf ? 1 : 0)));

    const double jitter =
        chf ? spec.rr_jitter_frac_chf : spec.rr_jitter_frac_normal;
    const double rr_base = 60.0 / spec.heart_rate_bpm;
    const double drift_phase = rng.uniform(0.0, 2.0 * M_PI);

    std::vector<Beat> beats;
    double t = rr_base * 0.5;
    double prev_rr = rr_base;
    while (t < spec.duration_s + rr_base) {
        Beat beat;
        beat.time_s = t;
        beat.amplitude = 1.0 + spec.beat_amp_jitter_frac * rng.gaussian();
        beat.amplitude *= std::pow(std::clamp(prev_rr / rr_base, 0.5, 1.5),
                                   kAmpRrExponent);

        const double dev = std::fabs(prev_rr / rr_base - 1.0);
        const double sat =
            1.0 - std::exp(-(dev / kDevSaturation) * (dev / kDevSaturation));
        beat.undershoot = kUndershootMax * sat;
        beat.qrs_width_s = kQrsWidthS * (1.0 + kWidenMax * sat);
        beats.push_back(beat);

        double rr = rr_base * (1.0 + jitter * rng.gaussian());
        rr = std::clamp(rr, 0.4 * rr_base, 1.8 * rr_base);
        prev_rr = rr;
        t += rr;
    }

    const std::size_t n =
        static_cast<std::size_t>(std::llround(spec.duration_s * spec.fs_hz));
    std::vector<double> x(n, 0.0);

    if (spec.drift_amp > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ti = static_cast<double>(i) / spec.fs_hz;
            x[i] = spec.drift_amp *
                   std::sin(2.0 * M_PI * spec.drift_hz * ti + drift_phase);
        }
    }

    for (const Beat& beat : beats) {
        add_bump(x, spec.fs_hz, beat.time_s, beat.amplitude, beat.qrs_width_s);
        if (beat.undershoot > 0.0) {
            add_bump(x, spec.fs_hz,
                     beat.time_s + kUndershootOffsetQrs * beat.qrs_width_s,
                     -beat.undershoot * beat.amplitude,
                     kUndershootWidthQrs * beat.qrs_width_s);
        }
        add_bump(x, spec.fs_hz, beat.time_s + kPOffsetS,
                 kPAmp * beat.amplitude, kPWidthS);
        add_bump(x, spec.fs_hz, beat.time_s + kTOffsetS,
                 kTAmp * beat.amplitude, kTWidthS);
    }

    // Mains uses no random draws: a record with mains_amp = 0 differs from
    // the same record with mains on by exactly this sinusoid.
    if (spec.mains_amp > 0.0) {
        const double phase =
            std::fmod(0.61803398874989485 * (subject_index + 1), 1.0) * 2.0 * M_PI;
        for (std::size_t i = 0; i < n; ++i) {
            const double ti = static_cast<double>(i) / spec.fs_hz;
            x[i] += spec.mains_amp *
                    std::sin(2.0 * M_PI * spec.mains_hz * ti + phase);
        }
    }

    if (spec.noise_std > 0.0) {
        for (double& v : x) v += spec.noise_std * rng.gaussian();
    }

    EcgRecord record;
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%02d", chf ? "synC" : "synN",
                  subject_index + 1);
    record.subject_id = id;
    record.label = label;
    record.sampling_rate_hz = spec.fs_hz;
    record.samples = std::move(x);
    validate_record(record);
    return record;
}

CohortManifest generate_cohort(const SynthSpec& spec,
                               const std::filesystem::path& directory) {
    validate_spec(spec);
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory: " + directory.string());

    CohortManifest manifest;
    auto emit = [&](int index, Label label) {
        const EcgRecord record = generate_record(spec, index, label);
        const std::string filename = record.subject_id + ".txt";
        write_record_samples(directory / filename, record.samples);
        ManifestEntry entry;
        entry.subject_id = record.subject_id;
        entry.label = label;
        entry.path = filename;  // relative to the manifest
        entry.fs_hz = spec.fs_hz;
        manifest.entries.push_back(std::move(entry));
    };

    for (int i = 0; i < spec.n_chf_subjects; ++i) emit(i, Label::Chf);
    for (int i = 0; i < spec.n_normal_subjects; ++i) emit(i, Label::Normal);

    write_manifest(manifest, directory / "manifest.csv");

    // The file keeps relative paths; the returned manifest gets usable ones.
    for (auto& entry : manifest.entries) {
        entry.path = (directory / entry.path).string();
    }
    return manifest;
}

}  // namespace chfsodp
