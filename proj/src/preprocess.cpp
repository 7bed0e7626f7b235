#include "chfsodp/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "chfsodp/errors.hpp"

namespace chfsodp {

namespace {

// Second-order IIR section, direct form II transposed.
struct Biquad {
    double b0, b1, b2;  // numerator
    double a1, a2;      // denominator (a0 normalized to 1)
};

Biquad design_notch(double fs_hz, double notch_hz, double q) {
    const double w0 = 2.0 * M_PI * notch_hz / fs_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad s{};
    s.b0 = 1.0 / a0;
    s.b1 = -2.0 * std::cos(w0) / a0;
    s.b2 = 1.0 / a0;
    s.a1 = -2.0 * std::cos(w0) / a0;
    s.a2 = (1.0 - alpha) / a0;
    return s;
}

void run_biquad(const Biquad& s, std::span<const double> x, std::vector<double>& y,
                double z1_init, double z2_init) {
    y.resize(x.size());
    double z1 = z1_init, z2 = z2_init;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double out = s.b0 * x[i] + z1;
        z1 = s.b1 * x[i] - s.a1 * out + z2;
        z2 = s.b2 * x[i] - s.a2 * out;
        y[i] = out;
    }
}

// Steady-state filter state for a unit step input, so constant signals pass
// through without a start-up transient.
void step_state(const Biquad& s, double& z1, double& z2) {
    const double dc_gain = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    z1 = dc_gain - s.b0;
    z2 = s.b2 - s.a2 * dc_gain;
}

}  // namespace

std::vector<double> median_filter(std::span<const double> signal,
                                  std::size_t width_samples) {
    if (width_samples % 2 == 0) throw WidthEven(width_samples);
    if (width_samples > signal.size()) {
        throw WidthTooLarge(width_samples, signal.size());
    }

    const std::size_t n = signal.size();
    const std::size_t half = width_samples / 2;

    // Replicated-edge padding, then a sliding sorted window.
    std::vector<double> padded;
    padded.reserve(n + 2 * half);
    padded.insert(padded.end(), half, signal.front());
    padded.insert(padded.end(), signal.begin(), signal.end());
    padded.insert(padded.end(), half, signal.back());

    std::vector<double> window(padded.begin(),
                               padded.begin() + static_cast<long>(width_samples));
    std::sort(window.begin(), window.end());

    std::vector<double> out(n);
    out[0] = window[half];
    for (std::size_t i = 1; i < n; ++i) {
        const double leaving = padded[i - 1];
        const double entering = padded[i - 1 + width_samples];
        window.erase(std::lower_bound(window.begin(), window.end(), leaving));
        window.insert(std::upper_bound(window.begin(), window.end(), entering),
                      entering);
        out[i] = window[half];
    }
    return out;
}

std::size_t odd_width_for_ms(double ms, double fs_hz) {
    const double target = ms * fs_hz / 1000.0;
    long k = std::lround((target - 1.0) / 2.0);
    if (k < 0) k = 0;
    return static_cast<std::size_t>(2 * k + 1);
}

EcgRecord remove_baseline(const EcgRecord& record, const FilterConfig& cfg) {
    const std::size_t w1 = odd_width_for_ms(cfg.median1_ms, record.sampling_rate_hz);
    const std::size_t w2 = odd_width_for_ms(cfg.median2_ms, record.sampling_rate_hz);
    const std::vector<double> stage1 = median_filter(record.samples, w1);
    const std::vector<double> baseline = median_filter(stage1, w2);

    EcgRecord out = record;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] -= baseline[i];
    }
    return out;
}

std::vector<double> notch_filter(std::span<const double> signal, double fs_hz,
                                 double notch_hz, double q) {
    if (!(notch_hz > 0.0) || !(notch_hz < fs_hz / 2.0)) {
        throw FrequencyOutOfRange(notch_hz, fs_hz);
    }
    if (signal.empty()) return {};

    const Biquad s = design_notch(fs_hz, notch_hz, q);
    const std::size_t n = signal.size();

    // Odd-symmetric edge extension long enough for the notch transient
    // (pole radius sets the decay time constant).
    const double pole_radius = std::sqrt(std::max(s.a2, 0.0));
    std::size_t padlen = static_cast<std::size_t>(
        std::ceil(12.0 / std::max(1.0 - pole_radius, 1e-6)));
    padlen = std::min(padlen, n - 1);

    std::vector<double> ext;
    ext.reserve(n + 2 * padlen);
    for (std::size_t i = padlen; i >= 1; --i) {
        ext.push_back(2.0 * signal[0] - signal[i]);
    }
    ext.insert(ext.end(), signal.begin(), signal.end());
    for (std::size_t i = 1; i <= padlen; ++i) {
        ext.push_back(2.0 * signal[n - 1] - signal[n - 1 - i]);
    }

    double z1 = 0.0, z2 = 0.0;
    step_state(s, z1, z2);

    std::vector<double> fwd;
    run_biquad(s, ext, fwd, z1 * ext.front(), z2 * ext.front());
    std::reverse(fwd.begin(), fwd.end());
    std::vector<double> bwd;
    run_biquad(s, fwd, bwd, z1 * fwd.front(), z2 * fwd.front());
    std::reverse(bwd.begin(), bwd.end());

    return std::vector<double>(bwd.begin() + static_cast<long>(padlen),
                               bwd.begin() + static_cast<long>(padlen + n));
}

std::vector<double> normalize_window(std::span<const double> samples) {
    double max_abs = 0.0;
    for (double v : samples) max_abs = std::max(max_abs, std::fabs(v));
    std::vector<double> out(samples.begin(), samples.end());
    if (max_abs == 0.0) return out;
    for (double& v : out) v /= max_abs;
    return out;
}

std::vector<Window> segment_windows(const EcgRecord& record, double duration_s,
                                    std::size_t count) {
    const std::size_t window_len = static_cast<std::size_t>(
        std::llround(duration_s * record.sampling_rate_hz));
    if (window_len < 3) {
        throw Error("window of " + std::to_string(window_len) +
                    " samples is too short");
    }
    const std::size_t needed = window_len * count;
    if (record.samples.size() < needed) {
        throw RecordTooShort(needed, record.samples.size());
    }

    std::vector<Window> windows;
    windows.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        Window win;
        win.subject_id = record.subject_id;
        win.label = record.label;
        win.window_index = static_cast<long>(w);
        win.duration_s = duration_s;
        const auto begin = record.samples.begin() + static_cast<long>(w * window_len);
        win.samples = normalize_window(
            std::span<const double>(&*begin, window_len));
        windows.push_back(std::move(win));
    }
    return windows;
}

EcgRecord preprocess_record(const EcgRecord& record, const FilterConfig& cfg) {
    EcgRecord out = remove_baseline(record, cfg);
    out.samples = notch_filter(out.samples, out.sampling_rate_hz, cfg.notch_hz,
                               cfg.notch_q);
    return out;
}

}  // namespace chfsodp
