#ifndef CHFSODP_PREPROCESS_HPP
#define CHFSODP_PREPROCESS_HPP

#include <span>
#include <vector>

#include "chfsodp/types.hpp"

namespace chfsodp {

struct FilterConfig {
    double median1_ms = 200.0;
    double median2_ms = 600.0;
    double notch_hz = 60.0;
    double notch_q = 30.0;
};

// Centered running median with edge replication; width must be odd and
// no longer than the signal.
std::vector<double> median_filter(std::span<const double> signal,
                                  std::size_t width_samples);

// Nearest odd sample count for a duration in milliseconds (minimum 1).
std::size_t odd_width_for_ms(double ms, double fs_hz);

// Cascaded median baseline estimate subtracted from the signal.
EcgRecord remove_baseline(const EcgRecord& record, const FilterConfig& cfg);

// Second-order recursive notch applied forward and backward (zero phase).
// Bandwidth is notch_hz / q at -3 dB.
std::vector<double> notch_filter(std::span<const double> signal, double fs_hz,
                                 double notch_hz, double q);

// Divide by max |samples|; an all-zero input is returned unchanged.
std::vector<double> normalize_window(std::span<const double> samples);

// First `count` consecutive non-overlapping windows from the start of the
// record, each normalized. Window length is round(duration_s * fs).
std::vector<Window> segment_windows(const EcgRecord& record, double duration_s,
                                    std::size_t count);

// remove_baseline followed by the notch; the standard front end.
EcgRecord preprocess_record(const EcgRecord& record, const FilterConfig& cfg);

}  // namespace chfsodp

#endif
