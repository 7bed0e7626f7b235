#ifndef CHFSODP_TYPES_HPP
#define CHFSODP_TYPES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace chfsodp {

// CHF is the positive class throughout.
enum class Label { Chf, Normal };

// Case-insensitive parse ("chf", "CHF", "Normal", ...). Throws BadLabel.
Label parse_label(const std::string& text);

// Canonical spelling: "CHF" / "Normal".
const char* label_name(Label label);

// One subject's raw single-lead ECG.
struct EcgRecord {
    std::string subject_id;
    Label label = Label::Normal;
    double sampling_rate_hz = 0.0;
    std::vector<double> samples;
};

// Throws on violated invariants (fs > 0, finite samples, length >= 3).
void validate_record(const EcgRecord& record);

struct ManifestEntry {
    std::string subject_id;
    Label label = Label::Normal;
    std::string path;  // absolute, or resolved against the manifest directory
    double fs_hz = 0.0;
};

struct CohortManifest {
    std::vector<ManifestEntry> entries;
};

// A fixed-duration normalized segment of one record.
struct Window {
    std::string subject_id;
    Label label = Label::Normal;
    long window_index = 0;
    double duration_s = 0.0;
    std::vector<double> samples;  // max |samples| <= 1
};

// 16 region counts, index = (quadrant-1)*4 + (band-1); band 1 innermost.
using FeatureVector = std::array<std::uint32_t, 16>;

struct FeatureRow {
    std::string subject_id;
    long window_index = 0;
    FeatureVector features{};
    Label label = Label::Normal;
};

}  // namespace chfsodp

#endif
