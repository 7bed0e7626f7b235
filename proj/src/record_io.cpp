#include "chfsodp/record_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "chfsodp/errors.hpp"
#include "chfsodp/textio.hpp"

namespace chfsodp {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Iterate lines without copying the whole file into a stream.
template <typename Fn>
void for_each_line(const std::string& content, Fn&& fn) {
    std::size_t start = 0;
    std::size_t line_no = 1;
    while (start <= content.size()) {
        if (start == content.size()) {
            break;
        }
        std::size_t end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        fn(line_no, std::string_view(content).substr(start, end - start));
        start = end + 1;
        ++line_no;
    }
}

}  // namespace

Label parse_label(const std::string& text) {
    const std::string low = lowercase(std::string(trim(text)));
    if (low == "chf") return Label::Chf;
    if (low == "normal") return Label::Normal;
    throw BadLabel(text);
}

const char* label_name(Label label) {
    return label == Label::Chf ? "CHF" : "Normal";
}

void validate_record(const EcgRecord& record) {
    if (!(record.sampling_rate_hz > 0.0)) {
        throw Error("sampling rate must be positive for subject " + record.subject_id);
    }
    for (std::size_t i = 0; i < record.samples.size(); ++i) {
        if (!std::isfinite(record.samples[i])) throw NonFiniteSample(i);
    }
    if (record.samples.size() < 3) throw TooShort(record.samples.size());
}

CohortManifest load_manifest(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");
    CohortManifest manifest;
    std::unordered_set<std::string> seen;
    bool header_checked = false;

    for_each_line(content, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty()) return;
        const auto fields = split_csv(line);
        if (!header_checked) {
            if (fields != std::vector<std::string>{"subject_id", "label", "path", "fs_hz"}) {
                throw ParseError(path.string(), line_no,
                                 "expected header subject_id,label,path,fs_hz");
            }
            header_checked = true;
            return;
        }
        if (fields.size() != 4) {
            throw ParseError(path.string(), line_no, "expected 4 fields");
        }
        ManifestEntry entry;
        entry.subject_id = fields[0];
        if (entry.subject_id.empty()) {
            throw ParseError(path.string(), line_no, "empty subject_id");
        }
        entry.label = parse_label(fields[1]);
        std::filesystem::path sample_path(fields[2]);
        entry.path = sample_path.is_absolute() ? sample_path.string()
                                               : (base / sample_path).string();
        if (!parse_double(fields[3], entry.fs_hz) || !(entry.fs_hz > 0.0)) {
            throw ParseError(path.string(), line_no, "bad fs_hz: " + fields[3]);
        }
        if (!seen.insert(entry.subject_id).second) {
            throw DuplicateSubject(entry.subject_id);
        }
        manifest.entries.push_back(std::move(entry));
    });

    if (!header_checked) {
        throw ParseError(path.string(), 1, "missing header");
    }
    return manifest;
}

EcgRecord load_record(const ManifestEntry& entry) {
    const std::string content = read_file(entry.path);
    EcgRecord record;
    record.subject_id = entry.subject_id;
    record.label = entry.label;
    record.sampling_rate_hz = entry.fs_hz;

    bool value_column = false;
    for_each_line(content, [&](std::size_t line_no, std::string_view line) {
        const std::string_view t = trim(line);
        if (t.empty()) return;
        if (line_no == 1 && lowercase(std::string(t)) == "value") {
            value_column = true;  // CSV variant with a single `value` column
            return;
        }
        double v = 0.0;
        if (!parse_double(t, v)) {
            throw ParseError(entry.path, line_no, "bad sample: " + std::string(t));
        }
        record.samples.push_back(v);
    });
    (void)value_column;

    validate_record(record);
    return record;
}

void write_record_samples(const std::filesystem::path& path,
                          const std::vector<double>& samples) {
    std::string out;
    out.reserve(samples.size() * 12);
    for (double v : samples) {
        out += format_double(v);
        out += '\n';
    }
    write_file(path, out);
}

void write_manifest(const CohortManifest& manifest,
                    const std::filesystem::path& path) {
    std::string out = "subject_id,label,path,fs_hz\n";
    for (const auto& entry : manifest.entries) {
        out += entry.subject_id;
        out += ',';
        out += label_name(entry.label);
        out += ',';
        out += entry.path;
        out += ',';
        out += format_double(entry.fs_hz);
        out += '\n';
    }
    write_file(path, out);
}

void write_features(const std::vector<FeatureRow>& rows,
                    const std::filesystem::path& path) {
    std::string out = "subject_id,window_idx";
    for (int i = 1; i <= 16; ++i) {
        char col[8];
        std::snprintf(col, sizeof(col), ",f%02d", i);
        out += col;
    }
    out += ",label\n";
    for (const auto& row : rows) {
        out += row.subject_id;
        out += ',';
        out += std::to_string(row.window_index);
        for (std::uint32_t count : row.features) {
            out += ',';
            out += std::to_string(count);
        }
        out += ',';
        out += label_name(row.label);
        out += '\n';
    }
    write_file(path, out);
}

std::vector<FeatureRow> read_features(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    std::vector<FeatureRow> rows;
    bool header_seen = false;
    for_each_line(content, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty()) return;
        const auto fields = split_csv(line);
        if (!header_seen) {
            if (fields.size() != 19 || fields[0] != "subject_id") {
                throw ParseError(path.string(), line_no, "bad feature CSV header");
            }
            header_seen = true;
            return;
        }
        if (fields.size() != 19) {
            throw ParseError(path.string(), line_no, "expected 19 fields");
        }
        FeatureRow row;
        row.subject_id = fields[0];
        long idx = 0;
        if (!parse_long(fields[1], idx) || idx < 0) {
            throw ParseError(path.string(), line_no, "bad window_idx");
        }
        row.window_index = idx;
        for (int i = 0; i < 16; ++i) {
            long v = 0;
            if (!parse_long(fields[static_cast<std::size_t>(2 + i)], v) || v < 0) {
                throw ParseError(path.string(), line_no, "bad feature count");
            }
            row.features[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v);
        }
        row.label = parse_label(fields[18]);
        rows.push_back(std::move(row));
    });
    if (!header_seen) throw ParseError(path.string(), 1, "missing header");
    return rows;
}

}  // namespace chfsodp
