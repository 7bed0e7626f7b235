#ifndef CHFSODP_RECORD_IO_HPP
#define CHFSODP_RECORD_IO_HPP

#include <filesystem>
#include <vector>

#include "chfsodp/types.hpp"

namespace chfsodp {

// Manifest CSV with header `subject_id,label,path,fs_hz`. Relative sample
// paths are resolved against the manifest's directory. Entry order is
// preserved; it drives every downstream per-subject enumeration.
CohortManifest load_manifest(const std::filesystem::path& path);

// Sample file: one decimal value per line, or CSV with a `value` column.
EcgRecord load_record(const ManifestEntry& entry);

// One value per line, shortest round-trip formatting.
void write_record_samples(const std::filesystem::path& path,
                          const std::vector<double>& samples);

void write_manifest(const CohortManifest& manifest,
                    const std::filesystem::path& path);

// Feature CSV with header `subject_id,window_idx,f01..f16,label`.
void write_features(const std::vector<FeatureRow>& rows,
                    const std::filesystem::path& path);

std::vector<FeatureRow> read_features(const std::filesystem::path& path);

}  // namespace chfsodp

#endif
