#ifndef CHFSODP_TEXTIO_HPP
#define CHFSODP_TEXTIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chfsodp {

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double value);

// Strict double parse of a whole token ("NaN"/"inf" parse as non-finite).
// Returns false on malformed input.
bool parse_double(std::string_view token, double& out);

bool parse_long(std::string_view token, long& out);

std::string_view trim(std::string_view s);

// Split one CSV line on commas. No quoting; our formats never need it.
std::vector<std::string> split_csv(std::string_view line);

// Whole file as a string. Throws MissingFile.
std::string read_file(const std::filesystem::path& path);

// Write atomically enough for our purposes; throws IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

// FNV-1a 64-bit, used for provenance content hashes.
std::uint64_t fnv1a64(std::string_view data);

std::string hex64(std::uint64_t value);

}  // namespace chfsodp

#endif
