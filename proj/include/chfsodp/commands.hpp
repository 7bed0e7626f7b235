#ifndef CHFSODP_COMMANDS_HPP
#define CHFSODP_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "chfsodp/config.hpp"
#include "chfsodp/types.hpp"
#include "chfsodp/validation.hpp"

namespace chfsodp {

// Full front end for one manifest: load, filter, window, extract. Row
// order follows the manifest.
std::vector<FeatureRow> compute_feature_rows(const RunConfig& config);

// Writes the synthetic cohort under output_dir.
CohortManifest cmd_synth(const RunConfig& config);

// Writes features.csv (+ provenance sidecar); returns the CSV path.
std::filesystem::path cmd_features(const RunConfig& config);

// Metrics CSV to `out` and to disk. With classifier=mlp and
// mlp_neurons=all, sweeps {3,5,7,9} and appends an average row.
void cmd_eval_kfold(const RunConfig& config, std::ostream& out);

// Per-subject CSV to `out` and disk, plus a summary file and a summary
// line on the diagnostic stream.
LosoResult cmd_eval_loso(const RunConfig& config, std::ostream& out);

// Point CSV for one window of one subject, plus radii/counts summary and
// an optional SVG scatter.
void cmd_sodp_plot(const RunConfig& config, const std::string& subject_id,
                   long window_index, std::ostream& out);

// Argument vector is everything after the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace chfsodp

#endif
