#pragma once

#include <string>
#include <utility>
#include <vector>

#include "leakywire/config.hpp"

namespace leakywire {

/// Outcome of one experiment run: the manifest (JSON), the fixed-schema CSV
/// body, optional SVG plots, and the aggregate assertion verdict.
struct RunOutcome {
    json manifest;
    std::string csv;
    std::vector<std::pair<std::string, std::string>> svgs;  // name -> content
    bool assertions_passed = true;
};

RunOutcome run_spectrum(const RunConfig& config);
RunOutcome run_theorem2_check(const RunConfig& config);
RunOutcome run_weyl_check(const RunConfig& config);
RunOutcome run_weakfield(const RunConfig& config);
RunOutcome run_sweep(const RunConfig& config);

/// Dispatch on config.experiment.
RunOutcome run_experiment(const RunConfig& config);

/// BoundsReport for a configuration (kappa via Richardson over grid.n).
BoundsReport compute_bounds(const RunConfig& config);
json bounds_to_json(const BoundsReport& rep);

/// Writes config.json, manifest.json, results.csv and plots/*.svg atomically
/// under <out_root>/<config hash>/ and returns the run directory.
std::string write_run_dir(const std::string& out_root, const RunConfig& config,
                          const RunOutcome& outcome);

/// Output root: LEAKYWIRE_OUT env var, or "runs".
std::string default_out_root();

/// Fixed CSV schema shared by every experiment.
extern const char* kCsvHeader;

}  // namespace leakywire
