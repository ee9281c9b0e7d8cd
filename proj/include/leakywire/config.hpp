#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "leakywire/bounds.hpp"
#include "leakywire/eigensolve.hpp"
#include "leakywire/geometry.hpp"
#include "leakywire/lattice.hpp"
#include "leakywire/magnetic.hpp"

namespace leakywire {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepAxes {
    std::vector<double> alphas;
    std::vector<double> bump_heights;
    std::vector<double> field_scales;
};

struct Lemma1Input {
    double c0 = 0.0;
    double ball_radius = 0.0;
};

struct RunConfig {
    std::string experiment;  // spectrum | theorem2 | weyl | weakfield | sweep
    CurveSpec curve;
    FieldSpec field;
    double alpha = 1.0;
    std::optional<double> alpha_over_alpha0;  // alpha = value * alpha0(kappa, C)
    GridSpec grid;
    SolverOptions solver;
    double margin_coeff = 0.005;  // margin = margin_coeff * alpha^2
    std::optional<SweepAxes> sweep;
    std::vector<double> weyl_p = {0.0};
    std::optional<Lemma1Input> lemma1;
    int workers = 1;
};

json curve_to_json(const CurveSpec& c);
CurveSpec curve_from_json(const json& j);
json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);
json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j);

RunConfig config_from_json(const json& j);
json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

/// FNV-1a hash of the canonical config dump, as 16 hex digits.
std::string config_hash(const RunConfig& c);

json validation_to_json(const ValidationReport& rep);

}  // namespace leakywire
