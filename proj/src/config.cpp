#include "leakywire/config.hpp"

#include <cstdint>
#include <fstream>

namespace leakywire {

namespace {

std::string kind_name(CurveSpec::Kind k) {
    switch (k) {
        case CurveSpec::Kind::straight: return "straight";
        case CurveSpec::Kind::bump: return "bump";
        case CurveSpec::Kind::polyline: return "polyline";
    }
    return "straight";
}

std::string kind_name(FieldSpec::Kind k) {
    switch (k) {
        case FieldSpec::Kind::zero: return "zero";
        case FieldSpec::Kind::square_bump: return "square_bump";
        case FieldSpec::Kind::disk_bump: return "disk_bump";
        case FieldSpec::Kind::gaussian_truncated: return "gaussian_truncated";
    }
    return "zero";
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError(std::string("missing or non-numeric field: ") + key);
    }
    return j[key].get<double>();
}

}  // namespace

json curve_to_json(const CurveSpec& c) {
    json j;
    j["a"] = c.a;
    j["kind"] = kind_name(c.kind);
    j["sampling_n"] = c.sampling_n;
    if (c.kind == CurveSpec::Kind::bump) j["h"] = c.h;
    if (c.kind == CurveSpec::Kind::polyline) {
        json verts = json::array();
        for (const auto& v : c.vertices) verts.push_back({v.first, v.second});
        j["vertices"] = verts;
    }
    return j;
}

CurveSpec curve_from_json(const json& j) {
    CurveSpec c;
    c.a = require_number(j, "a");
    const std::string kind = j.value("kind", "straight");
    c.sampling_n = j.value("sampling_n", 2001);
    if (kind == "straight") {
        c.kind = CurveSpec::Kind::straight;
    } else if (kind == "bump") {
        c.kind = CurveSpec::Kind::bump;
        c.h = require_number(j, "h");
    } else if (kind == "polyline") {
        c.kind = CurveSpec::Kind::polyline;
        if (!j.contains("vertices") || !j["vertices"].is_array()) {
            throw ConfigError("polyline curve needs a vertices array");
        }
        for (const auto& v : j["vertices"]) {
            if (!v.is_array() || v.size() != 2) {
                throw ConfigError("polyline vertices must be [x, y] pairs");
            }
            c.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
    } else {
        throw ConfigError("unknown curve kind: " + kind);
    }
    return c;
}

json field_to_json(const FieldSpec& f) {
    json j;
    j["a"] = f.a;
    j["kind"] = kind_name(f.kind);
    j["scale"] = f.scale;
    switch (f.kind) {
        case FieldSpec::Kind::zero:
            break;
        case FieldSpec::Kind::square_bump:
            j["b"] = f.b;
            j["c"] = f.c;
            break;
        case FieldSpec::Kind::disk_bump:
            j["b"] = f.b;
            j["R"] = f.R;
            j["center"] = {f.center[0], f.center[1]};
            break;
        case FieldSpec::Kind::gaussian_truncated:
            j["b"] = f.b;
            j["sigma"] = f.sigma;
            j["cutoff"] = f.cutoff;
            break;
    }
    return j;
}

FieldSpec field_from_json(const json& j) {
    FieldSpec f;
    f.a = require_number(j, "a");
    const std::string kind = j.value("kind", "zero");
    f.scale = j.value("scale", 1.0);
    if (kind == "zero") {
        f.kind = FieldSpec::Kind::zero;
    } else if (kind == "square_bump") {
        f.kind = FieldSpec::Kind::square_bump;
        f.b = require_number(j, "b");
        f.c = require_number(j, "c");
    } else if (kind == "disk_bump") {
        f.kind = FieldSpec::Kind::disk_bump;
        f.b = require_number(j, "b");
        f.R = require_number(j, "R");
        if (j.contains("center")) {
            f.center = {j["center"][0].get<double>(), j["center"][1].get<double>()};
        }
    } else if (kind == "gaussian_truncated") {
        f.kind = FieldSpec::Kind::gaussian_truncated;
        f.b = require_number(j, "b");
        f.sigma = require_number(j, "sigma");
        f.cutoff = require_number(j, "cutoff");
    } else {
        throw ConfigError("unknown field kind: " + kind);
    }
    return f;
}

json grid_to_json(const GridSpec& g) {
    return json{{"L", g.L}, {"n", g.n}, {"bc", to_string(g.bc)}};
}

GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.L = require_number(j, "L");
    g.n = static_cast<int>(require_number(j, "n"));
    const std::string bc = j.value("bc", "dirichlet");
    if (bc == "dirichlet")
        g.bc = Bc::dirichlet;
    else if (bc == "neumann")
        g.bc = Bc::neumann;
    else
        throw ConfigError("unknown bc: " + bc);
    return g;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.experiment = j.value("experiment", "spectrum");
    if (c.experiment != "spectrum" && c.experiment != "theorem2" &&
        c.experiment != "weyl" && c.experiment != "weakfield" &&
        c.experiment != "sweep") {
        throw ConfigError("unknown experiment: " + c.experiment);
    }
    if (!j.contains("curve")) throw ConfigError("missing curve");
    if (!j.contains("field")) throw ConfigError("missing field");
    if (!j.contains("grid")) throw ConfigError("missing grid");
    c.curve = curve_from_json(j["curve"]);
    c.field = field_from_json(j["field"]);
    c.grid = grid_from_json(j["grid"]);
    if (j.contains("alpha_over_alpha0")) {
        c.alpha_over_alpha0 = j["alpha_over_alpha0"].get<double>();
        c.alpha = 0.0;  // resolved against alpha0 at run time
    } else {
        c.alpha = require_number(j, "alpha");
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        c.solver.k = s.value("k", 1);
        c.solver.tol = s.value("tol", 1e-8);
        c.solver.seed = s.value("seed", std::uint64_t{42});
        c.solver.max_iter = s.value("max_iter", 5000);
        c.solver.block = s.value("block", 0);
    }
    c.margin_coeff = j.value("margin_coeff", 0.005);
    if (j.contains("sweep")) {
        SweepAxes axes;
        const json& s = j["sweep"];
        axes.alphas = s.value("alphas", std::vector<double>{});
        axes.bump_heights = s.value("bump_heights", std::vector<double>{});
        axes.field_scales = s.value("field_scales", std::vector<double>{});
        c.sweep = axes;
    }
    if (j.contains("weyl") && j["weyl"].contains("p_values")) {
        c.weyl_p = j["weyl"]["p_values"].get<std::vector<double>>();
    }
    if (j.contains("lemma1")) {
        Lemma1Input l;
        l.c0 = require_number(j["lemma1"], "c0");
        l.ball_radius = require_number(j["lemma1"], "ball_radius");
        c.lemma1 = l;
    }
    c.workers = j.value("workers", 1);
    if (c.workers < 1) throw ConfigError("workers must be >= 1");

    if (c.experiment == "sweep") {
        if (!c.sweep || (c.sweep->alphas.empty() && c.sweep->bump_heights.empty() &&
                         c.sweep->field_scales.empty())) {
            throw ConfigError("sweep experiment needs nonempty sweep axes");
        }
    }
    if (c.experiment == "weakfield" &&
        (!c.sweep || c.sweep->field_scales.empty())) {
        throw ConfigError("weakfield experiment needs sweep.field_scales");
    }
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["experiment"] = c.experiment;
    j["curve"] = curve_to_json(c.curve);
    j["field"] = field_to_json(c.field);
    j["grid"] = grid_to_json(c.grid);
    if (c.alpha_over_alpha0) {
        j["alpha_over_alpha0"] = *c.alpha_over_alpha0;
    } else {
        j["alpha"] = c.alpha;
    }
    j["solver"] = {{"k", c.solver.k},
                   {"tol", c.solver.tol},
                   {"seed", c.solver.seed},
                   {"max_iter", c.solver.max_iter},
                   {"block", c.solver.block}};
    j["margin_coeff"] = c.margin_coeff;
    if (c.sweep) {
        j["sweep"] = {{"alphas", c.sweep->alphas},
                      {"bump_heights", c.sweep->bump_heights},
                      {"field_scales", c.sweep->field_scales}};
    }
    j["weyl"] = {{"p_values", c.weyl_p}};
    if (c.lemma1) {
        j["lemma1"] = {{"c0", c.lemma1->c0}, {"ball_radius", c.lemma1->ball_radius}};
    }
    j["workers"] = c.workers;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

std::string config_hash(const RunConfig& c) {
    const std::string dump = config_to_json(c).dump();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json validation_to_json(const ValidationReport& rep) {
    json out;
    out["ok"] = rep.ok;
    json v = json::array();
    for (const auto& viol : rep.violations) {
        v.push_back({{"invariant", viol.invariant},
                     {"witness_x", viol.witness_x},
                     {"value", viol.value},
                     {"detail", viol.detail}});
    }
    out["violations"] = v;
    return out;
}

}  // namespace leakywire
