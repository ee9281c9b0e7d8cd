#include "leakywire/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

#include "leakywire/svg.hpp"
#include "leakywire/version.hpp"

namespace leakywire {

namespace fs = std::filesystem;

const char* kCsvHeader =
    "alpha,h,s,kappa,alpha0,budget,gamma_sup,condition_met,n_below,lambda_min,"
    "residual,grid_n,box_L\n";

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// One CSV row in the fixed schema; unset numeric fields stay empty.
struct CsvRow {
    std::optional<double> alpha, h, s, kappa, alpha0, budget, gamma_sup;
    std::optional<bool> condition_met;
    std::optional<int> n_below;
    std::optional<double> lambda_min, residual;
    std::optional<int> grid_n;
    std::optional<double> box_L;

    std::string line() const {
        auto cell = [](const auto& v) -> std::string {
            if (!v) return "";
            using T = std::decay_t<decltype(*v)>;
            if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
            else if constexpr (std::is_same_v<T, int>) return std::to_string(*v);
            else return num(*v);
        };
        std::string out;
        out += cell(alpha); out += ",";
        out += cell(h); out += ",";
        out += cell(s); out += ",";
        out += cell(kappa); out += ",";
        out += cell(alpha0); out += ",";
        out += cell(budget); out += ",";
        out += cell(gamma_sup); out += ",";
        out += cell(condition_met); out += ",";
        out += cell(n_below); out += ",";
        out += cell(lambda_min); out += ",";
        out += cell(residual); out += ",";
        out += cell(grid_n); out += ",";
        out += cell(box_L); out += "\n";
        return out;
    }
};

std::string iso_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json spectral_to_json(const SpectralResult& r) {
    return json{{"eigenvalues", r.eigenvalues},
                {"residuals", r.residuals},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"diagnostics", r.diagnostics}};
}

struct Assertions {
    json list = json::array();
    bool all_passed = true;
    void add(const std::string& name, bool passed, const std::string& detail) {
        list.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
        all_passed = all_passed && passed;
    }
};

json manifest_skeleton(const RunConfig& config, const std::string& started) {
    json m;
    m["tool_version"] = LEAKYWIRE_VERSION;
    m["experiment"] = config.experiment;
    m["config_hash"] = config_hash(config);
    m["timestamps"] = {{"started", started}, {"finished", ""}};
    return m;
}

void finish(json& manifest, RunOutcome& out, const Assertions& asserts) {
    manifest["assertions"] = asserts.list;
    manifest["assertions_passed"] = asserts.all_passed;
    manifest["timestamps"]["finished"] = iso_now();
    out.assertions_passed = asserts.all_passed;
    out.manifest = manifest;
}

double resolve_alpha(const RunConfig& config, double alpha0_val) {
    if (config.alpha_over_alpha0) return *config.alpha_over_alpha0 * alpha0_val;
    return config.alpha;
}

// Continuum Rayleigh quotient of exp(-(alpha/(2 sqrt 2))|x-y|) e^{ip(x+y)/2}
// over the box [-L, L]^2 (rotated: diamond |u|+|v| <= sqrt(2) L).
double weyl_quotient_continuum(double alpha, double p, double L) {
    const double M = std::sqrt(2.0) * L;
    const double E = std::exp(-alpha * M);
    const double den =
        4.0 * (M * (1.0 - E) / alpha - (1.0 - (1.0 + alpha * M) * E) / (alpha * alpha));
    return alpha * alpha / 4.0 + p * p / 2.0 - 2.0 * alpha * M / den;
}

Eigen::VectorXcd weyl_trial(const GridSpec& grid, double alpha, double p) {
    const int n = grid.n;
    Eigen::VectorXcd v(grid.size());
    const double beta = alpha / (2.0 * std::sqrt(2.0));
    for (int ix = 0; ix < n; ++ix) {
        const double x = grid.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            const double y = grid.coord(iy);
            v(grid.index(ix, iy)) =
                std::polar(std::exp(-beta * std::abs(x - y)), 0.5 * p * (x + y));
        }
    }
    return v;
}

}  // namespace

BoundsReport compute_bounds(const RunConfig& config) {
    BoundsReport rep;
    rep.a = config.field.a;
    rep.C = constant_C(rep.a);
    rep.lambda2 = lambda2_square(rep.a);
    rep.kappa = kappa(rep.a, config.field, std::max(config.grid.n, 129), config.solver);
    rep.alpha0 = alpha0(std::max(rep.kappa.value, 0.0), rep.C);
    rep.alpha = resolve_alpha(config, rep.alpha0);
    rep.gamma_sup = gamma_prime_sup(config.curve);
    if (rep.alpha > 0.0) {
        rep.budget = deformation_budget(rep.alpha, rep.alpha0);
        rep.condition_met =
            condition_met(rep.alpha, rep.gamma_sup, std::max(rep.kappa.value, 0.0), rep.C);
    } else {
        rep.budget = Budget{std::numeric_limits<double>::quiet_NaN(), false};
        rep.condition_met = false;
    }
    if (config.lemma1) {
        const double r = config.lemma1->ball_radius;
        const double vol_ball = std::numbers::pi * r * r;
        const double vol_omega = 4.0 * rep.a * rep.a;
        rep.lemma1_bound =
            lemma1_lower_bound(vol_ball, vol_omega, rep.lambda2, config.lemma1->c0);
    }
    return rep;
}

json bounds_to_json(const BoundsReport& rep) {
    json j;
    j["a"] = rep.a;
    j["C"] = rep.C;
    j["lambda2"] = rep.lambda2;
    j["kappa"] = {{"value", rep.kappa.value},
                  {"error_estimate", rep.kappa.error_estimate},
                  {"raw_fine", rep.kappa.raw_fine},
                  {"raw_coarse", rep.kappa.raw_coarse},
                  {"n_fine", rep.kappa.n_fine},
                  {"n_coarse", rep.kappa.n_coarse}};
    j["alpha0"] = rep.alpha0;
    j["alpha"] = rep.alpha;
    j["gamma_sup"] = rep.gamma_sup;
    j["budget"] = std::isfinite(rep.budget.value) ? json(rep.budget.value) : json();
    j["budget_feasible"] = rep.budget.feasible;
    j["condition_met"] = rep.condition_met;
    if (rep.lemma1_bound) j["lemma1_bound"] = *rep.lemma1_bound;
    return j;
}

RunOutcome run_spectrum(const RunConfig& config) {
    const std::string started = iso_now();
    RunOutcome out;
    Assertions asserts;
    json manifest = manifest_skeleton(config, started);

    const double alpha = config.alpha;
    const double threshold = -alpha * alpha / 4.0;
    const double margin = config.margin_coeff * alpha * alpha;
    const double gsup = gamma_prime_sup(config.curve);
    const Bc primary = config.grid.bc;
    const Bc secondary = primary == Bc::dirichlet ? Bc::neumann : Bc::dirichlet;

    struct Task {
        std::string name;
        GridSpec grid;
    };
    std::vector<Task> tasks;
    tasks.push_back({"primary_fine", config.grid});
    const bool can_coarsen = (config.grid.n - 1) % 4 == 0;
    GridSpec coarse;
    if (can_coarsen) {
        coarse = config.grid.coarsened();
        tasks.push_back({"primary_coarse", coarse});
        if (config.grid.L / 2.0 >= config.curve.a) {
            // half box at the fine spacing
            tasks.push_back({"primary_halfbox", GridSpec{config.grid.L / 2.0,
                                                         (config.grid.n + 1) / 2,
                                                         primary}});
        }
        GridSpec other = coarse;
        other.bc = secondary;
        tasks.push_back({"secondary_coarse", other});
    }

    json solves = json::object();
    std::string csv;
    csv += kCsvHeader;
    double lam_fine = 0.0, lam_coarse = 0.0, res_fine = 0.0;
    double lam_secondary = 0.0;
    bool have_coarse = false, have_secondary = false;
    int n_below_fine = 0, n_inconclusive = 0;

    for (auto& t : tasks) {
        DiscreteOperator H = assemble_H(t.grid, config.field, config.curve, alpha);
        SpectralResult r = lowest_eigenpairs(H, config.solver);
        asserts.add("solver_converged_" + t.name, r.converged, r.diagnostics);
        solves[t.name] = spectral_to_json(r);
        solves[t.name]["grid"] = grid_to_json(t.grid);

        int below = 0, inconclusive = 0;
        for (double lam : r.eigenvalues) {
            if (lam < threshold - margin)
                ++below;
            else if (lam < threshold + margin)
                ++inconclusive;
        }
        solves[t.name]["n_below"] = below;
        solves[t.name]["n_inconclusive"] = inconclusive;

        if (t.name == "primary_fine") {
            lam_fine = r.eigenvalues[0];
            res_fine = r.residuals[0];
            n_below_fine = below;
            n_inconclusive = inconclusive;
        } else if (t.name == "primary_coarse") {
            lam_coarse = r.eigenvalues[0];
            have_coarse = true;
        } else if (t.name == "secondary_coarse") {
            lam_secondary = r.eigenvalues[0];
            have_secondary = true;
        }

        CsvRow row;
        row.alpha = alpha;
        row.h = config.curve.kind == CurveSpec::Kind::bump ? config.curve.h : 0.0;
        row.s = config.field.scale;
        row.gamma_sup = gsup;
        row.n_below = below;
        row.lambda_min = r.eigenvalues[0];
        row.residual = r.residuals[0];
        row.grid_n = t.grid.n;
        row.box_L = t.grid.L;
        csv += row.line();
    }

    if (have_coarse) {
        const double richardson = 2.0 * lam_fine - lam_coarse;
        manifest["richardson"] = {{"fine", lam_fine},
                                  {"coarse", lam_coarse},
                                  {"extrapolated", richardson},
                                  {"error_estimate", std::abs(lam_fine - lam_coarse)}};
    }
    if (have_secondary) {
        const bool brack = primary == Bc::dirichlet ? lam_secondary <= lam_coarse + 1e-9
                                                    : lam_coarse <= lam_secondary + 1e-9;
        asserts.add("bracketing_neumann_le_dirichlet", brack,
                    "neumann vs dirichlet ground states at the coarse grid");
    }

    manifest["solves"] = solves;
    manifest["threshold"] = threshold;
    manifest["margin"] = margin;
    manifest["n_below"] = n_below_fine;
    manifest["n_inconclusive"] = n_inconclusive;
    manifest["lambda_min"] = lam_fine;
    manifest["lambda_min_residual"] = res_fine;

    out.csv = csv;
    finish(manifest, out, asserts);
    return out;
}

RunOutcome run_theorem2_check(const RunConfig& config) {
    const std::string started = iso_now();
    RunOutcome out;
    Assertions asserts;
    json manifest = manifest_skeleton(config, started);

    BoundsReport bounds = compute_bounds(config);
    manifest["bounds"] = bounds_to_json(bounds);
    const double alpha = bounds.alpha;
    if (!(alpha > 0.0)) {
        throw ConfigError("theorem2 experiment needs a positive alpha (zero field?)");
    }
    const double threshold = -alpha * alpha / 4.0;
    const double margin = config.margin_coeff * alpha * alpha;

    // the paper's bracketing: the complement of Omega is handled analytically
    // (straight, field-free exterior), the Omega piece is computed
    GridSpec omega_grid{config.field.a, config.grid.n, Bc::neumann};
    manifest["exterior_estimate"] = {
        {"clean_below_threshold", true},
        {"premises",
         "curve straight outside Omega (validated) and supp(B) inside Omega "
         "(validated); the exterior Neumann piece is bounded below by -alpha^2/4 by "
         "the 1D fiber estimate"}};

    DiscreteOperator H = assemble_H(omega_grid, config.field, config.curve, alpha);
    SpectralResult r = lowest_eigenpairs(H, config.solver);
    asserts.add("solver_converged_omega", r.converged, r.diagnostics);
    manifest["omega_solve"] = spectral_to_json(r);
    manifest["omega_solve"]["grid"] = grid_to_json(omega_grid);

    const int below = count_below(r, threshold, margin);
    manifest["threshold"] = threshold;
    manifest["margin"] = margin;
    manifest["n_below"] = below;

    std::string verdict;
    if (!bounds.budget.feasible && !bounds.condition_met) {
        verdict = bounds.budget.value < 1.0 ? "theorem_gives_no_prediction"
                                            : "outside_theorem_scope";
    }
    if (bounds.condition_met) {
        verdict = below == 0 ? "confirmed_empty" : "VIOLATION";
        asserts.add("theorem2_empty", below == 0,
                    "condition met: no eigenvalue below -alpha^2/4 - margin allowed");
    } else if (verdict.empty()) {
        verdict = "outside_theorem_scope";
    }
    manifest["verdict"] = verdict;

    CsvRow row;
    row.alpha = alpha;
    row.h = config.curve.kind == CurveSpec::Kind::bump ? config.curve.h : 0.0;
    row.s = config.field.scale;
    row.kappa = bounds.kappa.value;
    row.alpha0 = bounds.alpha0;
    row.budget = bounds.budget.value;
    row.gamma_sup = bounds.gamma_sup;
    row.condition_met = bounds.condition_met;
    row.n_below = below;
    row.lambda_min = r.eigenvalues[0];
    row.residual = r.residuals[0];
    row.grid_n = omega_grid.n;
    row.box_L = omega_grid.L;
    out.csv = std::string(kCsvHeader) + row.line();

    finish(manifest, out, asserts);
    return out;
}

RunOutcome run_weyl_check(const RunConfig& config) {
    const std::string started = iso_now();
    RunOutcome out;
    Assertions asserts;
    json manifest = manifest_skeleton(config, started);

    const double alpha = config.alpha;
    if (!(alpha > 0.0)) throw ConfigError("weyl experiment needs alpha > 0");
    if (config.curve.kind != CurveSpec::Kind::straight) {
        throw ConfigError("weyl experiment needs the straight curve");
    }

    std::vector<GridSpec> boxes;
    for (int div : {4, 2, 1}) {
        if ((config.grid.n - 1) % (4 * div) != 0) {
            throw ConfigError("weyl experiment needs (n-1) divisible by 16");
        }
        boxes.push_back(GridSpec{config.grid.L / div,
                                 (config.grid.n - 1) / div + 1, config.grid.bc});
    }

    json table = json::array();
    std::string csv;
    csv += kCsvHeader;
    bool monotone = true;
    double final_q = 0.0;

    for (double p : config.weyl_p) {
        double prev = 0.0;
        bool first = true;
        for (const auto& grid : boxes) {
            DiscreteOperator H = assemble_H(grid, config.field, config.curve, alpha);
            const Eigen::VectorXcd v = weyl_trial(grid, alpha, p);
            const double q = rayleigh_quotient(H, v);
            const double q_cont = weyl_quotient_continuum(alpha, p, grid.L);
            table.push_back({{"p", p},
                             {"L", grid.L},
                             {"n", grid.n},
                             {"quotient", q},
                             {"quotient_continuum", q_cont},
                             {"deviation", q - q_cont}});
            if (p == 0.0) {
                if (!first && q <= prev) monotone = false;
                prev = q;
                first = false;
                final_q = q;
            }
            CsvRow row;
            row.alpha = alpha;
            row.h = 0.0;
            row.s = config.field.scale;
            row.lambda_min = q;
            row.residual = std::abs(q - q_cont);
            row.grid_n = grid.n;
            row.box_L = grid.L;
            csv += row.line();
        }
    }
    manifest["quotients"] = table;
    manifest["threshold"] = -alpha * alpha / 4.0;
    manifest["final_quotient_p0"] = final_q;
    asserts.add("weyl_monotone_in_L", monotone,
                "p = 0 quotients must increase toward -alpha^2/4 with box size");

    out.csv = csv;
    finish(manifest, out, asserts);
    return out;
}

RunOutcome run_weakfield(const RunConfig& config) {
    const std::string started = iso_now();
    RunOutcome out;
    Assertions asserts;
    json manifest = manifest_skeleton(config, started);

    std::vector<double> scales = config.sweep->field_scales;
    std::sort(scales.begin(), scales.end(), std::greater<>());
    scales.erase(std::unique(scales.begin(), scales.end()), scales.end());

    const double C = constant_C(config.field.a);
    json table = json::array();
    std::string csv;
    csv += kCsvHeader;

    std::vector<double> kappas;
    for (double s : scales) {
        const KappaResult kr =
            kappa(config.field.a, config.field.with_scale(s), config.grid.n,
                  config.solver);
        const double a0 = alpha0(std::max(kr.value, 0.0), C);
        kappas.push_back(kr.value);
        table.push_back({{"s", s},
                         {"kappa", kr.value},
                         {"kappa_error_estimate", kr.error_estimate},
                         {"alpha0", a0}});
        CsvRow row;
        row.h = config.curve.kind == CurveSpec::Kind::bump ? config.curve.h : 0.0;
        row.s = s;
        row.kappa = kr.value;
        row.alpha0 = a0;
        row.grid_n = config.grid.n;
        row.box_L = config.field.a;
        csv += row.line();
    }
    manifest["weakfield_table"] = table;

    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < scales.size(); ++i) {
        if (scales[i + 1] > 0.0 || kappas[i + 1] != 0.0) {
            if (!(kappas[i] > kappas[i + 1])) decreasing = false;
        }
    }
    asserts.add("kappa_strictly_decreasing", decreasing,
                "kappa must decrease strictly with the field scale");
    const auto it_zero = std::find(scales.begin(), scales.end(), 0.0);
    if (it_zero != scales.end()) {
        const double k0 = kappas[static_cast<std::size_t>(it_zero - scales.begin())];
        asserts.add("kappa_zero_at_zero_field", std::abs(k0) <= 1e-8,
                    "kappa(0) must vanish within solver tolerance, got " + num(k0));
    }

    out.csv = csv;
    finish(manifest, out, asserts);
    return out;
}

RunOutcome run_sweep(const RunConfig& config) {
    const std::string started = iso_now();
    RunOutcome out;
    Assertions asserts;
    json manifest = manifest_skeleton(config, started);

    const SweepAxes& ax = *config.sweep;
    std::vector<double> alphas = ax.alphas.empty() ? std::vector<double>{config.alpha}
                                                   : ax.alphas;
    std::vector<double> heights =
        ax.bump_heights.empty()
            ? std::vector<double>{config.curve.kind == CurveSpec::Kind::bump
                                      ? config.curve.h
                                      : 0.0}
            : ax.bump_heights;
    std::vector<double> scales =
        ax.field_scales.empty() ? std::vector<double>{config.field.scale}
                                : ax.field_scales;

    const double a = config.field.a;
    const double C = constant_C(a);

    // kappa once per field scale (shared across tasks)
    std::vector<KappaResult> kappa_by_scale;
    kappa_by_scale.reserve(scales.size());
    for (double s : scales) {
        kappa_by_scale.push_back(
            kappa(a, config.field.with_scale(s), config.grid.n, config.solver));
    }

    struct TaskResult {
        double alpha = 0, h = 0, s = 0, kappa = 0, a0 = 0, budget = 0, gsup = 0;
        bool cond = false;
        int below = -1;
        double lam = 0, res = 0;
        bool failed = false;
        std::string error;
    };
    struct TaskDef {
        std::size_t is, ih, ia;
    };
    std::vector<TaskDef> defs;
    for (std::size_t is = 0; is < scales.size(); ++is)
        for (std::size_t ih = 0; ih < heights.size(); ++ih)
            for (std::size_t ia = 0; ia < alphas.size(); ++ia)
                defs.push_back({is, ih, ia});

    std::vector<TaskResult> results(defs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= defs.size()) return;
            const TaskDef d = defs[idx];
            TaskResult& tr = results[idx];
            tr.alpha = alphas[d.ia];
            tr.h = heights[d.ih];
            tr.s = scales[d.is];
            try {
                const KappaResult& kr = kappa_by_scale[d.is];
                tr.kappa = kr.value;
                tr.a0 = alpha0(std::max(kr.value, 0.0), C);
                CurveSpec curve = CurveSpec::bump(a, tr.h, config.curve.sampling_n);
                tr.gsup = gamma_prime_sup(curve);
                tr.budget = deformation_budget(tr.alpha, tr.a0).value;
                tr.cond = condition_met(tr.alpha, tr.gsup, std::max(kr.value, 0.0), C);
                GridSpec omega_grid{a, config.grid.n, Bc::neumann};
                DiscreteOperator H = assemble_H(
                    omega_grid, config.field.with_scale(tr.s), curve, tr.alpha);
                SpectralResult r = lowest_eigenpairs(H, config.solver);
                if (!r.converged) throw std::runtime_error("solver did not converge");
                const double thr = -tr.alpha * tr.alpha / 4.0;
                tr.below = count_below(r, thr, config.margin_coeff * tr.alpha * tr.alpha);
                tr.lam = r.eigenvalues[0];
                tr.res = r.residuals[0];
            } catch (const std::exception& e) {
                tr.failed = true;
                tr.error = e.what();
            }
        }
    };
    const int nw = std::max(1, config.workers);
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::string csv;
    csv += kCsvHeader;
    json failures = json::array();
    bool consistent = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const TaskResult& tr = results[i];
        if (tr.failed) {
            failures.push_back({{"task", i},
                                {"alpha", tr.alpha},
                                {"h", tr.h},
                                {"s", tr.s},
                                {"error", tr.error}});
            continue;
        }
        if (tr.cond && tr.below > 0) consistent = false;
        CsvRow row;
        row.alpha = tr.alpha;
        row.h = tr.h;
        row.s = tr.s;
        row.kappa = tr.kappa;
        row.alpha0 = tr.a0;
        row.budget = tr.budget;
        row.gamma_sup = tr.gsup;
        row.condition_met = tr.cond;
        row.n_below = tr.below;
        row.lambda_min = tr.lam;
        row.residual = tr.res;
        row.grid_n = config.grid.n;
        row.box_L = a;
        csv += row.line();
    }
    manifest["task_count"] = defs.size();
    manifest["failures"] = failures;
    asserts.add("theorem2_consistency_no_violations", consistent,
                "no task with condition_met may report n_below > 0");

    // one heatmap (alpha x h) per field scale
    for (std::size_t is = 0; is < scales.size(); ++is) {
        HeatmapData hm;
        hm.nx = static_cast<int>(alphas.size());
        hm.ny = static_cast<int>(heights.size());
        hm.cells.assign(static_cast<std::size_t>(hm.nx) * hm.ny,
                        std::numeric_limits<double>::quiet_NaN());
        hm.boundary.assign(static_cast<std::size_t>(hm.nx) * hm.ny, false);
        for (double av : alphas) hm.x_labels.push_back(num(av));
        for (double hv : heights) hm.y_labels.push_back(num(hv));
        hm.x_title = "alpha";
        hm.y_title = "bump height h";
        hm.title = "bound states below threshold (outline: theorem condition met), "
                   "field scale s=" + num(scales[is]);
        for (std::size_t i = 0; i < defs.size(); ++i) {
            if (defs[i].is != is || results[i].failed) continue;
            const std::size_t cell = defs[i].ih * alphas.size() + defs[i].ia;
            hm.cells[cell] = results[i].below;
            hm.boundary[cell] = results[i].cond;
        }
        out.svgs.emplace_back("heatmap_s" + std::to_string(is), render_heatmap_svg(hm));
    }

    out.csv = csv;
    finish(manifest, out, asserts);
    return out;
}

RunOutcome run_experiment(const RunConfig& config) {
    if (config.experiment == "spectrum") return run_spectrum(config);
    if (config.experiment == "theorem2") return run_theorem2_check(config);
    if (config.experiment == "weyl") return run_weyl_check(config);
    if (config.experiment == "weakfield") return run_weakfield(config);
    if (config.experiment == "sweep") return run_sweep(config);
    throw ConfigError("unknown experiment: " + config.experiment);
}

std::string default_out_root() {
    if (const char* env = std::getenv("LEAKYWIRE_OUT")) return env;
    return "runs";
}

namespace {
void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
    }
    fs::rename(tmp, path);
}
}  // namespace

std::string write_run_dir(const std::string& out_root, const RunConfig& config,
                          const RunOutcome& outcome) {
    const fs::path dir = fs::path(out_root) / config_hash(config);
    fs::create_directories(dir / "plots");
    atomic_write(dir / "config.json", config_to_json(config).dump(2) + "\n");
    atomic_write(dir / "manifest.json", outcome.manifest.dump(2) + "\n");
    atomic_write(dir / "results.csv", outcome.csv);
    for (const auto& [name, content] : outcome.svgs) {
        atomic_write(dir / "plots" / (name + ".svg"), content);
    }
    return dir.string();
}

}  // namespace leakywire
