#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "leakywire/experiments.hpp"
#include "leakywire/version.hpp"

using namespace leakywire;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 2;
constexpr int kExitInvalidConfig = 3;

int do_validate(const std::string& path) {
    RunConfig config = load_config(path);
    json report;
    report["curve"] = validation_to_json(validate_curve(config.curve));
    report["field"] = validation_to_json(validate_field(config.field));
    const bool active = config.alpha > 0.0 || config.alpha_over_alpha0.has_value() ||
                        config.field.kind != FieldSpec::Kind::zero;
    report["grid"] = validation_to_json(config.grid.validate(active, config.curve.a));
    const bool ok = report["curve"]["ok"].get<bool>() &&
                    report["field"]["ok"].get<bool>() &&
                    report["grid"]["ok"].get<bool>();
    report["ok"] = ok;
    std::cout << report.dump(2) << "\n";
    return ok ? kExitOk : kExitInvalidConfig;
}

int do_bounds(const std::string& path, const std::string& out_root) {
    RunConfig config = load_config(path);
    BoundsReport rep = compute_bounds(config);
    const json j = bounds_to_json(rep);
    std::cout << j.dump(2) << "\n";

    RunOutcome outcome;
    outcome.manifest["tool_version"] = LEAKYWIRE_VERSION;
    outcome.manifest["experiment"] = "bounds";
    outcome.manifest["config_hash"] = config_hash(config);
    outcome.manifest["bounds"] = j;
    outcome.csv = kCsvHeader;
    const std::string dir = write_run_dir(out_root, config, outcome);
    std::cerr << "wrote " << dir << "\n";
    return kExitOk;
}

int do_run(const std::string& path, const std::string& out_root, int workers_override) {
    RunConfig config = load_config(path);
    if (workers_override > 0) config.workers = workers_override;
    RunOutcome outcome = run_experiment(config);
    const std::string dir = write_run_dir(out_root, config, outcome);
    std::cout << outcome.manifest.dump(2) << "\n";
    std::cerr << "wrote " << dir << "\n";
    return outcome.assertions_passed ? kExitOk : kExitAssertion;
}

int do_dump(const std::string& path, const std::string& out_file) {
    RunConfig config = load_config(path);
    double alpha = config.alpha;
    if (config.alpha_over_alpha0) {
        BoundsReport rep = compute_bounds(config);
        alpha = rep.alpha;
    }
    DiscreteOperator op = assemble_H(config.grid, config.field, config.curve, alpha);
    write_matrix_market(op, out_file);
    std::cerr << "wrote " << out_file << " (dim " << op.dimension() << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leakywire: spectra and bounds for the magnetic Schrodinger operator "
                 "with a delta interaction on a locally deformed line"};
    app.set_version_flag("--version", LEAKYWIRE_VERSION);
    app.require_subcommand(1);

    std::string config_path, out_root = default_out_root(), dump_file = "operator.mtx";
    int workers = 0;

    CLI::App* validate = app.add_subcommand("validate", "validate a config file");
    validate->add_option("config", config_path, "config JSON path")->required();

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate the paper's constant chain");
    bounds->add_option("config", config_path)->required();
    bounds->add_option("--out", out_root, "output root directory");

    CLI::App* run = app.add_subcommand("run", "run the configured experiment");
    run->add_option("config", config_path)->required();
    run->add_option("--out", out_root);
    run->add_option("--workers", workers, "parallel sweep workers");

    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path)->required();
    sweep->add_option("--out", out_root);
    sweep->add_option("--workers", workers);

    CLI::App* dump = app.add_subcommand("dump", "write the assembled operator "
                                                "(Matrix Market, complex hermitian)");
    dump->add_option("config", config_path)->required();
    dump->add_option("-o,--output", dump_file, "output .mtx path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return do_validate(config_path);
        if (bounds->parsed()) return do_bounds(config_path, out_root);
        if (run->parsed()) return do_run(config_path, out_root, workers);
        if (sweep->parsed()) {
            RunConfig config = load_config(config_path);
            if (config.experiment != "sweep") {
                std::cerr << "error: sweep subcommand needs experiment = \"sweep\"\n";
                return kExitInvalidConfig;
            }
            return do_run(config_path, out_root, workers);
        }
        if (dump->parsed()) return do_dump(config_path, dump_file);
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAssertion;
    }
    return kExitOk;
}
