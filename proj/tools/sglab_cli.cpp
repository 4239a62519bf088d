#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sglab/config.hpp"
#include "sglab/suites.hpp"

namespace fs = std::filesystem;
using sglab::ExperimentConfig;

namespace {

// flag overrides applied on top of the config file
struct Overrides {
    std::string config_path;
    std::string suite, model, drift, scheme, out_dir, f_shape;
    std::vector<double> times, x0, z;
    double lambda = -1.0, T = -1.0, dt = -1.0, level = -1.0;
    long long m = -1, n_paths = -1, size = -1, grid_points = -1, workers = -1;
    long long seed = -1;
    bool export_ensemble = false;
};

ExperimentConfig assemble(const Overrides& ov) {
    ExperimentConfig cfg;
    if (!ov.config_path.empty()) cfg = sglab::load_config(ov.config_path);
    if (!ov.suite.empty()) cfg.suite = ov.suite;
    if (!ov.model.empty()) cfg.model.family = ov.model;
    if (ov.size >= 0) cfg.model.size = static_cast<std::size_t>(ov.size);
    if (!ov.drift.empty()) cfg.drift.kind = ov.drift;
    if (!ov.z.empty()) cfg.drift.z = ov.z;
    if (!ov.scheme.empty()) cfg.scheme = ov.scheme;
    if (!ov.f_shape.empty()) cfg.f.shape = ov.f_shape;
    if (ov.lambda > 0.0) cfg.lambda = ov.lambda;
    if (ov.T > 0.0) cfg.T = ov.T;
    if (ov.dt > 0.0) cfg.dt = ov.dt;
    if (ov.level > 0.0) cfg.level = ov.level;
    if (ov.m >= 0) cfg.m = static_cast<std::size_t>(ov.m);
    if (ov.n_paths >= 0) cfg.n_paths = static_cast<std::size_t>(ov.n_paths);
    if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
    if (ov.grid_points > 0) cfg.grid_points = static_cast<int>(ov.grid_points);
    if (ov.workers > 0) cfg.workers = static_cast<int>(ov.workers);
    if (!ov.times.empty()) cfg.times = ov.times;
    if (!ov.x0.empty()) cfg.x0 = ov.x0;
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (cfg.out_dir.empty()) {
        const char* env = std::getenv("SGLAB_OUT_DIR");
        cfg.out_dir = env ? env : "out";
    }
    return cfg;
}

int cmd_run(const Overrides& ov) {
    ExperimentConfig cfg = assemble(ov);
    fs::create_directories(cfg.out_dir);
    sglab::SuiteResult res = sglab::run_suite(cfg.suite, cfg);

    nlohmann::ordered_json report;
    // out_dir and workers are plumbing, not experiment parameters; keeping
    // them out makes report bytes a function of the experiment alone
    nlohmann::ordered_json cj = sglab::config_to_json(cfg);
    cj.erase("out_dir");
    cj.erase("workers");
    report["config"] = cj;
    report["suite"] = res.name;
    report["pass"] = res.pass;
    report["report"] = res.report;
    fs::path dir(cfg.out_dir);
    sglab::write_text_file((dir / (res.name + "_report.json")).string(),
                           report.dump(2) + "\n");
    for (const auto& [name, contents] : res.files)
        sglab::write_text_file((dir / name).string(), contents);

    if (ov.export_ensemble) {
        sglab::SpectralModel model = sglab::build_model(cfg.model);
        sglab::SimSpec spec;
        spec.scheme = sglab::scheme_from_name(cfg.scheme);
        spec.T = cfg.T;
        spec.dt = cfg.dt;
        spec.m = std::min(cfg.m, model.M());
        spec.n_paths = cfg.n_paths;
        spec.seed = {cfg.seed, 0};
        spec.x0 = cfg.x0;
        spec.x0.resize(model.M(), 0.0);
        spec.snapshot_times = cfg.times;
        sglab::PathEnsemble ens =
            sglab::simulate(model, sglab::build_drift(cfg.model, cfg.drift), spec);
        sglab::write_ensemble(ens, (dir / "ensemble").string());
    }

    // summary table
    if (res.report.contains("summary")) {
        for (const auto& row : res.report["summary"])
            std::cout << (row["pass"].get<bool>() ? "PASS  " : "FAIL  ")
                      << row["suite"].get<std::string>() << "\n";
    }
    std::cout << (res.pass ? "PASS  " : "FAIL  ") << res.name << "\n";
    return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral Galerkin laboratory: semigroup, resolvent, and simulation suites"};
    app.require_subcommand(1);
    Overrides ov;

    CLI::App* run = app.add_subcommand("run", "run a suite and write reports");
    run->add_option("--config", ov.config_path, "experiment config (JSON)");
    run->add_option("--suite", ov.suite, "suite name, or 'all'");
    run->add_option("--model", ov.model, "model family");
    run->add_option("--size", ov.size, "model truncation level");
    run->add_option("--drift", ov.drift, "drift kind");
    run->add_option("--z", ov.z, "drift constant part");
    run->add_option("--f", ov.f_shape, "test function shape");
    run->add_option("--lambda", ov.lambda, "resolvent parameter");
    run->add_option("--T", ov.T, "simulation horizon");
    run->add_option("--dt", ov.dt, "time step");
    run->add_option("--m", ov.m, "Galerkin level");
    run->add_option("--paths", ov.n_paths, "Monte Carlo path count");
    run->add_option("--seed", ov.seed, "master seed");
    run->add_option("--scheme", ov.scheme, "exponential_euler | factorization_check");
    run->add_option("--times", ov.times, "snapshot times");
    run->add_option("--x0", ov.x0, "initial datum coefficients");
    run->add_option("--level", ov.level, "test level before Bonferroni correction");
    run->add_option("--grid-points", ov.grid_points, "tensor-grid points per axis");
    run->add_option("--workers", ov.workers, "worker count (reports are worker-independent)");
    run->add_option("--out", ov.out_dir, "output directory (default: env SGLAB_OUT_DIR)");
    run->add_flag("--export-ensemble", ov.export_ensemble,
                  "also write the simulated ensemble (metadata + binary)");

    CLI::App* ls = app.add_subcommand("list-suites", "list available suites");
    CLI::App* schema = app.add_subcommand("print-schema", "print the config schema");
    CLI::App* defaults = app.add_subcommand("print-defaults", "print the default config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(ov);
        if (*ls) {
            for (const auto& n : sglab::suite_names()) std::cout << n << "\n";
            std::cout << "all\n";
            return 0;
        }
        if (*schema) {
            std::cout << sglab::config_schema().dump(2) << "\n";
            return 0;
        }
        if (*defaults) {
            std::cout << sglab::config_to_json(ExperimentConfig{}).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
