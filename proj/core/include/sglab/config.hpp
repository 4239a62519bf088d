#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sglab/cyl_function.hpp"
#include "sglab/drift.hpp"
#include "sglab/models.hpp"
#include "sglab/simulate.hpp"
#include "sglab/spectral_model.hpp"

namespace sglab {

struct ModelConfig {
    std::string family = "ou1d";  // ou1d | burgers1d | cahnhilliard3d | h01burgers
    std::size_t size = 1;         // M (sine models) or K (per-axis, Cahn-Hilliard)
    std::string h = "linear-clip";
    std::vector<double> h_params = {1.0};
    std::string g = "tanh";       // h01burgers only
    std::vector<double> g_params = {1.0};
};

struct DriftConfig {
    // zero | constant | near_constant | nemytskii_burgers | cahn_hilliard |
    // h01_burgers, optionally wrapped: truncated(n), mollified(n)
    std::string kind = "near_constant";
    std::vector<double> z;
    std::vector<int> active = {1};
    std::vector<double> amps = {0.2};
    double truncate_at = 0.0;  // > 0: wrap in the cutoff truncation
    int mollify_n = 0;         // >= 1: wrap in Gaussian mollification
};

struct FunctionConfig {
    std::string shape = "cosine";
    std::vector<int> active = {1};
    std::vector<double> params = {1.0};
};

struct ExperimentConfig {
    ModelConfig model;
    DriftConfig drift;
    FunctionConfig f;
    std::string suite = "all";
    double lambda = 1.0;
    double T = 1.0;
    double dt = 1e-2;
    std::size_t m = 1;
    std::size_t n_paths = 2000;
    std::uint64_t seed = 2024;
    std::string scheme = "exponential_euler";
    std::vector<double> times = {0.25, 0.5, 1.0};
    std::vector<double> x0;
    double level = 0.01;
    int grid_points = 513;
    int workers = 1;
    std::string out_dir;
};

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::ordered_json config_schema();

// instantiate the pieces a suite needs
SpectralModel build_model(const ModelConfig& mc);
DriftPtr build_drift(const ModelConfig& mc, const DriftConfig& dc);
CylFunction build_function(const FunctionConfig& fc);

// deterministic text output: fixed key order, '\n' endings
void write_text_file(const std::string& path, const std::string& contents);
std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& rows);

// ensemble export: <base>.json metadata plus <base>.bin raw little-endian
// doubles laid out [path][time][coord]
void write_ensemble(const PathEnsemble& e, const std::string& base_path);

}  // namespace sglab
