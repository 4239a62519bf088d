#include "sglab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sglab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
T get_or(const json& j, const std::string& key, const T& dflt) {
    if (!j.contains(key)) return dflt;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("config key '" + key + "': " + e.what());
    }
}

}  // namespace

ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["model"] = {{"family", cfg.model.family},
                  {"size", cfg.model.size},
                  {"h", cfg.model.h},
                  {"h_params", cfg.model.h_params},
                  {"g", cfg.model.g},
                  {"g_params", cfg.model.g_params}};
    j["drift"] = {{"kind", cfg.drift.kind},       {"z", cfg.drift.z},
                  {"active", cfg.drift.active},   {"amps", cfg.drift.amps},
                  {"truncate_at", cfg.drift.truncate_at}, {"mollify_n", cfg.drift.mollify_n}};
    j["f"] = {{"shape", cfg.f.shape}, {"active", cfg.f.active}, {"params", cfg.f.params}};
    j["suite"] = cfg.suite;
    j["lambda"] = cfg.lambda;
    j["T"] = cfg.T;
    j["dt"] = cfg.dt;
    j["m"] = cfg.m;
    j["n_paths"] = cfg.n_paths;
    j["seed"] = cfg.seed;
    j["scheme"] = cfg.scheme;
    j["times"] = cfg.times;
    j["x0"] = cfg.x0;
    j["level"] = cfg.level;
    j["grid_points"] = cfg.grid_points;
    j["workers"] = cfg.workers;
    j["out_dir"] = cfg.out_dir;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("model")) {
        const json& m = j.at("model");
        cfg.model.family = get_or<std::string>(m, "family", cfg.model.family);
        cfg.model.size = get_or<std::size_t>(m, "size", cfg.model.size);
        cfg.model.h = get_or<std::string>(m, "h", cfg.model.h);
        cfg.model.h_params = get_or<std::vector<double>>(m, "h_params", cfg.model.h_params);
        cfg.model.g = get_or<std::string>(m, "g", cfg.model.g);
        cfg.model.g_params = get_or<std::vector<double>>(m, "g_params", cfg.model.g_params);
    }
    if (j.contains("drift")) {
        const json& d = j.at("drift");
        cfg.drift.kind = get_or<std::string>(d, "kind", cfg.drift.kind);
        cfg.drift.z = get_or<std::vector<double>>(d, "z", cfg.drift.z);
        cfg.drift.active = get_or<std::vector<int>>(d, "active", cfg.drift.active);
        cfg.drift.amps = get_or<std::vector<double>>(d, "amps", cfg.drift.amps);
        cfg.drift.truncate_at = get_or<double>(d, "truncate_at", cfg.drift.truncate_at);
        cfg.drift.mollify_n = get_or<int>(d, "mollify_n", cfg.drift.mollify_n);
    }
    if (j.contains("f")) {
        const json& f = j.at("f");
        cfg.f.shape = get_or<std::string>(f, "shape", cfg.f.shape);
        cfg.f.active = get_or<std::vector<int>>(f, "active", cfg.f.active);
        cfg.f.params = get_or<std::vector<double>>(f, "params", cfg.f.params);
    }
    cfg.suite = get_or<std::string>(j, "suite", cfg.suite);
    cfg.lambda = get_or<double>(j, "lambda", cfg.lambda);
    cfg.T = get_or<double>(j, "T", cfg.T);
    cfg.dt = get_or<double>(j, "dt", cfg.dt);
    cfg.m = get_or<std::size_t>(j, "m", cfg.m);
    cfg.n_paths = get_or<std::size_t>(j, "n_paths", cfg.n_paths);
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.scheme = get_or<std::string>(j, "scheme", cfg.scheme);
    cfg.times = get_or<std::vector<double>>(j, "times", cfg.times);
    cfg.x0 = get_or<std::vector<double>>(j, "x0", cfg.x0);
    cfg.level = get_or<double>(j, "level", cfg.level);
    cfg.grid_points = get_or<int>(j, "grid_points", cfg.grid_points);
    cfg.workers = get_or<int>(j, "workers", cfg.workers);
    cfg.out_dir = get_or<std::string>(j, "out_dir", cfg.out_dir);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

nlohmann::ordered_json config_schema() {
    ordered_json s;
    s["model"] = {{"family", "ou1d | burgers1d | cahnhilliard3d | h01burgers"},
                  {"size", "truncation M, or K per axis for cahnhilliard3d"},
                  {"h", "identity | linear-clip | tanh | scaled-cubic-clip | "
                        "classical-burgers | cahn-hilliard-cubic"},
                  {"h_params", "parameters of h"},
                  {"g", "scalar profile for h01burgers"},
                  {"g_params", "parameters of g"}};
    s["drift"] = {{"kind", "zero | constant | near_constant | nemytskii_burgers | "
                           "cahn_hilliard | h01_burgers"},
                  {"z", "constant part, coefficients"},
                  {"active", "coordinates the tanh perturbation acts on (near_constant)"},
                  {"amps", "perturbation amplitudes; |amps| < 1/4 keeps the solver condition"},
                  {"truncate_at", "> 0 wraps the drift in the cutoff truncation at this level"},
                  {"mollify_n", ">= 1 wraps the drift in Gaussian mollification F_n"}};
    s["f"] = {{"shape", "cosine | gaussian-bump | tanh-product | indicator-smooth | abs-clip"},
              {"active", "active coordinates, 1-based, at most 3"},
              {"params", "shape parameters"}};
    s["suite"] = "semigroup | resolvent | bounds | fixedpoint | simulate | uniqueness | "
                 "zygmund | all";
    s["lambda"] = "resolvent parameter, >= 1 for the fixed-point suites";
    s["T"] = "simulation horizon";
    s["dt"] = "time step";
    s["m"] = "Galerkin level";
    s["n_paths"] = "Monte Carlo path count";
    s["seed"] = "master seed; path i draws from stream i";
    s["scheme"] = "exponential_euler | factorization_check";
    s["times"] = "snapshot/comparison times";
    s["x0"] = "initial datum coefficients";
    s["level"] = "test level before Bonferroni correction";
    s["grid_points"] = "tensor-grid points per active axis";
    s["workers"] = "reserved; outputs are independent of parallelism";
    s["out_dir"] = "report directory; env SGLAB_OUT_DIR supplies the default";
    return s;
}

SpectralModel build_model(const ModelConfig& mc) {
    if (mc.family == "ou1d") {
        std::vector<double> lam(mc.size);
        for (std::size_t k = 1; k <= mc.size; ++k) lam[k - 1] = static_cast<double>(k);
        return SpectralModel(lam);
    }
    return make_model_by_family(mc.family, mc.size);
}

DriftPtr build_drift(const ModelConfig& mc, const DriftConfig& dc) {
    SpectralModel model = build_model(mc);
    DriftPtr d;
    if (dc.kind == "zero") {
        d = make_zero_drift(model.M());
    } else if (dc.kind == "constant") {
        HVec z = dc.z;
        z.resize(model.M(), 0.0);
        d = make_constant_drift(std::move(z));
    } else if (dc.kind == "near_constant") {
        HVec z = dc.z;
        z.resize(model.M(), 0.0);
        d = make_near_constant_drift(std::move(z), dc.active, dc.amps);
    } else if (dc.kind == "nemytskii_burgers") {
        d = make_burgers_drift(make_burgers1d(mc.size, make_scalar_fn(mc.h, mc.h_params)));
    } else if (dc.kind == "cahn_hilliard") {
        d = make_cahn_hilliard_drift(
            make_cahnhilliard3d(mc.size, make_scalar_fn(mc.h, mc.h_params)));
    } else if (dc.kind == "h01_burgers") {
        d = make_h01_drift(make_h01burgers(mc.size, make_scalar_fn(mc.h, mc.h_params),
                                           make_scalar_fn(mc.g, mc.g_params)));
    } else {
        throw std::invalid_argument("unknown drift kind: " + dc.kind);
    }
    if (dc.truncate_at > 0.0) d = make_truncated_drift(d, dc.truncate_at);
    if (dc.mollify_n >= 1) d = mollify_drift(model, d, dc.mollify_n);
    return d;
}

CylFunction build_function(const FunctionConfig& fc) {
    return make_cyl_function(fc.shape, fc.active, fc.params);
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

std::string csv_table(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < headers.size(); ++i)
        os << headers[i] << (i + 1 < headers.size() ? "," : "");
    os << "\n";
    os.precision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

void write_ensemble(const PathEnsemble& e, const std::string& base_path) {
    ordered_json meta;
    meta["scheme"] = scheme_name(e.spec.scheme);
    meta["drift_kind"] = e.drift_kind;
    meta["T"] = e.spec.T;
    meta["dt"] = e.spec.dt;
    meta["m"] = e.spec.m;
    meta["n_paths"] = e.spec.n_paths;
    meta["seed"] = {e.spec.seed.master_seed, e.spec.seed.stream_id};
    meta["times"] = e.times;
    meta["layout"] = "float64 little-endian, row-major [path][time][coord]";
    meta["data_file"] = base_path + ".bin";
    write_text_file(base_path + ".json", meta.dump(2) + "\n");
    std::ofstream bin(base_path + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot write " + base_path + ".bin");
    bin.write(reinterpret_cast<const char*>(e.data.data()),
              static_cast<std::streamsize>(e.data.size() * sizeof(double)));
}

}  // namespace sglab
