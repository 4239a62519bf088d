#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sglab/config.hpp"

using namespace sglab;

TEST_CASE("json round trip preserves every field") {
    ExperimentConfig cfg;
    cfg.model.family = "burgers1d";
    cfg.model.size = 8;
    cfg.model.h = "tanh";
    cfg.model.h_params = {0.4};
    cfg.drift.kind = "constant";
    cfg.drift.z = {0.1, -0.2};
    cfg.f.shape = "tanh-product";
    cfg.f.active = {1, 2};
    cfg.f.params = {1.0, 0.5};
    cfg.suite = "resolvent";
    cfg.lambda = 2.5;
    cfg.T = 0.75;
    cfg.dt = 5e-3;
    cfg.m = 4;
    cfg.n_paths = 1234;
    cfg.seed = 99;
    cfg.scheme = "factorization_check";
    cfg.times = {0.25, 0.75};
    cfg.x0 = {0.1};
    cfg.level = 0.05;
    cfg.grid_points = 65;
    cfg.out_dir = "/tmp/somewhere";

    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(back) == config_to_json(cfg));
}

TEST_CASE("partial configs fall back to defaults; bad types are reported") {
    nlohmann::json j = {{"lambda", 3.0}, {"model", {{"family", "ou1d"}, {"size", 2}}}};
    ExperimentConfig cfg = config_from_json(j);
    CHECK(cfg.lambda == 3.0);
    CHECK(cfg.model.size == 2);
    CHECK(cfg.suite == "all");
    CHECK(cfg.n_paths == 2000);

    nlohmann::json bad = {{"lambda", "three"}};
    CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
}

TEST_CASE("load_config reads a file and rejects garbage") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sglab_cfg_test";
    fs::create_directories(dir);
    fs::path good = dir / "good.json";
    write_text_file(good.string(), "{\"suite\": \"zygmund\", \"lambda\": 4.0}\n");
    ExperimentConfig cfg = load_config(good.string());
    CHECK(cfg.suite == "zygmund");
    CHECK(cfg.lambda == 4.0);

    fs::path bad = dir / "bad.json";
    write_text_file(bad.string(), "{nope\n");
    CHECK_THROWS_AS(load_config(bad.string()), std::invalid_argument);
    CHECK_THROWS_AS(load_config((dir / "missing.json").string()), std::invalid_argument);
}

TEST_CASE("schema covers the top-level keys") {
    auto s = config_schema();
    for (const char* key : {"model", "drift", "f", "suite", "lambda", "T", "dt", "m", "n_paths",
                            "seed", "scheme", "times", "x0", "level", "grid_points", "workers",
                            "out_dir"})
        CHECK(s.contains(key));
}

TEST_CASE("builders instantiate models, drifts and functions") {
    ModelConfig mc;
    mc.family = "burgers1d";
    mc.size = 4;
    SpectralModel m = build_model(mc);
    CHECK(m.M() == 4);
    CHECK(m.lambda(3) == doctest::Approx(9.0));

    DriftConfig dc;
    dc.kind = "zero";
    CHECK(build_drift(mc, dc)->kind() == "zero");
    dc.kind = "near_constant";
    dc.z = {0.1};
    dc.active = {1};
    dc.amps = {0.1};
    CHECK(build_drift(mc, dc)->kind() == "near_constant");
    dc.truncate_at = 10.0;
    dc.mollify_n = 4;
    CHECK(build_drift(mc, dc)->kind() == "mollified(truncated(near_constant))");
    dc.kind = "bogus";
    CHECK_THROWS_AS(build_drift(mc, dc), std::invalid_argument);

    mc.h = "linear-clip";
    mc.h_params = {0.5};
    dc = DriftConfig{};
    dc.kind = "nemytskii_burgers";
    CHECK(build_drift(mc, dc)->kind() == "nemytskii_burgers(linear-clip)");

    FunctionConfig fc;
    fc.shape = "cosine";
    fc.active = {1};
    fc.params = {1.5};
    CylFunction f = build_function(fc);
    CHECK(f.value_at(HVec(4, 0.0)) == doctest::Approx(1.0));
}

TEST_CASE("csv formatting is deterministic") {
    std::string csv = csv_table({"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}});
    CHECK(csv == "a,b\n1,0.5\n2,0.25\n");
}

TEST_CASE("ensemble export writes metadata plus raw doubles") {
    namespace fs = std::filesystem;
    SpectralModel m({1.0});
    SimSpec spec;
    spec.T = 0.1;
    spec.dt = 0.05;
    spec.m = 1;
    spec.n_paths = 3;
    spec.x0 = {0.2};
    PathEnsemble e = simulate(m, make_zero_drift(1), spec);
    fs::path dir = fs::temp_directory_path() / "sglab_cfg_test";
    fs::create_directories(dir);
    std::string base = (dir / "ens").string();
    write_ensemble(e, base);
    CHECK(fs::exists(base + ".json"));
    CHECK(fs::file_size(base + ".bin") == e.data.size() * sizeof(double));
    std::ifstream bin(base + ".bin", std::ios::binary);
    double first = 0.0;
    bin.read(reinterpret_cast<char*>(&first), sizeof(double));
    CHECK(first == e.data[0]);
}
