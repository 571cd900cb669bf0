#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oppde/harness.hpp"

using namespace oppde;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.de.NP = 20;
    cfg.de.budget_max = 2000;
    cfg.functions = {"sphere", "rastrigin"};
    cfg.dimensions = {5};
    cfg.runs = 4;
    cfg.base_seed = 100;
    cfg.checkpoint_fractions = {0.5, 1.0};
    cfg.obl = make_default_obl_config(OblVariant::ibetacobl, 0.05);
    cfg.algorithm_label = "ibetacode";
    return cfg;
}

} // namespace

TEST_CASE("config round-trips through key=value form") {
    auto cfg = small_config();
    const auto kv = cfg.to_keyvals();
    const auto back = ExperimentConfig::from_keyvals(kv);
    CHECK(back.to_keyvals() == kv);
    CHECK(back.de.NP == 20);
    CHECK(back.functions == cfg.functions);
    CHECK(back.runs == 4);
    REQUIRE(back.obl.has_value());
    CHECK(back.obl->variant == OblVariant::ibetacobl);
}

TEST_CASE("config file save/load and set overrides") {
    auto cfg = small_config();
    const auto path = temp_path("oppde_cfg_test.conf");
    cfg.save(path);
    auto loaded = ExperimentConfig::load(path);
    CHECK(loaded.to_keyvals() == cfg.to_keyvals());
    loaded.set("de.F", "0.7");
    loaded.set("runs", "9");
    loaded.set("obl.variant", "qobl");
    CHECK(loaded.de.F == 0.7);
    CHECK(loaded.runs == 9);
    CHECK(loaded.obl->variant == OblVariant::qobl);
    CHECK_THROWS_AS(loaded.set("no.such.key", "1"), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("default checkpoints: 16 log-spaced fractions ending at 1") {
    const auto cps = ExperimentConfig::default_checkpoints();
    REQUIRE(cps.size() == 16);
    CHECK(cps.front() == doctest::Approx(0.01));
    CHECK(cps.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < cps.size(); ++i) CHECK(cps[i] > cps[i - 1]);
}

TEST_CASE("experiment produces one record per cell with pinned seeds") {
    const auto cfg = small_config();
    const auto result = run_experiment(cfg, 2);
    REQUIRE(result.records.size() == 2 * 1 * 4); // functions x dims x runs
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto& r = result.records[i];
        CHECK(r.seed == cfg.base_seed + (i % 4));
        CHECK(r.checkpoint_fevs.size() == 2);
        CHECK(r.nfes_used <= cfg.de.budget_max);
    }
    // worker count must not change results
    const auto serial = run_experiment(cfg, 1);
    REQUIRE(serial.records.size() == result.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].final_fev == result.records[i].final_fev);
        CHECK(serial.records[i].checkpoint_fevs == result.records[i].checkpoint_fevs);
    }
}

TEST_CASE("summaries aggregate per (function, dimension)") {
    const auto result = run_experiment(small_config(), 2);
    const auto rows = summarize(result);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.dimension == 5);
        CHECK(row.algorithm == "ibetacode");
        CHECK(row.std_fev >= 0.0);
    }
}

TEST_CASE("CSV and JSON emission have the advertised shape") {
    const auto result = run_experiment(small_config(), 2);
    const auto csv = temp_path("oppde_emit_test.csv");
    const auto json = temp_path("oppde_emit_test.json");
    emit_csv(result, csv);
    emit_json(result, json);

    const auto text = slurp(csv);
    std::istringstream lines(text);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "run,seed,function,D,algorithm,checkpoint_1,checkpoint_2,final_fev,nfes,wall_ms");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 8);

    const auto jtext = slurp(json);
    CHECK(jtext.find("xoshiro256++/1.0") != std::string::npos);
    CHECK(jtext.find("\"de.NP\"") != std::string::npos);
    std::remove(csv.c_str());
    std::remove(json.c_str());
}

TEST_CASE("comparison table from a merged CSV") {
    // run the same small experiment under two labels; with identical configs
    // the verdicts against the reference must be '=' everywhere.
    auto a = small_config();
    a.algorithm_label = "alg_a";
    auto b = small_config();
    b.algorithm_label = "alg_b";
    b.de.F = 0.9; // different algorithm, same seeds
    const auto ra = run_experiment(a, 2);
    const auto rb = run_experiment(b, 2);
    const auto pa = temp_path("oppde_cmp_a.csv");
    const auto merged = temp_path("oppde_cmp_merged.csv");
    emit_csv(ra, pa);
    emit_csv(rb, merged); // write b first, then append a's data rows
    {
        std::ifstream in(pa);
        std::string line;
        std::getline(in, line); // drop header
        std::ofstream out(merged, std::ios::app);
        while (std::getline(in, line)) out << line << "\n";
    }
    const auto rows = compare_from_csv(merged, "alg_a", 0.05);
    REQUIRE(rows.size() == 4); // both algorithms on two functions; reference rows carry '='
    int compared = 0;
    for (const auto& row : rows) {
        CHECK(row.p_raw >= 0.0);
        CHECK(row.p_raw <= 1.0);
        CHECK(row.p_hochberg >= row.p_raw);
        CHECK((row.symbol == '+' || row.symbol == '=' || row.symbol == '-'));
        if (row.algorithm == "alg_a") {
            CHECK(row.symbol == '=');
            CHECK(row.p_raw == 1.0);
        } else {
            ++compared;
        }
    }
    CHECK(compared == 2);
    const auto out_csv = temp_path("oppde_cmp_out.csv");
    emit_compare_csv(rows, out_csv);
    CHECK(slurp(out_csv).find("alg_b") != std::string::npos);
    std::remove(pa.c_str());
    std::remove(merged.c_str());
    std::remove(out_csv.c_str());
}

TEST_CASE("emitted CSVs are byte-identical across repeated runs") {
    const auto cfg = small_config();
    const auto p1 = temp_path("oppde_repeat_1.csv");
    const auto p2 = temp_path("oppde_repeat_2.csv");
    emit_csv(run_experiment(cfg, 2), p1);
    emit_csv(run_experiment(cfg, 1), p2);
    // strip the wall-clock column before comparing
    auto strip = [](const std::string& text) {
        std::istringstream in(text);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line)) {
            const auto cut = line.rfind(',');
            out << line.substr(0, cut) << "\n";
        }
        return out.str();
    };
    CHECK(strip(slurp(p1)) == strip(slurp(p2)));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}
