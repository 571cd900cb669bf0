// Command-line front end: run experiments, compare result CSVs, measure
// algorithm complexity, list registered functions and variants.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "oppde/harness.hpp"
#include "oppde/kernels.hpp"

namespace {

oppde::ExperimentConfig build_config(const std::string& config_path,
                                     const std::vector<std::string>& overrides) {
    oppde::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = oppde::ExperimentConfig::load(config_path);
    else cfg.checkpoint_fractions = oppde::ExperimentConfig::default_checkpoints();
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must be key=value: " + o);
        cfg.set(o.substr(0, eq), o.substr(eq + 1));
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"differential evolution with pluggable opposition-based learning"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_prefix = "results";
    int workers = 0;

    auto* run_cmd = app.add_subcommand("run", "execute a configured experiment");
    run_cmd->add_option("--config", config_path, "key=value config file");
    run_cmd->add_option("--set", overrides, "override config keys (key=value)");
    run_cmd->add_option("--out", out_prefix, "output file prefix");
    run_cmd->add_option("--workers", workers, "worker threads (default: OPPDE_WORKERS or 1)");

    std::string compare_csv, reference = "de", compare_out = "compare.csv";
    double alpha = 0.05;
    auto* cmp_cmd = app.add_subcommand("compare", "rank-sum comparison tables from a run CSV");
    cmp_cmd->add_option("--csv", compare_csv, "per-run CSV (concatenated across algorithms)")
        ->required();
    cmp_cmd->add_option("--reference", reference, "reference algorithm label");
    cmp_cmd->add_option("--alpha", alpha, "significance level");
    cmp_cmd->add_option("--out", compare_out, "comparison table output path");

    std::string timing_function = "sphere";
    std::size_t timing_dim = 30;
    auto* timing_cmd = app.add_subcommand("timing", "T0/T1/T2 algorithm-complexity protocol");
    timing_cmd->add_option("--config", config_path, "key=value config file");
    timing_cmd->add_option("--set", overrides, "override config keys (key=value)");
    timing_cmd->add_option("--function", timing_function, "function name");
    timing_cmd->add_option("--dim", timing_dim, "dimension");

    auto* list_cmd = app.add_subcommand("list", "list functions and OBL variants");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto cfg = build_config(config_path, overrides);
            const auto result = oppde::run_experiment(cfg, workers);
            oppde::emit_csv(result, out_prefix + ".csv");
            oppde::emit_json(result, out_prefix + ".json");
            oppde::emit_summary_csv(oppde::summarize(result), out_prefix + "_summary.csv");
            std::cout << "wrote " << out_prefix << ".csv, " << out_prefix << ".json, "
                      << out_prefix << "_summary.csv (" << result.records.size()
                      << " runs, kernels=" << oppde::kern::ops().name << ")\n";
        } else if (*cmp_cmd) {
            const auto rows = oppde::compare_from_csv(compare_csv, reference, alpha);
            oppde::emit_compare_csv(rows, compare_out);
            std::cout << "wrote " << compare_out << " (" << rows.size() << " rows)\n";
        } else if (*timing_cmd) {
            const auto cfg = build_config(config_path, overrides);
            const auto rep = oppde::timing_protocol(cfg, timing_function, timing_dim);
            std::printf("function=%s D=%zu algorithm=%s\n", timing_function.c_str(),
                        timing_dim, cfg.algorithm_label.c_str());
            std::printf("T0=%.1fms T1=%.1fms T2=%.1fms (T2-T1)/T0=%.2f\n", rep.t0_ms,
                        rep.t1_ms, rep.t2_ms, rep.complexity);
        } else if (*list_cmd) {
            std::cout << "functions:\n";
            for (const auto& f : oppde::list_functions()) std::cout << "  " << f << '\n';
            std::cout << "obl variants:\n";
            for (const auto* v :
                 {"obl", "qobl", "qrobl", "coobl", "gobl", "betacobl", "ibetacobl"})
                std::cout << "  " << v << '\n';
            std::cout << "crossovers:\n  binomial\n  exponential\n  multiple_exponential\n";
            std::cout << "diversity measures:\n  min_distance\n  linear\n  pairwise_naive\n  center\n";
            std::cout << "jumping policies:\n  constant\n  linear_decreasing\n  protective\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
