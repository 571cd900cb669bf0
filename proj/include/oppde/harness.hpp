#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oppde/de.hpp"
#include "oppde/obl.hpp"

namespace oppde {

/// Flat key=value experiment description (dotted namespaces: de.F,
/// obl.variant, ...). Round-trips losslessly through to_keyvals/from_keyvals.
struct ExperimentConfig {
    DeConfig de;
    std::optional<OblConfig> obl; // nullopt = plain DE/rand/1/bin
    std::string algorithm_label = "de";

    std::vector<std::string> functions;
    std::vector<std::size_t> dimensions;
    int runs = 51;
    std::uint64_t base_seed = 1;
    std::uint64_t transform_seed = 12345;
    /// NFE fractions of the budget at which the best FEV is recorded.
    std::vector<double> checkpoint_fractions;

    static std::vector<double> default_checkpoints(); // 16 log-spaced, 0.01..1

    std::map<std::string, std::string> to_keyvals() const;
    static ExperimentConfig from_keyvals(const std::map<std::string, std::string>& kv);

    static ExperimentConfig load(const std::string& path);
    void save(const std::string& path) const;
    /// "key=value" override, same keys as the file format.
    void set(const std::string& key, const std::string& value);
};

struct ExperimentResult {
    std::vector<RunRecord> records; // ordered by (function, dimension, run)
    ExperimentConfig config;
};

struct SummaryRow {
    std::string function;
    std::size_t dimension;
    std::string algorithm;
    double mean_fev;
    double std_fev;
};

/// Runs every (function, dimension, run) cell; each run owns an independent
/// stream seeded base_seed + run_index, so worker count never changes
/// results. workers = 0 reads OPPDE_WORKERS, defaulting to 1.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0);

std::vector<SummaryRow> summarize(const ExperimentResult& result);

/// CSV schema: run,seed,function,D,algorithm,checkpoint_1..K,final_fev,nfes,wall_ms
void emit_csv(const ExperimentResult& result, const std::string& path);
void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);
/// JSON mirror of the CSV plus the full config echo and the RNG version tag.
void emit_json(const ExperimentResult& result, const std::string& path);

struct TimingReport {
    double t0_ms = 0.0; // reference arithmetic loop
    double t1_ms = 0.0; // 200000 bare evaluations
    double t2_ms = 0.0; // mean of 5 complete runs at a 200000-eval budget
    double complexity = 0.0; // (T2 - T1) / T0
};

/// CEC-style algorithm-complexity measurement for one algorithm on one
/// function/dimension.
TimingReport timing_protocol(const ExperimentConfig& config, const std::string& function,
                             std::size_t dimension);

/// Comparison table for the `compare` subcommand, one row per
/// (function, algorithm) against a reference algorithm.
struct CompareRow {
    std::string function;
    std::string algorithm;
    double mean;
    double stddev;
    char symbol;
    double p_raw;
    double p_hochberg;
};

/// Reads a per-run CSV produced by emit_csv (possibly concatenated across
/// algorithms) and compares every algorithm to `reference` per function with
/// the rank-sum test; Hochberg adjustment is applied across algorithms
/// within each function.
std::vector<CompareRow> compare_from_csv(const std::string& csv_path,
                                         const std::string& reference, double alpha);

void emit_compare_csv(const std::vector<CompareRow>& rows, const std::string& path);

} // namespace oppde
