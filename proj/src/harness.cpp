#include "oppde/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "oppde/stats.hpp"

namespace oppde {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string policy_kind_name(JumpingPolicyKind k) {
    switch (k) {
        case JumpingPolicyKind::constant: return "constant";
        case JumpingPolicyKind::linear_decreasing: return "linear_decreasing";
        case JumpingPolicyKind::protective: return "protective";
    }
    return "?";
}

JumpingPolicyKind policy_kind_from_name(const std::string& s) {
    if (s == "constant") return JumpingPolicyKind::constant;
    if (s == "linear_decreasing") return JumpingPolicyKind::linear_decreasing;
    if (s == "protective") return JumpingPolicyKind::protective;
    throw std::invalid_argument("unknown jumping policy '" + s + "'");
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace

std::vector<double> ExperimentConfig::default_checkpoints() {
    std::vector<double> out;
    const double lo = std::log(0.01), hi = std::log(1.0);
    for (int i = 0; i < 16; ++i)
        out.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / 15.0));
    out.back() = 1.0;
    return out;
}

std::map<std::string, std::string> ExperimentConfig::to_keyvals() const {
    std::map<std::string, std::string> kv;
    kv["algorithm"] = algorithm_label;
    kv["de.F"] = fmt(de.F);
    kv["de.CR"] = fmt(de.CR);
    kv["de.NP"] = std::to_string(de.NP);
    kv["de.jumping_rate"] = fmt(de.jumping_rate);
    kv["de.diversity_threshold"] = fmt(de.diversity_threshold);
    kv["budget"] = std::to_string(de.budget_max);
    kv["obl.enabled"] = obl ? "true" : "false";
    if (obl) {
        kv["obl.variant"] = obl_variant_name(obl->variant);
        kv["obl.crossover"] = crossover_name(obl->partial_crossover);
        kv["obl.diversity"] = diversity_name(obl->diversity);
        kv["obl.DT"] = fmt(obl->diversity_threshold);
        kv["obl.T"] = fmt(obl->segment_length);
        kv["obl.policy"] = policy_kind_name(obl->policy.kind);
        kv["obl.policy.rate"] = fmt(obl->policy.rate);
        kv["obl.policy.rate_max"] = fmt(obl->policy.rate_max);
        kv["obl.policy.rate_min"] = fmt(obl->policy.rate_min);
        kv["obl.policy.failure_window"] = std::to_string(obl->policy.failure_window);
    }
    kv["functions"] = join(functions);
    kv["dimensions"] = join(dimensions);
    kv["runs"] = std::to_string(runs);
    kv["base_seed"] = std::to_string(base_seed);
    kv["transform_seed"] = std::to_string(transform_seed);
    kv["checkpoints"] = join(checkpoint_fractions.empty() ? default_checkpoints()
                                                         : checkpoint_fractions);
    return kv;
}

ExperimentConfig ExperimentConfig::from_keyvals(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    cfg.checkpoint_fractions = default_checkpoints();
    for (const auto& [k, v] : kv) cfg.set(k, v);
    return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    try {
        if (key == "algorithm") algorithm_label = value;
        else if (key == "de.F") de.F = std::stod(value);
        else if (key == "de.CR") de.CR = std::stod(value);
        else if (key == "de.NP") de.NP = std::stoi(value);
        else if (key == "de.jumping_rate") de.jumping_rate = std::stod(value);
        else if (key == "de.diversity_threshold") de.diversity_threshold = std::stod(value);
        else if (key == "budget") de.budget_max = std::stoull(value);
        else if (key == "obl.enabled") {
            if (value == "true" && !obl)
                obl = make_default_obl_config(OblVariant::ibetacobl, de.jumping_rate);
            else if (value == "false")
                obl.reset();
        } else if (key.rfind("obl.", 0) == 0) {
            if (!obl) obl = make_default_obl_config(OblVariant::ibetacobl, de.jumping_rate);
            if (key == "obl.variant") {
                const OblVariant v = obl_variant_from_name(value);
                const JumpingPolicyConfig keep = obl->policy;
                *obl = make_default_obl_config(v, de.jumping_rate);
                obl->policy = keep;
            } else if (key == "obl.crossover") obl->partial_crossover = crossover_from_name(value);
            else if (key == "obl.diversity") obl->diversity = diversity_from_name(value);
            else if (key == "obl.DT") obl->diversity_threshold = std::stod(value);
            else if (key == "obl.T") obl->segment_length = std::stod(value);
            else if (key == "obl.policy") obl->policy.kind = policy_kind_from_name(value);
            else if (key == "obl.policy.rate") obl->policy.rate = std::stod(value);
            else if (key == "obl.policy.rate_max") obl->policy.rate_max = std::stod(value);
            else if (key == "obl.policy.rate_min") obl->policy.rate_min = std::stod(value);
            else if (key == "obl.policy.failure_window") obl->policy.failure_window = std::stoi(value);
            else throw std::invalid_argument("unknown config key '" + key + "'");
        } else if (key == "functions") functions = split_list(value);
        else if (key == "dimensions") {
            dimensions.clear();
            for (const auto& s : split_list(value))
                dimensions.push_back(static_cast<std::size_t>(std::stoull(s)));
        } else if (key == "runs") runs = std::stoi(value);
        else if (key == "base_seed") base_seed = std::stoull(value);
        else if (key == "transform_seed") transform_seed = std::stoull(value);
        else if (key == "checkpoints") {
            checkpoint_fractions.clear();
            for (const auto& s : split_list(value)) checkpoint_fractions.push_back(std::stod(s));
        } else throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for config key '" + key + "': " + value);
    }
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad config line: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return from_keyvals(kv);
}

void ExperimentConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    for (const auto& [k, v] : to_keyvals()) out << k << '=' << v << '\n';
}

namespace {

struct RunTask {
    std::string function;
    std::size_t dimension;
    int run_index;
};

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    if (config.functions.empty())
        throw std::invalid_argument("run_experiment: no functions configured");
    if (config.dimensions.empty())
        throw std::invalid_argument("run_experiment: no dimensions configured");
    if (config.runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");

    if (workers <= 0) {
        workers = 1;
        if (const char* env = std::getenv("OPPDE_WORKERS")) workers = std::max(1, std::atoi(env));
    }

    std::vector<RunTask> tasks;
    for (const auto& fn : config.functions)
        for (const auto d : config.dimensions)
            for (int r = 0; r < config.runs; ++r) tasks.push_back({fn, d, r});

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) break;
            const auto& t = tasks[i];
            try {
                const TestFunction f = make_function(t.function, t.dimension,
                                                     config.transform_seed);
                DeConfig dc = config.de;
                dc.seed = config.base_seed + static_cast<std::uint64_t>(t.run_index);
                const std::uint64_t budget =
                    dc.budget_max ? dc.budget_max : 10000ULL * t.dimension;
                dc.budget_max = budget;
                std::vector<std::uint64_t> checkpoints;
                const auto& fracs = config.checkpoint_fractions.empty()
                                        ? ExperimentConfig::default_checkpoints()
                                        : config.checkpoint_fractions;
                for (const double fr : fracs)
                    checkpoints.push_back(static_cast<std::uint64_t>(
                        std::llround(fr * static_cast<double>(budget))));

                if (config.obl) {
                    OblConfig oc = *config.obl;
                    oc.diversity_threshold = config.obl->diversity_threshold;
                    OblStrategy strategy(oc);
                    records[i] = run(dc, f, &strategy, checkpoints);
                } else {
                    records[i] = run(dc, f, nullptr, checkpoints);
                }
            } catch (const std::exception& e) {
                std::scoped_lock lk(error_mutex);
                failed = true;
                error_message = e.what();
            }
        }
    };

    if (workers == 1 || tasks.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int n = std::min<std::size_t>(workers, tasks.size());
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed) throw std::runtime_error("run_experiment: " + error_message);

    return ExperimentResult{std::move(records), config};
}

std::vector<SummaryRow> summarize(const ExperimentResult& result) {
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> cells;
    for (const auto& r : result.records)
        cells[{r.function, r.dimension}].push_back(r.final_fev);
    std::vector<SummaryRow> rows;
    for (const auto& [key, fevs] : cells) {
        double mean = 0.0;
        for (const double v : fevs) mean += v;
        mean /= static_cast<double>(fevs.size());
        double var = 0.0;
        for (const double v : fevs) var += (v - mean) * (v - mean);
        var = fevs.size() > 1 ? var / static_cast<double>(fevs.size() - 1) : 0.0;
        rows.push_back({key.first, key.second, result.config.algorithm_label, mean,
                        std::sqrt(var)});
    }
    return rows;
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    if (result.records.empty()) throw std::invalid_argument("emit_csv: no records");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    const std::size_t k = result.records[0].checkpoint_fevs.size();
    out << "run,seed,function,D,algorithm";
    for (std::size_t i = 1; i <= k; ++i) out << ",checkpoint_" << i;
    out << ",final_fev,nfes,wall_ms\n";
    int run_idx = 0;
    std::string last_cell;
    for (const auto& r : result.records) {
        const std::string cell = r.function + "/" + std::to_string(r.dimension);
        if (cell != last_cell) {
            run_idx = 0;
            last_cell = cell;
        }
        out << run_idx++ << ',' << r.seed << ',' << r.function << ',' << r.dimension << ','
            << result.config.algorithm_label;
        for (const double v : r.checkpoint_fevs) out << ',' << v;
        out << ',' << r.final_fev << ',' << r.nfes_used << ',' << r.wall_ms << '\n';
    }
}

void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "function,D,algorithm,mean,std\n";
    for (const auto& r : rows)
        out << r.function << ',' << r.dimension << ',' << r.algorithm << ',' << r.mean_fev
            << ',' << r.std_fev << '\n';
}

void emit_json(const ExperimentResult& result, const std::string& path) {
    nlohmann::json j;
    j["rng_version"] = std::string(rng_version());
    j["config"] = nlohmann::json::object();
    for (const auto& [k, v] : result.config.to_keyvals()) j["config"][k] = v;
    j["records"] = nlohmann::json::array();
    for (const auto& r : result.records) {
        nlohmann::json rec;
        rec["seed"] = r.seed;
        rec["function"] = r.function;
        rec["D"] = r.dimension;
        rec["algorithm"] = result.config.algorithm_label;
        rec["checkpoint_nfes"] = r.checkpoint_nfes;
        rec["checkpoint_fevs"] = r.checkpoint_fevs;
        rec["final_fev"] = r.final_fev;
        rec["nfes"] = r.nfes_used;
        rec["wall_ms"] = r.wall_ms;
        j["records"].push_back(std::move(rec));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::vector<CompareRow> compare_from_csv(const std::string& csv_path,
                                         const std::string& reference, double alpha) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty CSV: " + csv_path);
    const auto cols = split_list(header);
    int fn_col = -1, alg_col = -1, fev_col = -1;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "function") fn_col = static_cast<int>(i);
        if (cols[i] == "algorithm") alg_col = static_cast<int>(i);
        if (cols[i] == "final_fev") fev_col = static_cast<int>(i);
    }
    if (fn_col < 0 || alg_col < 0 || fev_col < 0)
        throw std::runtime_error("CSV missing function/algorithm/final_fev columns");

    // (function, algorithm) -> final FEVs
    std::map<std::string, std::map<std::string, std::vector<double>>> data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto parts = split_list(line);
        if (parts.size() <= static_cast<std::size_t>(std::max({fn_col, alg_col, fev_col})))
            continue;
        data[parts[fn_col]][parts[alg_col]].push_back(std::stod(parts[fev_col]));
    }

    std::vector<CompareRow> rows;
    for (const auto& [fn, per_alg] : data) {
        const auto ref_it = per_alg.find(reference);
        if (ref_it == per_alg.end())
            throw std::runtime_error("reference algorithm '" + reference +
                                     "' absent for function " + fn);
        std::vector<CompareRow> fn_rows;
        std::vector<double> raw_ps;
        for (const auto& [alg, fevs] : per_alg) {
            double mean = 0.0;
            for (const double v : fevs) mean += v;
            mean /= static_cast<double>(fevs.size());
            double var = 0.0;
            for (const double v : fevs) var += (v - mean) * (v - mean);
            var = fevs.size() > 1 ? var / static_cast<double>(fevs.size() - 1) : 0.0;
            CompareRow row{fn, alg, mean, std::sqrt(var), '=', 1.0, 1.0};
            if (alg != reference) {
                const auto v = stats::wilcoxon_rank_sum(fevs, ref_it->second, alpha);
                row.symbol = static_cast<char>(v.symbol);
                row.p_raw = v.p_value;
            }
            fn_rows.push_back(row);
            if (alg != reference) raw_ps.push_back(row.p_raw);
        }
        const auto adj = stats::hochberg_adjust(raw_ps);
        std::size_t ai = 0;
        for (auto& row : fn_rows)
            if (row.algorithm != reference) row.p_hochberg = adj[ai++];
        rows.insert(rows.end(), fn_rows.begin(), fn_rows.end());
    }
    return rows;
}

void emit_compare_csv(const std::vector<CompareRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "function,algorithm,mean,std,symbol,p_raw,p_hochberg\n";
    for (const auto& r : rows)
        out << r.function << ',' << r.algorithm << ',' << r.mean << ',' << r.stddev << ','
            << r.symbol << ',' << r.p_raw << ',' << r.p_hochberg << '\n';
}

} // namespace oppde
