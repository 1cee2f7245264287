#include "dms/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "dms/adaptive.hpp"
#include "dms/calibration.hpp"
#include "dms/errors.hpp"
#include "dms/experiment.hpp"
#include "dms/io.hpp"
#include "dms/rng.hpp"

namespace dms {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_calibration = 3;
constexpr int exit_config = 4;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot open output file '" + path + "'");
    out << text;
}

enum class Format { pretty, json, csv };

Format parse_format(const std::string& label) {
    if (label == "pretty")
        return Format::pretty;
    if (label == "json")
        return Format::json;
    if (label == "csv")
        return Format::csv;
    throw ConfigError("unknown format '" + label + "' (expected pretty, json or csv)");
}

// Flat field,value rows for single-test reports; nested objects get dotted
// prefixes, arrays are joined with ';'.
void flatten_kv(const nlohmann::json& j, const std::string& prefix, std::ostream& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            flatten_kv(*it, key, out);
        } else if (it->is_array()) {
            std::string joined;
            for (const auto& el : *it)
                joined += (joined.empty() ? "" : ";") +
                          (el.is_string() ? el.get<std::string>() : el.dump());
            out << key << ',' << joined << '\n';
        } else if (it->is_string()) {
            out << key << ',' << it->get<std::string>() << '\n';
        } else {
            out << key << ',' << it->dump() << '\n';
        }
    }
}

std::string report_text(const nlohmann::json& j, Format format) {
    if (format == Format::json)
        return j.dump(2) + "\n";
    std::ostringstream out;
    if (format == Format::csv) {
        out << "field,value\n";
        flatten_kv(j, "", out);
        return out.str();
    }
    // pretty: same fields, one per line
    flatten_kv(j, "", out);
    std::string s = out.str();
    for (char& ch : s)
        if (ch == ',')
            ch = '\t';
    return s;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "': " + e.what());
    }
}

void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& known,
                         const std::string& what) {
    if (!j.is_object())
        throw ConfigError(what + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const std::string& k : known)
            if (it.key() == k)
                ok = true;
        if (!ok)
            throw ConfigError(what + ": unknown key '" + it.key() + "'");
    }
}

template <typename T>
std::vector<T> scalar_or_list(const nlohmann::json& j, const std::string& key) {
    std::vector<T> out;
    if (j.is_array()) {
        for (const auto& el : j)
            out.push_back(el.get<T>());
        if (out.empty())
            throw ConfigError("key '" + key + "' must not be an empty list");
    } else {
        out.push_back(j.get<T>());
    }
    return out;
}

void apply_scenario_shorthand(const nlohmann::json& cfg, CovarianceKind& cov, NoiseKind& noise) {
    const bool has_short = cfg.contains("scenario");
    if (has_short && (cfg.contains("covariance") || cfg.contains("noise")))
        throw ConfigError("give either 'scenario' or 'covariance'/'noise', not both");
    if (has_short) {
        const auto s = cfg.at("scenario").get<std::string>();
        if (s == "I") {
            cov = CovarianceKind::ar_toeplitz;
            noise = NoiseKind::gaussian;
        } else if (s == "II") {
            cov = CovarianceKind::block_diag;
            noise = NoiseKind::student_t;
        } else {
            throw ConfigError("unknown scenario '" + s + "' (expected I or II)");
        }
        return;
    }
    if (cfg.contains("covariance"))
        cov = parse_covariance(cfg.at("covariance").get<std::string>());
    if (cfg.contains("noise"))
        noise = parse_noise(cfg.at("noise").get<std::string>());
}

struct SimulatePlan {
    std::vector<ScenarioConfig> grid;
    ExperimentOptions options;
    std::uint64_t base_seed = 0;
};

SimulatePlan load_simulate_plan(const std::string& path) {
    const nlohmann::json cfg = load_json_file(path);
    reject_unknown_keys(cfg,
                        {"scenario", "covariance", "noise", "n", "p", "tau_frac", "sparsity_k",
                         "delta_norm_sq", "reps", "alpha", "seed", "lambda_n", "methods"},
                        "simulate config");

    CovarianceKind cov = CovarianceKind::ar_toeplitz;
    NoiseKind noise = NoiseKind::gaussian;
    apply_scenario_shorthand(cfg, cov, noise);

    if (!cfg.contains("n") || !cfg.contains("p") || !cfg.contains("reps"))
        throw ConfigError("simulate config needs 'n', 'p' and 'reps'");

    const auto n = cfg.at("n").get<std::size_t>();
    const auto ps = scalar_or_list<std::size_t>(cfg.at("p"), "p");
    const auto tau_fracs = cfg.contains("tau_frac")
                               ? scalar_or_list<double>(cfg.at("tau_frac"), "tau_frac")
                               : std::vector<double>{1.0};
    const auto ks = cfg.contains("sparsity_k")
                        ? scalar_or_list<std::size_t>(cfg.at("sparsity_k"), "sparsity_k")
                        : std::vector<std::size_t>{0};
    const auto deltas = cfg.contains("delta_norm_sq")
                            ? scalar_or_list<double>(cfg.at("delta_norm_sq"), "delta_norm_sq")
                            : std::vector<double>{0.0};

    SimulatePlan plan;
    plan.base_seed = cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 0;
    plan.options.reps = cfg.at("reps").get<std::size_t>();
    if (plan.options.reps < 1)
        throw ConfigError("reps must be at least 1");
    if (cfg.contains("alpha"))
        plan.options.alpha = cfg.at("alpha").get<double>();
    if (!(plan.options.alpha > 0.0 && plan.options.alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1)");
    if (cfg.contains("lambda_n"))
        plan.options.lambda_n = cfg.at("lambda_n").get<std::size_t>();
    if (cfg.contains("methods")) {
        plan.options.methods.clear();
        for (const auto& m : cfg.at("methods"))
            plan.options.methods.push_back(parse_method(m.get<std::string>()));
        if (plan.options.methods.empty())
            throw ConfigError("methods list must not be empty");
    }

    // Cross product in fixed order: p, tau_frac, sparsity_k, delta_norm_sq.
    // Every cell gets its own sub-seed so the grid layout, not scheduling,
    // determines each cell's stream.
    std::uint64_t index = 0;
    for (const std::size_t p : ps) {
        for (const double tf : tau_fracs) {
            for (const std::size_t k : ks) {
                for (const double d : deltas) {
                    ScenarioConfig cell;
                    cell.n = n;
                    cell.p = p;
                    cell.covariance = cov;
                    cell.noise = noise;
                    cell.tau_frac = tf;
                    cell.sparsity_k = k;
                    cell.delta_norm_sq = d;
                    cell.seed = mix_seed(plan.base_seed, index++);
                    cell.validate(); // rejects infeasible cells (k > p) up front
                    plan.grid.push_back(cell);
                }
            }
        }
    }
    if (plan.grid.empty())
        throw ConfigError("simulate config produced an empty grid");
    return plan;
}

CalibrationConfig load_calibrate_config(const std::string& path) {
    const nlohmann::json cfg = load_json_file(path);
    reject_unknown_keys(cfg,
                        {"scenario", "covariance", "noise", "n", "p", "reps", "seed",
                         "lambda_n", "exact_scales"},
                        "calibrate config");
    if (!cfg.contains("n") || !cfg.contains("p") || !cfg.contains("reps"))
        throw ConfigError("calibrate config needs 'n', 'p' and 'reps'");

    CalibrationConfig out;
    out.scenario.covariance = CovarianceKind::ar_toeplitz;
    out.scenario.noise = NoiseKind::gaussian;
    apply_scenario_shorthand(cfg, out.scenario.covariance, out.scenario.noise);
    out.scenario.n = cfg.at("n").get<std::size_t>();
    out.scenario.p = cfg.at("p").get<std::size_t>();
    out.scenario.tau_frac = 1.0;
    out.reps = cfg.at("reps").get<std::size_t>();
    if (cfg.contains("seed"))
        out.scenario.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("lambda_n"))
        out.lambda_n = cfg.at("lambda_n").get<std::size_t>();
    if (cfg.contains("exact_scales"))
        out.exact_scales = cfg.at("exact_scales").get<bool>();
    return out;
}

struct TestArgs {
    std::string input;
    std::string variant = "dms05";
    double alpha = 0.05;
    std::size_t lambda_n = 0;
    std::string format = "pretty";
    std::string output;
    int threads = 0;
};

int cmd_test(const TestArgs& a) {
    const Format format = parse_format(a.format);
    if (a.threads > 0)
        omp_set_num_threads(a.threads);
    const Method method = parse_method(a.variant);
    if (!(a.alpha > 0.0 && a.alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1)");

    const DataMatrix x = read_matrix_file(a.input);

    nlohmann::json j;
    try {
        switch (method) {
        case Method::max0:
        case Method::max05: {
            const MaxTestReport rep = run_max_test(
                x,
                method == Method::max0 ? MaxVariant::unweighted_gamma0
                                       : MaxVariant::weighted_gamma05,
                a.lambda_n);
            j = max_report_to_json(rep);
            j["reject"] = rep.p_value < a.alpha;
            j["alpha"] = a.alpha;
            break;
        }
        case Method::sum: {
            const SumTestReport rep = run_sum_test(x);
            j = sum_report_to_json(rep);
            j["reject"] = rep.p_value < a.alpha;
            j["alpha"] = a.alpha;
            break;
        }
        case Method::wzwy:
            j = wzwy_report_to_json(run_wzwy_test(x, a.lambda_n, a.alpha));
            break;
        case Method::dms0:
        case Method::dms05:
            j = dms_report_to_json(dms_test(
                x, method == Method::dms0 ? DmsVariant::dms0 : DmsVariant::dms05,
                a.lambda_n, a.alpha));
            break;
        }
    } catch (const CalibrationError& e) {
        // The combination (or its variance) is unavailable; report that state
        // explicitly instead of inventing a p-value.
        nlohmann::json err{{"status", "calibration_error"}, {"message", e.what()}};
        if (e.has_plugin_values()) {
            err["trace_r2"] = e.trace_r2();
            err["eps_quad"] = e.eps_quad();
        }
        write_text(a.output, report_text(err, format));
        throw;
    }

    write_text(a.output, report_text(j, format));
    return exit_ok;
}

struct SimulateArgs {
    std::string config;
    bool emit_one = false;
    bool has_seed = false;
    std::uint64_t seed = 0;
    bool has_alpha = false;
    double alpha = 0.05;
    std::size_t lambda_n = 0;
    std::string format = "csv";
    std::string output;
    int threads = 0;
};

int cmd_simulate(const SimulateArgs& a) {
    const Format format = parse_format(a.format);
    SimulatePlan plan = load_simulate_plan(a.config);
    if (a.has_alpha) {
        if (!(a.alpha > 0.0 && a.alpha < 1.0))
            throw ConfigError("alpha must lie in (0, 1)");
        plan.options.alpha = a.alpha;
    }
    if (a.lambda_n > 0)
        plan.options.lambda_n = a.lambda_n;
    if (a.threads > 0) {
        omp_set_num_threads(a.threads);
        plan.options.threads = a.threads;
    }
    if (a.has_seed) {
        plan.base_seed = a.seed;
        for (std::size_t i = 0; i < plan.grid.size(); ++i)
            plan.grid[i].seed = mix_seed(a.seed, i);
    }

    if (a.emit_one) {
        const ScenarioConfig& cell = plan.grid.front();
        const DataMatrix x = DatasetSampler(cell).generate(mix_seed(cell.seed, 0));
        std::ostringstream out;
        write_matrix_csv(x, out);
        write_text(a.output, out.str());
        return exit_ok;
    }

    std::vector<ExperimentResult> results;
    results.reserve(plan.grid.size());
    for (std::size_t i = 0; i < plan.grid.size(); ++i) {
        const ScenarioConfig& cell = plan.grid[i];
        std::cerr << "cell " << i + 1 << "/" << plan.grid.size() << ": "
                  << covariance_label(cell.covariance) << " n=" << cell.n << " p=" << cell.p
                  << " tau_frac=" << cell.tau_frac << " k=" << cell.sparsity_k
                  << " delta=" << cell.delta_norm_sq << " ..." << std::flush;
        results.push_back(run_experiment_cell(cell, plan.options));
        std::cerr << " done (" << results.back().seconds_total << "s, errors "
                  << results.back().errors << ")\n";
    }

    std::ostringstream out;
    if (format == Format::csv)
        write_results_csv(results, out);
    else if (format == Format::pretty)
        write_results_pretty(results, out);
    else
        out << results_to_json(results).dump(2) << "\n";
    write_text(a.output, out.str());
    return exit_ok;
}

struct CalibrateArgs {
    std::string config;
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::size_t lambda_n = 0;
    std::string format = "pretty";
    std::string output;
    int threads = 0;
};

int cmd_calibrate(const CalibrateArgs& a) {
    const Format format = parse_format(a.format);
    CalibrationConfig cfg = load_calibrate_config(a.config);
    if (a.has_seed)
        cfg.scenario.seed = a.seed;
    if (a.lambda_n > 0)
        cfg.lambda_n = a.lambda_n;
    if (a.threads > 0) {
        omp_set_num_threads(a.threads);
        cfg.threads = a.threads;
    }

    const CalibrationReport rep = run_calibration(cfg);
    for (const std::string& w : rep.warnings)
        std::cerr << "warning: " << w << "\n";
    write_text(a.output, report_text(calibration_to_json(cfg, rep), format));
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"High-dimensional mean changepoint tests (max, sum and adaptive "
                 "combinations) with asymptotic calibration"};
    app.require_subcommand(1);

    TestArgs ta;
    auto* t = app.add_subcommand("test", "Run a changepoint test on a data matrix");
    t->add_option("input", ta.input, "CSV or whitespace-separated data matrix, rows = time")
        ->required();
    t->add_option("--variant", ta.variant,
                  "Test variant: max0, dms0, max05, sum, wzwy or dms05 (default dms05)");
    t->add_option("--alpha", ta.alpha, "Significance level (default 0.05)");
    t->add_option("--lambda-n", ta.lambda_n,
                  "Trimming for weighted variants (default floor(0.2 n))");
    t->add_option("--format", ta.format, "Output format: pretty, json or csv");
    t->add_option("--output", ta.output, "Write the report here instead of stdout");
    t->add_option("--threads", ta.threads, "OpenMP thread count (default: all cores)");

    SimulateArgs sa;
    auto* s = app.add_subcommand("simulate", "Monte Carlo size/power study over a cell grid");
    s->add_option("--config", sa.config, "JSON experiment configuration")->required();
    s->add_flag("--emit-one", sa.emit_one,
                "Write one generated dataset (first grid cell, replication 0) as CSV");
    auto* s_seed = s->add_option("--seed", sa.seed, "Override the base seed");
    auto* s_alpha = s->add_option("--alpha", sa.alpha, "Override the significance level");
    s->add_option("--lambda-n", sa.lambda_n, "Override the trimming");
    s->add_option("--format", sa.format, "Output format: csv, json or pretty (default csv)");
    s->add_option("--output", sa.output, "Write the result table here instead of stdout");
    s->add_option("--threads", sa.threads, "OpenMP thread count");

    CalibrateArgs ca;
    auto* c = app.add_subcommand("calibrate",
                                 "Null-distribution diagnostics for the asymptotic laws");
    c->add_option("--config", ca.config, "JSON calibration configuration")->required();
    auto* c_seed = c->add_option("--seed", ca.seed, "Override the seed");
    c->add_option("--lambda-n", ca.lambda_n, "Override the trimming");
    c->add_option("--format", ca.format, "Output format: pretty, json or csv");
    c->add_option("--output", ca.output, "Write the report here instead of stdout");
    c->add_option("--threads", ca.threads, "OpenMP thread count");

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("dms-cli");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (std::string& s_arg : full)
        argv.push_back(s_arg.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        sa.has_seed = s_seed->count() > 0;
        sa.has_alpha = s_alpha->count() > 0;
        ca.has_seed = c_seed->count() > 0;

        if (app.got_subcommand(t))
            return cmd_test(ta);
        if (app.got_subcommand(s))
            return cmd_simulate(sa);
        return cmd_calibrate(ca);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const CalibrationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_calibration;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
}

} // namespace dms
