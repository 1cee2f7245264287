#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dms/scenario.hpp"

namespace dms {

// The six calibrated tests the Monte Carlo driver knows about.
enum class Method { max0, dms0, max05, sum, wzwy, dms05 };

// Display name used in result tables: Max(0), DMS(0), Max(0.5), Sum, WZWY,
// DMS(0.5).
std::string method_name(Method m);

// Accepts both display names and the compact CLI tokens
// (max0, dms0, max05, sum, wzwy, dms05). Throws ConfigError otherwise.
Method parse_method(const std::string& name);

std::vector<Method> all_methods();

struct MethodRates {
    Method method = Method::max0;
    std::size_t rejections = 0;
    double rate = 0.0;      // rejections / (reps - errors)
    double mc_stderr = 0.0; // sqrt(rate (1 - rate) / (reps - errors))
};

struct ExperimentResult {
    ScenarioConfig config;
    double alpha = 0.05;
    std::size_t lambda_n = 0;
    std::size_t reps = 0;   // requested replications
    std::size_t errors = 0; // replications that raised; excluded from rates
    std::vector<MethodRates> methods;
    double seconds_total = 0.0;
};

struct ExperimentOptions {
    std::size_t reps = 1000;
    double alpha = 0.05;
    std::vector<Method> methods = all_methods();
    std::size_t lambda_n = 0; // 0 selects floor(0.2 n)
    int threads = 0;          // 0 keeps the OpenMP default
};

// Rejection rates for one cell. Replication r uses seed
// mix_seed(cfg.seed, r), so the table is identical for any thread count and
// splitting reps across runs with the same base seed reproduces per-rep
// decisions.
ExperimentResult run_experiment_cell(const ScenarioConfig& cfg, const ExperimentOptions& opt);

// Size study: requires a null cell (no mean change) and reps >= 100.
ExperimentResult run_size_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opt);

// Power study over a grid of alternative cells.
std::vector<ExperimentResult> run_power_experiment(const std::vector<ScenarioConfig>& grid,
                                                   const ExperimentOptions& opt);

} // namespace dms
