#include "dms/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>

#include <omp.h>

#include "dms/adaptive.hpp"
#include "dms/errors.hpp"
#include "dms/max_test.hpp"
#include "dms/rng.hpp"

namespace dms {

std::string method_name(Method m) {
    switch (m) {
    case Method::max0:
        return "Max(0)";
    case Method::dms0:
        return "DMS(0)";
    case Method::max05:
        return "Max(0.5)";
    case Method::sum:
        return "Sum";
    case Method::wzwy:
        return "WZWY";
    case Method::dms05:
        return "DMS(0.5)";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    for (const Method m : all_methods()) {
        if (name == method_name(m))
            return m;
    }
    if (name == "max0")
        return Method::max0;
    if (name == "dms0")
        return Method::dms0;
    if (name == "max05")
        return Method::max05;
    if (name == "sum" || name == "Sum")
        return Method::sum;
    if (name == "wzwy")
        return Method::wzwy;
    if (name == "dms05")
        return Method::dms05;
    throw ConfigError("unknown method '" + name + "'");
}

std::vector<Method> all_methods() {
    return {Method::max0, Method::dms0, Method::max05,
            Method::sum,  Method::wzwy, Method::dms05};
}

namespace {

double pvalue_of(const AllTests& t, Method m) {
    switch (m) {
    case Method::max0:
        return t.p_max0;
    case Method::dms0:
        return t.p_dms0;
    case Method::max05:
        return t.p_max05;
    case Method::sum:
        return t.p_sum;
    case Method::wzwy:
        return t.p_wzwy;
    case Method::dms05:
        return t.p_dms05;
    }
    return 1.0;
}

TestNeeds needs_for(const std::vector<Method>& methods) {
    TestNeeds needs{false, false, false, false};
    for (const Method m : methods) {
        switch (m) {
        case Method::max0:
            needs.max0 = true;
            break;
        case Method::dms0:
            needs.max0 = needs.sum = true;
            break;
        case Method::max05:
            needs.max05 = true;
            break;
        case Method::sum:
            needs.sum = true;
            break;
        case Method::wzwy:
            needs.wzwy = true;
            break;
        case Method::dms05:
            needs.max05 = needs.sum = true;
            break;
        }
    }
    return needs;
}

} // namespace

ExperimentResult run_experiment_cell(const ScenarioConfig& cfg, const ExperimentOptions& opt) {
    cfg.validate();
    if (opt.reps < 1)
        throw ConfigError("need at least one replication");
    // alpha = 1 is allowed here (a level-1 test rejects by definition); the
    // strict-inequality rule alone would miss p-values clamped to exactly 1.
    if (!(opt.alpha > 0.0 && opt.alpha <= 1.0))
        throw ConfigError("alpha must lie in (0, 1]");
    if (opt.methods.empty())
        throw ConfigError("method list is empty");

    const std::size_t lambda = opt.lambda_n == 0 ? default_trim(cfg.n) : opt.lambda_n;
    const TestNeeds needs = needs_for(opt.methods);
    const bool wants_weighted = needs.max05 || needs.wzwy;
    if (wants_weighted && (lambda < 1 || 2 * lambda >= cfg.n))
        throw CalibrationError("trimming lambda_n = " + std::to_string(lambda) +
                               " invalid for n = " + std::to_string(cfg.n));

    const DatasetSampler sampler(cfg);
    const std::size_t nm = opt.methods.size();
    const auto reps = static_cast<long long>(opt.reps);

    std::vector<std::uint8_t> rejected(opt.reps * nm, 0);
    std::vector<std::uint8_t> errored(opt.reps, 0);

    const int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    const auto t0 = std::chrono::steady_clock::now();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long r = 0; r < reps; ++r) {
        try {
            const DataMatrix x = sampler.generate(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
            const AllTests t = run_all_tests(x, lambda, needs);
            for (std::size_t mi = 0; mi < nm; ++mi) {
                if (opt.alpha >= 1.0 || pvalue_of(t, opt.methods[mi]) < opt.alpha)
                    rejected[static_cast<std::size_t>(r) * nm + mi] = 1;
            }
        } catch (const Error&) {
            errored[static_cast<std::size_t>(r)] = 1;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();

    ExperimentResult res;
    res.config = cfg;
    res.alpha = opt.alpha;
    res.lambda_n = lambda;
    res.reps = opt.reps;
    res.seconds_total = std::chrono::duration<double>(t1 - t0).count();
    for (const std::uint8_t e : errored)
        res.errors += e;

    const std::size_t effective = opt.reps - res.errors;
    for (std::size_t mi = 0; mi < nm; ++mi) {
        MethodRates mr;
        mr.method = opt.methods[mi];
        for (std::size_t r = 0; r < opt.reps; ++r)
            mr.rejections += rejected[r * nm + mi];
        if (effective > 0) {
            mr.rate = static_cast<double>(mr.rejections) / static_cast<double>(effective);
            mr.mc_stderr =
                std::sqrt(mr.rate * (1.0 - mr.rate) / static_cast<double>(effective));
        }
        res.methods.push_back(mr);
    }
    return res;
}

ExperimentResult run_size_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opt) {
    if (!cfg.is_null())
        throw ConfigError("size experiment needs a null cell (delta_norm_sq = 0)");
    if (opt.reps < 100)
        throw ConfigError("size experiment needs at least 100 replications");
    return run_experiment_cell(cfg, opt);
}

std::vector<ExperimentResult> run_power_experiment(const std::vector<ScenarioConfig>& grid,
                                                   const ExperimentOptions& opt) {
    std::vector<ExperimentResult> out;
    out.reserve(grid.size());
    for (const ScenarioConfig& cfg : grid)
        out.push_back(run_experiment_cell(cfg, opt));
    return out;
}

} // namespace dms
