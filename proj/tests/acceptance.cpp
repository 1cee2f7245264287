// End-to-end acceptance checks: statistical reproduction targets, calibration
// quality, oracle equivalence, invariance and performance. Each criterion
// prints one [PASS]/[FAIL] line; the process exits nonzero if any fail.
// Thresholds are fixed here on purpose; loosening them is not a fix.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <omp.h>

#include "dms/adaptive.hpp"
#include "dms/calibration.hpp"
#include "dms/cusum.hpp"
#include "dms/experiment.hpp"
#include "dms/matrix.hpp"
#include "dms/max_test.hpp"
#include "dms/reference.hpp"
#include "dms/rng.hpp"
#include "dms/scale.hpp"
#include "dms/scenario.hpp"
#include "dms/sum_test.hpp"

using namespace dms;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// ---------------------------------------------------------------- sizes ----

struct SizeRow {
    std::size_t p;
    double target[6]; // Max(0), DMS(0), Max(0.5), Sum, WZWY, DMS(0.5)
};

bool check_size_table(const char* label, CovarianceKind cov, NoiseKind noise,
                      const std::vector<SizeRow>& rows, std::uint64_t seed_base,
                      std::string& detail) {
    const double tol_pp = 2.5;
    bool all_ok = true;
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        ScenarioConfig cfg;
        cfg.n = 200;
        cfg.p = rows[ri].p;
        cfg.covariance = cov;
        cfg.noise = noise;
        cfg.seed = mix_seed(seed_base, ri);

        ExperimentOptions opt;
        opt.reps = 1000;
        opt.alpha = 0.05;

        const ExperimentResult res = run_size_experiment(cfg, opt);
        detail += std::string("\n    ") + label + " p=" + std::to_string(rows[ri].p) + ":";
        for (std::size_t mi = 0; mi < res.methods.size(); ++mi) {
            const double rate_pp = res.methods[mi].rate * 100.0;
            const double want = rows[ri].target[mi];
            const bool ok = std::fabs(rate_pp - want) <= tol_pp;
            all_ok = all_ok && ok;
            detail += " " + std::string(method_name(res.methods[mi].method)) + "=" +
                      fmt(rate_pp) + (ok ? "" : "(!target " + fmt(want) + ")");
        }
        if (res.errors > 0)
            detail += " errors=" + std::to_string(res.errors);
    }
    return all_ok;
}

void criterion_1() {
    const std::vector<SizeRow> rows{{100, {4.3, 6.5, 3.0, 6.4, 6.5, 6.2}},
                                    {200, {3.5, 5.7, 3.3, 5.6, 5.6, 5.7}},
                                    {300, {4.0, 5.7, 2.9, 5.2, 5.2, 4.8}}};
    std::string detail;
    const bool ok = check_size_table("scenario I", CovarianceKind::ar_toeplitz,
                                     NoiseKind::gaussian, rows, 101, detail);
    report(1, "observed sizes, correlated gaussian design (tolerance 2.5pp)", ok, detail);
}

void criterion_2() {
    const std::vector<SizeRow> rows{{100, {5.0, 5.8, 3.7, 4.8, 5.2, 5.8}},
                                    {200, {4.7, 6.5, 5.5, 4.4, 4.8, 6.3}},
                                    {300, {5.5, 6.4, 5.2, 4.1, 4.7, 5.8}}};
    std::string detail;
    const bool ok = check_size_table("scenario II", CovarianceKind::block_diag,
                                     NoiseKind::student_t, rows, 202, detail);
    report(2, "observed sizes, blocked heavy-tailed design (tolerance 2.5pp)", ok, detail);
}

// ---------------------------------------------------------------- power ----

struct PowerCell {
    double rate[3];   // Max(0), Sum, DMS(0)
    double stderr_[3];
};

PowerCell power_cell(double delta, std::size_t k, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.n = 200;
    cfg.p = 200;
    cfg.covariance = CovarianceKind::ar_toeplitz;
    cfg.noise = NoiseKind::gaussian;
    cfg.tau_frac = 0.5;
    cfg.sparsity_k = k;
    cfg.delta_norm_sq = delta;
    cfg.seed = seed;

    ExperimentOptions opt;
    opt.reps = 1000;
    opt.methods = {Method::max0, Method::sum, Method::dms0};

    const ExperimentResult res = run_experiment_cell(cfg, opt);
    PowerCell out;
    for (int i = 0; i < 3; ++i) {
        out.rate[i] = res.methods[i].rate;
        out.stderr_[i] = res.methods[i].mc_stderr;
    }
    return out;
}

void criterion_3() {
    // sparse strong signal: the max side must lead; dense weak signal: the sum
    // side must lead; the combination must track the better of the two
    const PowerCell sparse = power_cell(1.0, 1, 301);
    const PowerCell dense = power_cell(2.0, 50, 302);

    const auto se2 = [](const PowerCell& c, int a, int b) {
        return std::sqrt(c.stderr_[a] * c.stderr_[a] + c.stderr_[b] * c.stderr_[b]);
    };

    const bool sparse_gap = sparse.rate[0] - sparse.rate[1] >= 3.0 * se2(sparse, 0, 1);
    const bool dense_gap = dense.rate[1] - dense.rate[0] >= 3.0 * se2(dense, 0, 1);
    const bool dms_sparse =
        sparse.rate[2] >= std::min(sparse.rate[0], sparse.rate[1]) - 2.0 * se2(sparse, 2, 1);
    const bool dms_dense =
        dense.rate[2] >= std::min(dense.rate[0], dense.rate[1]) - 2.0 * se2(dense, 2, 0);

    std::string detail = "\n    sparse (delta=1, k=1): Max(0)=" + fmt(sparse.rate[0] * 100) +
                         " Sum=" + fmt(sparse.rate[1] * 100) +
                         " DMS(0)=" + fmt(sparse.rate[2] * 100) +
                         "\n    dense (delta=2, k=50): Max(0)=" + fmt(dense.rate[0] * 100) +
                         " Sum=" + fmt(dense.rate[1] * 100) +
                         " DMS(0)=" + fmt(dense.rate[2] * 100);
    report(3, "power ordering: max leads under sparsity, sum under dense shifts",
           sparse_gap && dense_gap && dms_sparse && dms_dense, detail);
}

// ---------------------------------------------------------- calibration ----

void criterion_4() {
    CalibrationConfig cc;
    cc.scenario.n = 500;
    cc.scenario.p = 200;
    cc.scenario.covariance = CovarianceKind::identity;
    cc.scenario.noise = NoiseKind::gaussian;
    cc.scenario.seed = 404;
    cc.reps = 2000;
    const CalibrationReport iid = run_calibration(cc);

    cc.scenario.covariance = CovarianceKind::ar_toeplitz;
    cc.scenario.seed = 405;
    const CalibrationReport ar = run_calibration(cc);

    const bool ok = iid.ks_gumbel_unweighted < 0.06 && iid.ks_gumbel_weighted < 0.08 &&
                    ar.ks_gumbel_unweighted < 0.06;
    const std::string detail =
        "\n    iid: KS(max)=" + fmt(iid.ks_gumbel_unweighted) +
        " (<0.06) KS(weighted max)=" + fmt(iid.ks_gumbel_weighted) + " (<0.08)" +
        "\n    correlated: KS(max)=" + fmt(ar.ks_gumbel_unweighted) + " (<0.06)";
    report(4, "extreme-value calibration of the null max statistics", ok, detail);
}

void criterion_5() {
    CalibrationConfig cc;
    cc.scenario.n = 200;
    cc.scenario.p = 200;
    cc.scenario.covariance = CovarianceKind::ar_toeplitz;
    cc.scenario.noise = NoiseKind::gaussian;
    cc.scenario.seed = 505;
    cc.reps = 2000;
    const CalibrationReport r = run_calibration(cc);

    const bool ok = std::fabs(r.corr_max0_sum) < 0.1 && std::fabs(r.corr_max05_sum) < 0.1 &&
                    r.chi2_pvalue_max0_sum >= 0.01 && r.chi2_pvalue_max05_sum >= 0.01;
    const std::string detail =
        "corr(max0,sum)=" + fmt(r.corr_max0_sum) + " corr(max05,sum)=" + fmt(r.corr_max05_sum) +
        " chi2 p-values " + fmt(r.chi2_pvalue_max0_sum) + "/" + fmt(r.chi2_pvalue_max05_sum);
    report(5, "near-independence of the max-side and sum-side p-values", ok, detail);
}

// ---------------------------------------------------------------- oracle ----

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

void criterion_6() {
    RngEngine gen(606);
    std::normal_distribution<double> nd;
    std::size_t instances = 0;
    std::size_t mismatches = 0;
    while (instances < 120) {
        const std::size_t n = 7 + gen() % 14; // strict windows need n >= 7
        const std::size_t p = 1 + gen() % 5;
        DataMatrix x(n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j)
                x(i, j) = nd(gen);
        ++instances;

        const ScaleEstimates s = difference_variance(x);
        for (Weighting g : {Weighting::gamma_zero, Weighting::gamma_half}) {
            const CusumField fast = compute_cusum_field(x, g, s);
            const CusumField slow = reference::cusum_field(x, g, s);
            for (std::size_t k = 1; k < n; ++k)
                for (std::size_t j = 0; j < p; ++j)
                    if (!close_rel(fast.at(k, j), slow.at(k, j), 1e-9))
                        ++mismatches;
        }
        const CusumField ch = compute_cusum_field(x, Weighting::gamma_half, s);
        if (!close_rel(sum_stat(ch), reference::sum_stat(ch), 1e-9))
            ++mismatches;
        for (DifferencingRule rule : {DifferencingRule::literal, DifferencingRule::strict}) {
            if (!close_rel(trace_r2_hat(x, rule), reference::trace_r2_hat(x, rule), 1e-9))
                ++mismatches;
            if (!close_rel(eps_quad_hat(x, rule), reference::eps_quad_hat(x, rule), 1e-9))
                ++mismatches;
        }
    }
    report(6, "optimized kernels match brute-force implementations",
           mismatches == 0,
           std::to_string(instances) + " instances, " + std::to_string(mismatches) +
               " mismatches");
}

// ------------------------------------------------------------- invariance ----

struct Decisions {
    bool d[6];
    bool operator==(const Decisions& o) const {
        for (int i = 0; i < 6; ++i)
            if (d[i] != o.d[i])
                return false;
        return true;
    }
};

Decisions decide(const DataMatrix& x) {
    const AllTests t = run_all_tests(x);
    const double alpha = 0.05;
    return Decisions{{t.p_max0 < alpha, t.p_dms0 < alpha, t.p_max05 < alpha, t.p_sum < alpha,
                      t.p_wzwy < alpha, t.p_dms05 < alpha}};
}

void criterion_7() {
    RngEngine meta(707);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> scale_draw(0.25, 4.0);
    std::size_t flips = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 80, p = 12;
        ScenarioConfig cfg;
        cfg.n = n;
        cfg.p = p;
        cfg.covariance = CovarianceKind::ar_toeplitz;
        cfg.noise = NoiseKind::gaussian;
        if (rep % 2 == 1) { // alternate null and changed datasets
            cfg.tau_frac = 0.5;
            cfg.sparsity_k = 2;
            cfg.delta_norm_sq = 2.0;
        }
        const DataMatrix x = DatasetSampler(cfg).generate(mix_seed(909, rep));
        const Decisions base = decide(x);

        DataMatrix shifted = x;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j)
                shifted(i, j) += 10.0 + static_cast<double>(j);
        if (!(decide(shifted) == base))
            ++flips;

        DataMatrix scaled = x;
        for (std::size_t j = 0; j < p; ++j) {
            const double c = scale_draw(meta);
            for (std::size_t i = 0; i < n; ++i)
                scaled(i, j) *= c;
        }
        if (!(decide(scaled) == base))
            ++flips;

        DataMatrix permuted(n, p);
        std::vector<std::size_t> order(p);
        for (std::size_t j = 0; j < p; ++j)
            order[j] = j;
        std::shuffle(order.begin(), order.end(), meta);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j)
                permuted(i, j) = x(i, order[j]);
        if (!(decide(permuted) == base))
            ++flips;

        DataMatrix rev(n, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j)
                rev(i, j) = x(n - 1 - i, j);
        if (!(decide(rev) == base))
            ++flips;
    }
    report(7, "decisions invariant to shift, scaling, permutation and reversal",
           flips == 0, "50 datasets x 4 transforms, " + std::to_string(flips) + " flips");
}

// ------------------------------------------------------------ performance ----

void criterion_8() {
    omp_set_num_threads(1);
    ScenarioConfig cfg;
    cfg.n = 2000;
    cfg.p = 2000;
    cfg.covariance = CovarianceKind::identity;
    cfg.noise = NoiseKind::gaussian;
    const DataMatrix x = DatasetSampler(cfg).generate(808);

    const auto t0 = std::chrono::steady_clock::now();
    const DmsReport r = dms_test(x, DmsVariant::dms05);
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();

    report(8, "adaptive test on a 2000 x 2000 matrix in under 5s single-threaded",
           secs < 5.0, fmt(secs) + "s, p=" + fmt(r.p_combined));
}

} // namespace

int main() {
    std::printf("acceptance suite: changepoint tests, calibration and reproduction targets\n");
    const auto t0 = std::chrono::steady_clock::now();

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();

    const auto t1 = std::chrono::steady_clock::now();
    std::printf("%d/8 criteria passed (%.1fs total)\n", 8 - g_failures,
                std::chrono::duration<double>(t1 - t0).count());
    return g_failures == 0 ? 0 : 1;
}
