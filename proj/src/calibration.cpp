#include "dms/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <omp.h>

#include "dms/adaptive.hpp"
#include "dms/distributions.hpp"
#include "dms/errors.hpp"
#include "dms/max_test.hpp"
#include "dms/rng.hpp"
#include "dms/scale.hpp"

namespace dms {

double ks_distance(std::vector<double> sample, double (*cdf)(double)) {
    if (sample.empty())
        throw InputError("ks_distance needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    const double nd = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        const double hi = static_cast<double>(i + 1) / nd - f;
        const double lo = f - static_cast<double>(i) / nd;
        d = std::max({d, hi, lo});
    }
    return d;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw InputError("correlation needs two samples of equal size >= 2");
    const double nd = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= nd;
    mb /= nd;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0)
        return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double contingency_chi2(const std::vector<double>& a, const std::vector<double>& b, double cut) {
    if (a.size() != b.size() || a.empty())
        throw InputError("contingency table needs two samples of equal size");
    double n11 = 0, n12 = 0, n21 = 0, n22 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool la = a[i] < cut, lb = b[i] < cut;
        if (la && lb)
            ++n11;
        else if (la)
            ++n12;
        else if (lb)
            ++n21;
        else
            ++n22;
    }
    const double r1 = n11 + n12, r2 = n21 + n22;
    const double c1 = n11 + n21, c2 = n12 + n22;
    if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
        return 0.0;
    const double nd = static_cast<double>(a.size());
    const double det = n11 * n22 - n12 * n21;
    return nd * det * det / (r1 * r2 * c1 * c2);
}

CalibrationReport run_calibration(const CalibrationConfig& cfg) {
    cfg.scenario.validate();
    if (!cfg.scenario.is_null())
        throw ConfigError("calibration runs under the null; remove the mean change");
    if (cfg.reps < 1)
        throw ConfigError("need at least one replication");

    const std::size_t n = cfg.scenario.n, p = cfg.scenario.p;
    const std::size_t lambda = cfg.lambda_n == 0 ? default_trim(n) : cfg.lambda_n;
    if (lambda < 1 || 2 * lambda >= n)
        throw CalibrationError("trimming lambda_n = " + std::to_string(lambda) +
                               " invalid for n = " + std::to_string(n));

    CalibrationReport rep;
    rep.reps = cfg.reps;
    rep.lambda_n = lambda;
    if (cfg.reps < 200)
        rep.warnings.push_back("insufficient replications for distribution diagnostics "
                               "(reps < 200); distances are noisy");

    const DatasetSampler sampler(cfg.scenario);
    ScaleEstimates exact;
    if (cfg.exact_scales)
        exact = injected_scales(std::vector<double>(p, 1.0));

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> t_max0(cfg.reps, nan), t_max05(cfg.reps, nan), zs(cfg.reps, nan);
    std::vector<double> p_max0(cfg.reps, nan), p_max05(cfg.reps, nan), p_sum(cfg.reps, nan);

    // Gumbel normalizers for the transformed statistics.
    const double log2p = std::log(2.0 * static_cast<double>(p));
    const double ratio = static_cast<double>(n) / static_cast<double>(lambda) - 1.0;
    const double y = static_cast<double>(p) * std::log(ratio * ratio);
    if (!(y > 1.0))
        throw CalibrationError("weighted calibration undefined: p * log(h_n) <= 1");
    const double a_norm = std::sqrt(2.0 * std::log(y));
    const double b_norm = 2.0 * std::log(y) + 0.5 * std::log(std::log(y)) -
                          0.5 * std::log(std::numbers::pi);

    const TestNeeds needs{true, true, true, false};
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
    const auto reps = static_cast<long long>(cfg.reps);

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long r = 0; r < reps; ++r) {
        try {
            const DataMatrix x =
                sampler.generate(mix_seed(cfg.scenario.seed, static_cast<std::uint64_t>(r)));
            const AllTests t =
                run_all_tests(x, lambda, needs, cfg.exact_scales ? &exact : nullptr);
            const auto i = static_cast<std::size_t>(r);
            t_max0[i] = 2.0 * t.m_stat * t.m_stat - log2p;
            t_max05[i] = a_norm * t.m_dag_stat - b_norm;
            zs[i] = t.z;
            p_max0[i] = t.p_max0;
            p_max05[i] = t.p_max05;
            p_sum[i] = t.p_sum;
        } catch (const Error&) {
            // marked by the NaN already in place
        }
    }

    auto keep_finite = [](const std::vector<double>& v) {
        std::vector<double> out;
        out.reserve(v.size());
        for (const double x : v)
            if (std::isfinite(x))
                out.push_back(x);
        return out;
    };

    const std::vector<double> f_max0 = keep_finite(t_max0);
    rep.errors = cfg.reps - f_max0.size();
    if (f_max0.empty())
        throw CalibrationError("every calibration replication failed");

    rep.ks_gumbel_unweighted = ks_distance(f_max0, gumbel_cdf);
    rep.ks_gumbel_weighted = ks_distance(keep_finite(t_max05), gumbel_cdf);
    rep.ks_normal_sum = ks_distance(keep_finite(zs), normal_cdf);

    const std::vector<double> q_max0 = keep_finite(p_max0);
    const std::vector<double> q_max05 = keep_finite(p_max05);
    const std::vector<double> q_sum = keep_finite(p_sum);
    rep.corr_max0_sum = pearson_correlation(q_max0, q_sum);
    rep.corr_max05_sum = pearson_correlation(q_max05, q_sum);
    rep.chi2_max0_sum = contingency_chi2(q_max0, q_sum, 0.2);
    rep.chi2_max05_sum = contingency_chi2(q_max05, q_sum, 0.2);
    rep.chi2_pvalue_max0_sum = chi_squared1_sf(rep.chi2_max0_sum);
    rep.chi2_pvalue_max05_sum = chi_squared1_sf(rep.chi2_max05_sum);
    return rep;
}

} // namespace dms
