#include "dms/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dms/cusum.hpp"
#include "dms/distributions.hpp"
#include "dms/errors.hpp"

namespace dms {

namespace {

double checked_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw InputError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    return std::max(p, min_pvalue);
}

} // namespace

double fisher_statistic(double p1, double p2) {
    const double a = checked_prob(p1, "p1");
    const double b = checked_prob(p2, "p2");
    return -2.0 * (std::log(a) + std::log(b));
}

double fisher_combine(double p1, double p2) {
    return clamp_pvalue(chi_squared4_sf(fisher_statistic(p1, p2)));
}

double minp_combine(double p1, double p2) {
    const double m = std::min(checked_prob(p1, "p1"), checked_prob(p2, "p2"));
    const double q = 1.0 - m;
    return clamp_pvalue(1.0 - q * q);
}

DmsReport dms_test(const DataMatrix& x, DmsVariant variant, std::size_t lambda_n,
                   double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1), got " + std::to_string(alpha));

    const ScaleEstimates scales = difference_variance(x);

    DmsReport rep;
    rep.variant = variant;
    rep.alpha = alpha;
    rep.max_component = run_max_test(
        x, variant == DmsVariant::dms0 ? MaxVariant::unweighted_gamma0
                                       : MaxVariant::weighted_gamma05,
        lambda_n, &scales);
    rep.sum_component = run_sum_test(x, &scales);
    rep.p_max = rep.max_component.p_value;
    rep.p_sum = rep.sum_component.p_value;
    rep.fisher_stat = fisher_statistic(rep.p_max, rep.p_sum);
    rep.p_combined = clamp_pvalue(chi_squared4_sf(rep.fisher_stat));
    rep.reject = rep.p_combined < alpha;
    return rep;
}

double wzwy_threshold(std::size_t n, std::size_t p) {
    const double lnp = std::log(static_cast<double>(n) * static_cast<double>(p));
    return std::sqrt(std::pow(2.0 * lnp, 1.1));
}

double wzwy_stat(double s, double v, double m_dag, std::size_t n, std::size_t p,
                 double c_np, double h_np) {
    if (!(v > 0.0))
        throw CalibrationError("screening statistic needs a positive variance, got " +
                               std::to_string(v));
    const double centering = static_cast<double>(n + 2) * static_cast<double>(p);
    const double boost = m_dag > h_np ? c_np * std::sqrt(v) : 0.0;
    return (s - centering) / std::sqrt(v) + boost;
}

double wzwy_stat(double s, double v, double m_dag, std::size_t n, std::size_t p) {
    return wzwy_stat(s, v, m_dag, n, p, 100.0, wzwy_threshold(n, p));
}

WzwyReport run_wzwy_test(const DataMatrix& x, std::size_t lambda_n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("alpha must lie in (0, 1), got " + std::to_string(alpha));

    const ScaleEstimates scales = difference_variance(x);
    const CusumField c = compute_cusum_field(x, Weighting::gamma_half, scales);

    WzwyReport rep;
    rep.n = x.rows();
    rep.p = x.cols();
    rep.lambda_n = lambda_n == 0 ? default_trim(rep.n) : lambda_n;
    rep.alpha = alpha;
    rep.s = sum_stat(c);
    rep.m_dag = max_stat_weighted(c, rep.lambda_n);
    const double tr2 = trace_r2_hat(x);
    const double eq = detail::eps_quad_raw(x, DifferencingRule::literal) - 3.0 * tr2;
    rep.v = variance_vnp(rep.n, rep.p, tr2, eq);
    rep.threshold = wzwy_threshold(rep.n, rep.p);
    rep.statistic = wzwy_stat(rep.s, rep.v, rep.m_dag, rep.n, rep.p, 100.0, rep.threshold);
    rep.p_value = clamp_pvalue(normal_sf(rep.statistic));
    rep.reject = rep.p_value < alpha;
    return rep;
}

AllTests run_all_tests(const DataMatrix& x, std::size_t lambda_n, const TestNeeds& needs,
                       const ScaleEstimates* scales) {
    const std::size_t n = x.rows(), p = x.cols();
    const std::size_t lam = lambda_n == 0 ? default_trim(n) : lambda_n;
    const ScaleEstimates local = scales ? *scales : difference_variance(x);

    const bool want_sum = needs.sum || needs.wzwy;
    const bool want_half_field = want_sum || needs.max05;

    AllTests out;

    if (needs.max0) {
        const CusumField c0 = compute_cusum_field(x, Weighting::gamma_zero, local);
        out.m_stat = max_stat_unweighted(c0);
        out.p_max0 = pvalue_max_unweighted(out.m_stat, p);
    }

    if (want_half_field) {
        const CusumField ch = compute_cusum_field(x, Weighting::gamma_half, local);
        if (needs.max05 || needs.wzwy) {
            out.m_dag_stat = max_stat_weighted(ch, lam);
            if (needs.max05)
                out.p_max05 = pvalue_max_weighted(out.m_dag_stat, n, p, lam);
        }
        if (want_sum) {
            out.s_stat = sum_stat(ch);
            const double tr2 = trace_r2_hat(x);
            const double eq = detail::eps_quad_raw(x, DifferencingRule::literal) - 3.0 * tr2;
            out.v_hat = variance_vnp(n, p, tr2, eq);
            out.z = (out.s_stat - static_cast<double>(n + 2) * static_cast<double>(p)) /
                    std::sqrt(out.v_hat);
            out.p_sum = clamp_pvalue(normal_sf(out.z));
        }
        if (needs.wzwy)
            out.p_wzwy = clamp_pvalue(
                normal_sf(wzwy_stat(out.s_stat, out.v_hat, out.m_dag_stat, n, p)));
    }

    if (needs.max0 && needs.sum)
        out.p_dms0 = fisher_combine(out.p_max0, out.p_sum);
    if (needs.max05 && needs.sum)
        out.p_dms05 = fisher_combine(out.p_max05, out.p_sum);

    return out;
}

} // namespace dms
