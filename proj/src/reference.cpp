#include "dms/reference.hpp"

#include <cmath>
#include <vector>

#include "dms/errors.hpp"

namespace dms::reference {

double cusum_value(const DataMatrix& x, std::size_t k, std::size_t j, Weighting gamma,
                   const ScaleEstimates& scales) {
    const std::size_t n = x.rows();
    double s_k = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        s_k += x(i, j);
    double s_n = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s_n += x(i, j);

    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double frac = kd / nd;
    double w = 1.0 / std::sqrt(nd);
    if (gamma == Weighting::gamma_half)
        w *= std::pow(frac * (1.0 - frac), -0.5);
    return w * (s_k - frac * s_n) / scales.sigma[j];
}

CusumField cusum_field(const DataMatrix& x, Weighting gamma, const ScaleEstimates& scales) {
    const std::size_t n = x.rows(), p = x.cols();
    CusumField field;
    field.gamma = gamma;
    field.n = n;
    field.p = p;
    field.values.resize((n - 1) * p);
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t j = 0; j < p; ++j)
            field.at(k, j) = cusum_value(x, k, j, gamma, scales);
    return field;
}

double max_stat(const CusumField& c, std::size_t k_lo, std::size_t k_hi) {
    double m = 0.0;
    for (std::size_t k = k_lo; k <= k_hi; ++k)
        for (std::size_t j = 0; j < c.p; ++j)
            m = std::max(m, std::fabs(c.at(k, j)));
    return m;
}

double sum_stat(const CusumField& c) {
    double s = 0.0;
    for (std::size_t k = 1; k < c.n; ++k)
        for (std::size_t j = 0; j < c.p; ++j)
            s += c.at(k, j) * c.at(k, j);
    return s;
}

double leave_out_variance(const DataMatrix& x, std::size_t j, std::size_t window_start,
                          std::size_t window_len, DifferencingRule rule) {
    const std::size_t n = x.rows();
    const std::size_t w_lo = window_start;                  // 1-based
    const std::size_t w_hi = window_start + window_len - 1; // inclusive

    std::vector<std::size_t> kept; // 1-based difference indices i with d_i = X_i - X_{i-1}
    for (std::size_t i = 2; i <= n; ++i) {
        if (i >= w_lo && i <= w_hi)
            continue;
        if (rule == DifferencingRule::strict && i - 1 >= w_lo && i - 1 <= w_hi)
            continue;
        kept.push_back(i);
    }
    if (kept.empty())
        throw InputError("leave-out set is empty");

    double acc = 0.0;
    for (const std::size_t i : kept) {
        const double d = x(i - 1, j) - x(i - 2, j);
        acc += d * d;
    }
    return acc / (2.0 * static_cast<double>(kept.size()));
}

double trace_r2_hat(const DataMatrix& x, DifferencingRule rule) {
    const std::size_t n = x.rows(), p = x.cols();
    double total = 0.0;
    for (std::size_t i = 1; i + 3 <= n; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double var_w = leave_out_variance(x, j, i, 4, rule);
            if (!(var_w > 0.0))
                throw DegenerateColumnError(j + 1, "zero leave-out difference variance");
            const double a = x(i - 1, j) - x(i, j);
            const double b = x(i + 1, j) - x(i + 2, j);
            dot += a * b / var_w;
        }
        total += dot * dot;
    }
    return total / (4.0 * static_cast<double>(n - 3));
}

double eps_quad_hat(const DataMatrix& x, DifferencingRule rule) {
    const std::size_t n = x.rows(), p = x.cols();
    double total = 0.0;
    for (std::size_t i = 1; i + 2 <= n; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double var_w = leave_out_variance(x, j, i, 3, rule);
            if (!(var_w > 0.0))
                throw DegenerateColumnError(j + 1, "zero leave-out difference variance");
            const double a = x(i - 1, j) - x(i, j);
            const double b = x(i, j) - x(i + 1, j);
            dot += a * b / var_w;
        }
        total += dot * dot;
    }
    return total / static_cast<double>(n - 2) - 3.0 * reference::trace_r2_hat(x, rule);
}

} // namespace dms::reference
