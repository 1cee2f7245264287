#include "dms/scale.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dms/errors.hpp"

namespace dms {

ScaleEstimates difference_variance(const DataMatrix& x) {
    const std::size_t n = x.rows(), p = x.cols();
    ScaleEstimates out;
    out.kind = ScaleKind::difference;
    out.sigma.resize(p);

#pragma omp parallel for schedule(static)
    for (long long jj = 0; jj < static_cast<long long>(p); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        double acc = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            const double d = x(i, j) - x(i - 1, j);
            acc += d * d;
        }
        out.sigma[j] = std::sqrt(acc / (2.0 * static_cast<double>(n - 1)));
    }

    for (std::size_t j = 0; j < p; ++j) {
        if (out.sigma[j] <= 0.0)
            throw DegenerateColumnError(j + 1, "zero difference-based variance");
    }
    return out;
}

std::size_t default_bartlett_bandwidth(std::size_t n) {
    return static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n)) + 1e-9));
}

ScaleEstimates bartlett_variance(const DataMatrix& x, std::size_t bandwidth) {
    const std::size_t n = x.rows(), p = x.cols();
    const std::size_t b = bandwidth == 0 ? default_bartlett_bandwidth(n) : bandwidth;
    if (b < 1 || b >= n)
        throw ConfigError("bartlett bandwidth " + std::to_string(b) +
                          " out of range [1, " + std::to_string(n - 1) + ")");

    ScaleEstimates out;
    out.kind = ScaleKind::bartlett;
    out.sigma.resize(p);
    std::vector<double> sample_var(p, 0.0);
    std::vector<double> lrv(p, 0.0);

#pragma omp parallel for schedule(static)
    for (long long jj = 0; jj < static_cast<long long>(p); ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mean += x(i, j);
        mean /= static_cast<double>(n);

        double gamma0 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = x(i, j) - mean;
            gamma0 += c * c;
        }
        sample_var[j] = gamma0 / static_cast<double>(n - 1);
        gamma0 /= static_cast<double>(n);

        double acc = gamma0;
        for (std::size_t l = 1; l <= b; ++l) {
            double g = 0.0;
            for (std::size_t i = l; i < n; ++i)
                g += (x(i, j) - mean) * (x(i - l, j) - mean);
            acc += 2.0 * g / static_cast<double>(n - l);
        }
        lrv[j] = acc;
    }

    for (std::size_t j = 0; j < p; ++j) {
        if (sample_var[j] <= 0.0)
            throw DegenerateColumnError(j + 1, "constant column");
        double v = lrv[j];
        if (v <= 0.0) {
            v = 1e-12 * sample_var[j];
            out.warnings.push_back("column " + std::to_string(j + 1) +
                                   ": nonpositive long-run variance clipped");
        }
        out.sigma[j] = std::sqrt(v);
    }
    return out;
}

ScaleEstimates injected_scales(std::vector<double> sigma) {
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        if (!(sigma[j] > 0.0))
            throw DegenerateColumnError(j + 1, "injected scale must be positive");
    }
    ScaleEstimates out;
    out.kind = ScaleKind::injected;
    out.sigma = std::move(sigma);
    return out;
}

} // namespace dms
