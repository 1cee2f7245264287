#include "dms/cusum.hpp"

#include <cmath>
#include <string>

#include "dms/errors.hpp"

namespace dms {

CusumField compute_cusum_field(const DataMatrix& x, Weighting gamma,
                               const ScaleEstimates& scales) {
    const std::size_t n = x.rows(), p = x.cols();
    if (scales.sigma.size() != p)
        throw InputError("scale estimates cover " + std::to_string(scales.sigma.size()) +
                         " columns, data has " + std::to_string(p));
    for (std::size_t j = 0; j < p; ++j) {
        if (!(scales.sigma[j] > 0.0))
            throw DegenerateColumnError(j + 1, "nonpositive scale");
    }

    CusumField field;
    field.gamma = gamma;
    field.n = n;
    field.p = p;
    field.values.resize((n - 1) * p);

    const double nd = static_cast<double>(n);
    std::vector<double> weight(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        weight[k - 1] = gamma == Weighting::gamma_zero
                            ? 1.0 / std::sqrt(nd)
                            : std::sqrt(nd / (kd * (nd - kd)));
    }

#pragma omp parallel for schedule(static)
    for (long long jj = 0; jj < static_cast<long long>(p); ++jj) {
        const auto j = static_cast<std::size_t>(jj);

        // Column total first, then running prefixes; both Kahan-compensated so
        // the k-th partial sum does not drift for large n.
        double total = 0.0, tc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = x(i, j) - tc;
            const double t = total + y;
            tc = (t - total) - y;
            total = t;
        }

        const double inv_sigma = 1.0 / scales.sigma[j];
        double prefix = 0.0, pc = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            const double y = x(k - 1, j) - pc;
            const double t = prefix + y;
            pc = (t - prefix) - y;
            prefix = t;
            const double centered = prefix - (static_cast<double>(k) / nd) * total;
            field.values[(k - 1) * p + j] = weight[k - 1] * centered * inv_sigma;
        }
    }
    return field;
}

} // namespace dms
