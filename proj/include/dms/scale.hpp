#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dms/matrix.hpp"

namespace dms {

enum class ScaleKind { difference, bartlett, injected };

// Per-column scale estimates used to studentize CUSUM values.
struct ScaleEstimates {
    ScaleKind kind = ScaleKind::difference;
    std::vector<double> sigma;          // standard deviations, one per column
    std::vector<std::string> warnings;  // clipping notes, empty when clean
};

// sigma_j^2 = sum_{i=2..n} (X_ij - X_{i-1,j})^2 / (2(n-1)).
// First differences cancel any mean shift, so this stays consistent under the
// alternative. A column with zero estimate raises DegenerateColumnError.
ScaleEstimates difference_variance(const DataMatrix& x);

// Long-run variance through lag `bandwidth`:
// sigma_j^2 = gamma_0 + 2 * sum_{l=1..b} gamma_l with
// gamma_l = (n-l)^{-1} sum_{i=l+1..n} (X_ij - Xbar_j)(X_{i-l,j} - Xbar_j).
// bandwidth 0 selects floor(n^(1/3)). Nonpositive results are clipped to
// 1e-12 times the column sample variance and recorded in warnings; a constant
// column raises DegenerateColumnError.
ScaleEstimates bartlett_variance(const DataMatrix& x, std::size_t bandwidth = 0);

// Wraps externally known scales (calibration runs where the truth is known).
ScaleEstimates injected_scales(std::vector<double> sigma);

std::size_t default_bartlett_bandwidth(std::size_t n);

} // namespace dms
