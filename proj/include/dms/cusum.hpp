#pragma once

#include <cstddef>
#include <vector>

#include "dms/matrix.hpp"
#include "dms/scale.hpp"

namespace dms {

// Boundary weighting exponent for the CUSUM process.
enum class Weighting { gamma_zero, gamma_half };

// Studentized CUSUM values C(k, j) for every split k = 1..n-1 and column j:
//   C(k, j) = w_k * (S_kj - (k/n) S_nj) / sigma_j,  S_kj = sum_{i<=k} X_ij,
// with w_k = n^{-1/2} under gamma_zero and w_k = sqrt(n / (k (n - k))) under
// gamma_half. Stored row-major by split.
struct CusumField {
    Weighting gamma = Weighting::gamma_zero;
    std::size_t n = 0; // rows of the source data; the field has n-1 splits
    std::size_t p = 0;
    std::vector<double> values; // (k - 1) * p + j for split k in [1, n-1]

    double at(std::size_t k, std::size_t j) const { return values[(k - 1) * p + j]; }
    double& at(std::size_t k, std::size_t j) { return values[(k - 1) * p + j]; }
};

// One pass of compensated prefix sums per column, O(np) total.
CusumField compute_cusum_field(const DataMatrix& x, Weighting gamma,
                               const ScaleEstimates& scales);

} // namespace dms
