#pragma once

#include <cstddef>

#include "dms/cusum.hpp"
#include "dms/matrix.hpp"
#include "dms/scale.hpp"
#include "dms/sum_test.hpp"

// Direct-from-definition serial implementations. They recompute every partial
// sum and every leave-out set from scratch (O(n^2 p) and worse), which makes
// them slow but hard to get wrong; the optimized kernels are tested and
// benchmarked against them.
namespace dms::reference {

double cusum_value(const DataMatrix& x, std::size_t k, std::size_t j, Weighting gamma,
                   const ScaleEstimates& scales);

CusumField cusum_field(const DataMatrix& x, Weighting gamma, const ScaleEstimates& scales);

double max_stat(const CusumField& c, std::size_t k_lo, std::size_t k_hi);

double sum_stat(const CusumField& c);

// Leave-out difference variance for column j with the given 1-based window
// rows excluded, built by materializing the index set.
double leave_out_variance(const DataMatrix& x, std::size_t j, std::size_t window_start,
                          std::size_t window_len, DifferencingRule rule);

double trace_r2_hat(const DataMatrix& x, DifferencingRule rule = DifferencingRule::literal);

double eps_quad_hat(const DataMatrix& x, DifferencingRule rule = DifferencingRule::literal);

} // namespace dms::reference
