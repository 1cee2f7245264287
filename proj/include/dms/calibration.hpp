#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dms/scenario.hpp"

namespace dms {

// Null-distribution diagnostics: how close the finite-sample statistics sit to
// their asymptotic laws, and how dependent the two combined p-values are.
struct CalibrationConfig {
    ScenarioConfig scenario; // must be a null cell
    std::size_t reps = 0;
    std::size_t lambda_n = 0; // 0 selects floor(0.2 n)
    bool exact_scales = false; // inject the true unit scales instead of estimating
    int threads = 0;
};

struct CalibrationReport {
    std::size_t reps = 0;
    std::size_t errors = 0;
    std::size_t lambda_n = 0;
    // Kolmogorov-Smirnov distances of the transformed statistics against their
    // limits: 2 M^2 - log(2p) and a(y) Mdag - b(y) against the Gumbel law, the
    // standardized sum against N(0, 1).
    double ks_gumbel_unweighted = 0.0;
    double ks_gumbel_weighted = 0.0;
    double ks_normal_sum = 0.0;
    // Dependence between the max-side and sum-side p-values.
    double corr_max0_sum = 0.0;
    double corr_max05_sum = 0.0;
    double chi2_max0_sum = 0.0; // 2x2 chi-square at the 0.2 cut, 1 df
    double chi2_max05_sum = 0.0;
    double chi2_pvalue_max0_sum = 1.0;
    double chi2_pvalue_max05_sum = 1.0;
    std::vector<std::string> warnings;
};

CalibrationReport run_calibration(const CalibrationConfig& cfg);

// Kolmogorov-Smirnov distance of a sample against a continuous cdf.
double ks_distance(std::vector<double> sample, double (*cdf)(double));

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

// Chi-square of the 2x2 table splitting both samples at `cut` (1 df). A table
// with an empty margin returns 0.
double contingency_chi2(const std::vector<double>& a, const std::vector<double>& b, double cut);

} // namespace dms
