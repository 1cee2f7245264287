#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dms/matrix.hpp"
#include "dms/max_test.hpp"
#include "dms/scale.hpp"
#include "dms/sum_test.hpp"

namespace dms {

// Which max component enters the combination. dms0 pairs the unweighted max
// with the sum test; dms05 pairs the trimmed weighted max with the sum test.
// The sum component always uses the gamma = 1/2 field.
enum class DmsVariant { dms0, dms05 };

struct DmsReport {
    DmsVariant variant = DmsVariant::dms05;
    double alpha = 0.05;
    double p_max = 1.0;
    double p_sum = 1.0;
    double fisher_stat = 0.0; // -2 (log p_max + log p_sum)
    double p_combined = 1.0;
    bool reject = false;
    MaxTestReport max_component;
    SumTestReport sum_component;
    std::vector<std::string> warnings;
};

// Fisher's statistic -2 (log p1 + log p2); zero inputs are clamped to 1e-300.
double fisher_statistic(double p1, double p2);

// Combined p-value 1 - F_{chi^2_4}(fisher_statistic), in closed form.
double fisher_combine(double p1, double p2);

// Bonferroni-flavored alternative: 1 - (1 - min(p1, p2))^2.
double minp_combine(double p1, double p2);

// Full adaptive test with difference-based scales. lambda_n = 0 selects the
// default trim floor(0.2 n) (used by dms05 only). A sum-side variance failure
// propagates as CalibrationError: the combination is unavailable rather than
// silently falling back to the max component.
DmsReport dms_test(const DataMatrix& x, DmsVariant variant, std::size_t lambda_n = 0,
                   double alpha = 0.05);

struct WzwyReport {
    double statistic = 0.0;
    double p_value = 1.0;
    double s = 0.0;
    double v = 0.0;
    double m_dag = 0.0;
    double threshold = 0.0;
    std::size_t lambda_n = 0;
    std::size_t n = 0;
    std::size_t p = 0;
    double alpha = 0.05;
    bool reject = false;
};

// Screening threshold sqrt((2 log(np))^1.1).
double wzwy_threshold(std::size_t n, std::size_t p);

// Sum statistic standardized by the plug-in variance plus a max-screening
// boost: (S - (n+2)p) / sqrt(V) + c_np sqrt(V) 1{M > h_np}.
double wzwy_stat(double s, double v, double m_dag, std::size_t n, std::size_t p,
                 double c_np, double h_np);
double wzwy_stat(double s, double v, double m_dag, std::size_t n, std::size_t p);

WzwyReport run_wzwy_test(const DataMatrix& x, std::size_t lambda_n = 0, double alpha = 0.05);

// Everything the Monte Carlo driver needs from one dataset, computed with the
// expensive pieces (scales, fields, plug-ins) shared across methods.
struct TestNeeds {
    bool max0 = true;
    bool max05 = true;
    bool sum = true; // also required by dms0/dms05/wzwy
    bool wzwy = true;
};

struct AllTests {
    double m_stat = 0.0;
    double m_dag_stat = 0.0;
    double s_stat = 0.0;
    double v_hat = 0.0;
    double z = 0.0;
    double p_max0 = 1.0;
    double p_max05 = 1.0;
    double p_sum = 1.0;
    double p_wzwy = 1.0;
    double p_dms0 = 1.0;
    double p_dms05 = 1.0;
};

AllTests run_all_tests(const DataMatrix& x, std::size_t lambda_n = 0,
                       const TestNeeds& needs = {},
                       const ScaleEstimates* scales = nullptr);

} // namespace dms
