#include "dms/distributions.hpp"

#include <algorithm>
#include <cmath>

namespace dms {

double gumbel_cdf(double x) {
    return std::exp(-std::exp(-x));
}

double gumbel_sf(double x) {
    // 1 - exp(-exp(-x)) loses all precision once exp(-x) underflows; expm1 keeps
    // the survival probability accurate out to x ~ 700.
    return -std::expm1(-std::exp(-x));
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double chi_squared4_sf(double x) {
    if (x <= 0.0)
        return 1.0;
    return std::exp(-0.5 * x) * (1.0 + 0.5 * x);
}

double chi_squared1_sf(double x) {
    if (x <= 0.0)
        return 1.0;
    return std::erfc(std::sqrt(0.5 * x));
}

double clamp_pvalue(double p) {
    return std::clamp(p, min_pvalue, 1.0);
}

} // namespace dms
