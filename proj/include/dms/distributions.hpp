#pragma once

namespace dms {

// Smallest p-value the library reports; smaller values are clamped up to keep
// logs of p-values finite downstream.
inline constexpr double min_pvalue = 1e-300;

double gumbel_cdf(double x); // exp(-exp(-x))
double gumbel_sf(double x);  // 1 - gumbel_cdf, stable in the upper tail

double normal_cdf(double z);
double normal_sf(double z); // 0.5 * erfc(z / sqrt(2)), stable for large z

// Chi-squared survival functions in closed form.
double chi_squared4_sf(double x); // exp(-x/2) * (1 + x/2)
double chi_squared1_sf(double x); // erfc(sqrt(x/2))

// Clamp into [min_pvalue, 1].
double clamp_pvalue(double p);

} // namespace dms
