#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dms/matrix.hpp"

namespace dms {

enum class CovarianceKind { identity, ar_toeplitz, block_diag };
enum class NoiseKind { gaussian, student_t };

inline constexpr double ar_rho = 0.5;
inline constexpr std::size_t block_size = 5;
inline constexpr double block_off_diag = 0.5;
inline constexpr double student_t_df = 5.0;

// One simulation cell. Rows follow X_i = delta 1{i > tau} + eps_i with
// tau = floor(tau_frac * n) and delta_j = sqrt(delta_norm_sq / sparsity_k) on
// the first sparsity_k coordinates. delta_norm_sq = 0 (or tau_frac = 1) is the
// no-change null. Innovations are standardized to unit variance.
struct ScenarioConfig {
    std::size_t n = 0;
    std::size_t p = 0;
    CovarianceKind covariance = CovarianceKind::ar_toeplitz;
    NoiseKind noise = NoiseKind::gaussian;
    double tau_frac = 1.0;
    std::size_t sparsity_k = 0;
    double delta_norm_sq = 0.0;
    std::uint64_t seed = 0;

    bool is_null() const { return delta_norm_sq == 0.0 || tau_frac >= 1.0; }
    void validate() const; // throws ConfigError
};

// Dense covariance matrix for the given kind, row-major p x p. Small-p test
// and diagnostic use; generation itself never materializes it.
std::vector<double> covariance_dense(CovarianceKind kind, std::size_t p);

// Draws datasets for one cell. The Cholesky factor of the covariance is
// prepared once; generate() is const and thread-safe, so replications can run
// concurrently with per-replication seeds.
class DatasetSampler {
public:
    explicit DatasetSampler(const ScenarioConfig& cfg);

    DataMatrix generate(std::uint64_t seed) const;
    DataMatrix generate() const { return generate(cfg_.seed); }

    // Materialized lower Cholesky factor, row-major p x p.
    std::vector<double> cholesky_dense() const;

    const ScenarioConfig& config() const { return cfg_; }

private:
    ScenarioConfig cfg_;
    std::size_t tau_ = 0;              // 1-based; rows i > tau_ get the shift
    std::vector<double> shift_;        // per-column mean shift after tau
    std::vector<double> block_factor_; // 5 x 5 lower factor for block_diag
};

// One-shot convenience wrapper around DatasetSampler.
DataMatrix generate_dataset(const ScenarioConfig& cfg);

} // namespace dms
