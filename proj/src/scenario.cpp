#include "dms/scenario.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "dms/errors.hpp"
#include "dms/rng.hpp"

namespace dms {

void ScenarioConfig::validate() const {
    if (n < 4)
        throw ConfigError("scenario needs n >= 4, got " + std::to_string(n));
    if (p < 1)
        throw ConfigError("scenario needs p >= 1");
    if (!(tau_frac > 0.0 && tau_frac <= 1.0))
        throw ConfigError("tau_frac must lie in (0, 1], got " + std::to_string(tau_frac));
    if (delta_norm_sq < 0.0)
        throw ConfigError("delta_norm_sq must be nonnegative");
    if (delta_norm_sq > 0.0 && tau_frac < 1.0) {
        if (sparsity_k < 1)
            throw ConfigError("a change with delta_norm_sq > 0 needs sparsity_k >= 1");
        if (sparsity_k > p)
            throw ConfigError("infeasible cell: sparsity_k = " + std::to_string(sparsity_k) +
                              " exceeds p = " + std::to_string(p));
    }
}

std::vector<double> covariance_dense(CovarianceKind kind, std::size_t p) {
    std::vector<double> sigma(p * p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            double v = 0.0;
            switch (kind) {
            case CovarianceKind::identity:
                v = a == b ? 1.0 : 0.0;
                break;
            case CovarianceKind::ar_toeplitz:
                v = std::pow(ar_rho, std::fabs(static_cast<double>(a) - static_cast<double>(b)));
                break;
            case CovarianceKind::block_diag: {
                const std::size_t full_blocks = p / block_size;
                const bool same_full_block =
                    a / block_size == b / block_size && a / block_size < full_blocks;
                if (a == b)
                    v = 1.0;
                else if (same_full_block)
                    v = block_off_diag;
                break;
            }
            }
            sigma[a * p + b] = v;
        }
    }
    return sigma;
}

DatasetSampler::DatasetSampler(const ScenarioConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    tau_ = static_cast<std::size_t>(cfg_.tau_frac * static_cast<double>(cfg_.n));

    shift_.assign(cfg_.p, 0.0);
    if (!cfg_.is_null()) {
        const double d = std::sqrt(cfg_.delta_norm_sq / static_cast<double>(cfg_.sparsity_k));
        for (std::size_t j = 0; j < cfg_.sparsity_k; ++j)
            shift_[j] = d;
    }

    if (cfg_.covariance == CovarianceKind::block_diag && cfg_.p >= block_size) {
        Eigen::MatrixXd blk = Eigen::MatrixXd::Constant(block_size, block_size, block_off_diag);
        blk.diagonal().setOnes();
        Eigen::LLT<Eigen::MatrixXd> llt(blk);
        if (llt.info() != Eigen::Success)
            throw ConfigError("block covariance is not positive definite");
        const Eigen::MatrixXd l = llt.matrixL();
        block_factor_.assign(block_size * block_size, 0.0);
        for (std::size_t a = 0; a < block_size; ++a)
            for (std::size_t b = 0; b < block_size; ++b)
                block_factor_[a * block_size + b] = l(static_cast<Eigen::Index>(a),
                                                      static_cast<Eigen::Index>(b));
    }
}

DataMatrix DatasetSampler::generate(std::uint64_t seed) const {
    const std::size_t n = cfg_.n, p = cfg_.p;
    DataMatrix x(n, p);

    RngEngine eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::student_t_distribution<double> tdist(student_t_df);
    // t(5) has variance df/(df-2); divide it out so marginals are unit scale.
    const double t_scale = 1.0 / std::sqrt(student_t_df / (student_t_df - 2.0));

    std::vector<double> z(p);
    const double s_ar = std::sqrt(1.0 - ar_rho * ar_rho);
    const std::size_t full = (p / block_size) * block_size;

    for (std::size_t i = 0; i < n; ++i) {
        if (cfg_.noise == NoiseKind::gaussian) {
            for (std::size_t j = 0; j < p; ++j)
                z[j] = gauss(eng);
        } else {
            for (std::size_t j = 0; j < p; ++j)
                z[j] = tdist(eng) * t_scale;
        }

        auto row = x.row(i);
        switch (cfg_.covariance) {
        case CovarianceKind::identity:
            for (std::size_t j = 0; j < p; ++j)
                row[j] = z[j];
            break;
        case CovarianceKind::ar_toeplitz: {
            // Closed-form Cholesky of the AR(1) Toeplitz matrix: a stationary
            // AR recursion across coordinates.
            double prev = z[0];
            row[0] = prev;
            for (std::size_t j = 1; j < p; ++j) {
                prev = ar_rho * prev + s_ar * z[j];
                row[j] = prev;
            }
            break;
        }
        case CovarianceKind::block_diag: {
            for (std::size_t base = 0; base < full; base += block_size) {
                for (std::size_t a = 0; a < block_size; ++a) {
                    double acc = 0.0;
                    for (std::size_t b = 0; b <= a; ++b)
                        acc += block_factor_[a * block_size + b] * z[base + b];
                    row[base + a] = acc;
                }
            }
            for (std::size_t j = full; j < p; ++j)
                row[j] = z[j];
            break;
        }
        }

        if (i + 1 > tau_) {
            for (std::size_t j = 0; j < p; ++j)
                row[j] += shift_[j];
        }
    }
    return x;
}

std::vector<double> DatasetSampler::cholesky_dense() const {
    const std::size_t p = cfg_.p;
    std::vector<double> l(p * p, 0.0);
    switch (cfg_.covariance) {
    case CovarianceKind::identity:
        for (std::size_t j = 0; j < p; ++j)
            l[j * p + j] = 1.0;
        break;
    case CovarianceKind::ar_toeplitz: {
        const double s_ar = std::sqrt(1.0 - ar_rho * ar_rho);
        for (std::size_t a = 0; a < p; ++a) {
            l[a * p + 0] = std::pow(ar_rho, static_cast<double>(a));
            for (std::size_t b = 1; b <= a; ++b)
                l[a * p + b] = s_ar * std::pow(ar_rho, static_cast<double>(a - b));
        }
        break;
    }
    case CovarianceKind::block_diag: {
        const std::size_t full = (p / block_size) * block_size;
        for (std::size_t base = 0; base < full; base += block_size)
            for (std::size_t a = 0; a < block_size; ++a)
                for (std::size_t b = 0; b <= a; ++b)
                    l[(base + a) * p + (base + b)] = block_factor_[a * block_size + b];
        for (std::size_t j = full; j < p; ++j)
            l[j * p + j] = 1.0;
        break;
    }
    }
    return l;
}

DataMatrix generate_dataset(const ScenarioConfig& cfg) {
    return DatasetSampler(cfg).generate();
}

} // namespace dms
