#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dms {

// Row-major n x p data matrix. Rows are time-ordered observations.
// Requires n >= 4 (the shortest window any estimator needs) and p >= 1.
class DataMatrix {
public:
    DataMatrix(std::size_t n, std::size_t p);

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return p_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * p_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * p_ + j]; }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * p_, p_}; }
    std::span<double> row(std::size_t i) { return {values_.data() + i * p_, p_}; }

    const double* data() const { return values_.data(); }
    double* data() { return values_.data(); }

    // Throws InputError naming the first non-finite cell (1-based row/column).
    void ensure_finite() const;

private:
    std::size_t n_;
    std::size_t p_;
    std::vector<double> values_;
};

} // namespace dms
