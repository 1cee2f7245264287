#include "dms/matrix.hpp"

#include <cmath>
#include <string>

#include "dms/errors.hpp"

namespace dms {

DataMatrix::DataMatrix(std::size_t n, std::size_t p) : n_(n), p_(p) {
    if (n < 4)
        throw InputError("need at least 4 rows, got " + std::to_string(n));
    if (p < 1)
        throw InputError("need at least 1 column");
    values_.assign(n * p, 0.0);
}

void DataMatrix::ensure_finite() const {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < p_; ++j) {
            if (!std::isfinite(values_[i * p_ + j]))
                throw InputError("non-finite value at row " + std::to_string(i + 1) +
                                 ", column " + std::to_string(j + 1));
        }
    }
}

} // namespace dms
