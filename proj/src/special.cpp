#include "gsmooth/special.hpp"

#include <cmath>

namespace gsmooth::special {

LaguerreTable::LaguerreTable(int dim) : dim_(dim), offset_(dim + 1, 0), log_factorial_half_(dim) {
    for (int k = 0; k < dim; ++k) {
        offset_[k + 1] = offset_[k] + (dim - k);
        log_factorial_half_[k] = 0.5 * std::lgamma(k + 1.0);
    }
    values_.assign(offset_[dim], 0.0);
}

void LaguerreTable::evaluate(double x) {
    const double log_x = x > 0.0 ? std::log(x) : 0.0;
    for (int k = 0; k < dim_; ++k) {
        double* f = values_.data() + offset_[k];
        const int count = dim_ - k;
        double seed;
        if (x > 0.0) {
            seed = std::exp(0.5 * k * log_x - 0.5 * x - log_factorial_half_[k]);
        } else {
            seed = k == 0 ? 1.0 : 0.0;
        }
        f[0] = seed;
        if (count == 1) continue;
        f[1] = (1.0 + k - x) / std::sqrt(1.0 + k) * seed;
        for (int m = 1; m + 1 < count; ++m) {
            const double a = (2.0 * m + 1.0 + k - x);
            const double b = std::sqrt(static_cast<double>(m) * (m + k));
            const double norm = std::sqrt((m + 1.0) * (m + 1.0 + k));
            f[m + 1] = (a * f[m] - b * f[m - 1]) / norm;
        }
    }
}

}  // namespace gsmooth::special
