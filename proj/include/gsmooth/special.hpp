#pragma once

#include <vector>

namespace gsmooth::special {

// Normalized associated Laguerre functions
//
//     F[k][m] = x^{k/2} e^{-x/2} sqrt(m! / (m+k)!) L_m^{(k)}(x)
//
// for 0 <= k < dim and 0 <= m < dim - k. These are the building blocks of
// the Fock-basis matrix elements of the displacement operator and of the
// Wigner kernel. Every entry is bounded by 1 in magnitude; they are filled by
// the three-term recurrence in m, started from a log-space seed so that large
// x neither overflows nor loses the small values.
class LaguerreTable {
public:
    explicit LaguerreTable(int dim);

    void evaluate(double x);

    double operator()(int k, int m) const { return values_[offset_[k] + m]; }
    int dim() const { return dim_; }

private:
    int dim_;
    std::vector<int> offset_;
    std::vector<double> values_;
    std::vector<double> log_factorial_half_;
};

}  // namespace gsmooth::special
