#pragma once

#include <complex>
#include <variant>

#include <Eigen/Dense>

namespace gsmooth {

using complex = std::complex<double>;

inline constexpr int kDefaultDim = 64;

/// Trace-one Hermitian positive matrix over the truncated Fock basis
/// {|0>, ..., |dim-1>}. Entries are indexed (row, col) = <row|rho|col>.
class DensityMatrix {
public:
    /// Validates Hermiticity, unit trace and positivity; throws InvalidSpec.
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    complex operator()(int row, int col) const { return entries_(row, col); }

    /// Population of the highest retained basis state.
    double top_population() const { return entries_(dim() - 1, dim() - 1).real(); }

private:
    Eigen::MatrixXcd entries_;
};

/// Square operator in the truncated Fock basis.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;

    int dim() const { return static_cast<int>(entries.rows()); }
    static OperatorMatrix identity(int dim) { return {Eigen::MatrixXcd::Identity(dim, dim)}; }
};

inline OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    return {a.entries * b.entries};
}

namespace state {
struct Coherent { complex alpha; };
struct Fock { int n; };
struct Thermal { double mean_photons; };
/// N (|alpha> + e^{i phase} |-alpha>)
struct Cat { complex alpha; double phase; };
/// exp((r a^2 - r a^dagger^2) / 2) |0>; narrows the alpha_1 quadrature for r > 0.
struct SqueezedVacuum { double r; };
}  // namespace state

using StateSpec = std::variant<state::Coherent, state::Fock, state::Thermal, state::Cat,
                               state::SqueezedVacuum>;

inline constexpr double kLeakageLimit = 1e-8;

/// Builds a normalized state; throws LeakageError when the top basis state
/// carries population >= 1e-8 and InvalidSpec for malformed parameters.
DensityMatrix build_state(const StateSpec& spec, int dim = kDefaultDim);

struct LadderPair {
    OperatorMatrix a;
    OperatorMatrix a_dagger;
};

LadderPair ladder_matrices(int dim);

/// b = cosh(r) a + sinh(r) a^dagger; r = 0 gives a exactly.
OperatorMatrix squeezed_ladder(int dim, double r);

/// Quadratures with hbar = m = 1: q = (a + a^dagger)/sqrt(2 omega),
/// p = i sqrt(omega/2) (a^dagger - a).
OperatorMatrix position_matrix(int dim, double omega = 1.0);
OperatorMatrix momentum_matrix(int dim, double omega = 1.0);

/// Tr(rho a^dagger^n a^m) by direct matrix arithmetic. Requires n + m <= dim/2.
complex oracle_moment(const DensityMatrix& rho, int n, int m);

/// Tr(rho O).
complex oracle_expectation(const DensityMatrix& rho, const OperatorMatrix& op);

/// Matrix power that keeps the identity for exponent 0.
Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& base, int exponent);

}  // namespace gsmooth
