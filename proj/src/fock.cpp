#include "gsmooth/fock.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gsmooth/errors.hpp"

namespace gsmooth {

namespace {

constexpr double kTraceTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

void require_dim(int dim) {
    if (dim < 2) throw InvalidSpec("Fock dimension must be >= 2, got " + std::to_string(dim));
}

bool finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Coherent-state amplitudes <n|alpha>, unnormalized over the truncation.
Eigen::VectorXcd coherent_amplitudes(complex alpha, int dim) {
    Eigen::VectorXcd c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

DensityMatrix pure_state(Eigen::VectorXcd psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidSpec("state vector has zero or non-finite norm");
    psi /= norm;
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    // Exact Hermiticity regardless of rounding in the outer product.
    const int dim = static_cast<int>(psi.size());
    for (int j = 0; j < dim; ++j) {
        rho(j, j) = complex(rho(j, j).real(), 0.0);
        for (int k = j + 1; k < dim; ++k) rho(k, j) = std::conj(rho(j, k));
    }
    return DensityMatrix(std::move(rho));
}

void check_leakage(const DensityMatrix& rho) {
    if (rho.top_population() >= kLeakageLimit) {
        throw LeakageError("top Fock level " + std::to_string(rho.dim() - 1) + " carries population " +
                           std::to_string(rho.top_population()) + "; increase dim");
    }
}

struct Builder {
    int dim;

    DensityMatrix operator()(const state::Coherent& s) const {
        if (!finite(s.alpha)) throw InvalidSpec("coherent amplitude must be finite");
        return pure_state(coherent_amplitudes(s.alpha, dim));
    }

    DensityMatrix operator()(const state::Fock& s) const {
        if (s.n < 0 || s.n >= dim) {
            throw InvalidSpec("Fock level " + std::to_string(s.n) + " outside [0, " + std::to_string(dim) + ")");
        }
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(s.n) = 1.0;
        return pure_state(std::move(psi));
    }

    DensityMatrix operator()(const state::Thermal& s) const {
        if (!std::isfinite(s.mean_photons) || s.mean_photons < 0.0) {
            throw InvalidSpec("thermal mean photon number must be finite and >= 0");
        }
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
        const double ratio = s.mean_photons / (1.0 + s.mean_photons);
        double p = 1.0 / (1.0 + s.mean_photons);
        double total = 0.0;
        for (int n = 0; n < dim; ++n) {
            rho(n, n) = p;
            total += p;
            p *= ratio;
        }
        rho /= total;
        return DensityMatrix(std::move(rho));
    }

    DensityMatrix operator()(const state::Cat& s) const {
        if (!finite(s.alpha) || !std::isfinite(s.phase)) throw InvalidSpec("cat parameters must be finite");
        // Normalizing the truncated vector includes the interference term exactly.
        Eigen::VectorXcd psi =
            coherent_amplitudes(s.alpha, dim) + std::polar(1.0, s.phase) * coherent_amplitudes(-s.alpha, dim);
        return pure_state(std::move(psi));
    }

    DensityMatrix operator()(const state::SqueezedVacuum& s) const {
        if (!std::isfinite(s.r)) throw InvalidSpec("squeezing parameter must be finite");
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        const double t = -std::tanh(s.r);
        // c_{2n} = (-tanh r)^n sqrt((2n)!) / (2^n n!), built by ratio.
        double c = 1.0 / std::sqrt(std::cosh(s.r));
        for (int n = 0; 2 * n < dim; ++n) {
            psi(2 * n) = c;
            c *= t * std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (2.0 * (n + 1.0));
        }
        return pure_state(std::move(psi));
    }
};

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw InvalidSpec("density matrix must be square");
    require_dim(static_cast<int>(entries_.rows()));
    for (Eigen::Index j = 0; j < entries_.rows(); ++j) {
        for (Eigen::Index k = 0; k < entries_.cols(); ++k) {
            if (!finite(entries_(j, k))) throw InvalidSpec("density matrix has non-finite entries");
            if (std::abs(entries_(j, k) - std::conj(entries_(k, j))) > kHermitianTolerance) {
                throw InvalidSpec("density matrix is not Hermitian");
            }
        }
    }
    const complex trace = entries_.trace();
    if (std::abs(trace - 1.0) > kTraceTolerance) {
        throw InvalidSpec("density matrix trace " + std::to_string(trace.real()) + " differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw InvalidSpec("density matrix is not positive semidefinite");
    }
}

DensityMatrix build_state(const StateSpec& spec, int dim) {
    require_dim(dim);
    DensityMatrix rho = std::visit(Builder{dim}, spec);
    check_leakage(rho);
    return rho;
}

LadderPair ladder_matrices(int dim) {
    require_dim(dim);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd a_dagger = a.adjoint();
    return {{std::move(a)}, {std::move(a_dagger)}};
}

OperatorMatrix squeezed_ladder(int dim, double r) {
    auto [a, a_dagger] = ladder_matrices(dim);
    if (r == 0.0) return a;
    return {std::cosh(r) * a.entries + std::sinh(r) * a_dagger.entries};
}

OperatorMatrix position_matrix(int dim, double omega) {
    auto [a, a_dagger] = ladder_matrices(dim);
    return {(a.entries + a_dagger.entries) / std::sqrt(2.0 * omega)};
}

OperatorMatrix momentum_matrix(int dim, double omega) {
    auto [a, a_dagger] = ladder_matrices(dim);
    return {complex(0.0, std::sqrt(0.5 * omega)) * (a_dagger.entries - a.entries)};
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& base, int exponent) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(base.rows(), base.cols());
    for (int i = 0; i < exponent; ++i) result = result * base;
    return result;
}

complex oracle_moment(const DensityMatrix& rho, int n, int m) {
    if (n < 0 || m < 0) throw InvalidSpec("moment orders must be nonnegative");
    if (2 * (n + m) > rho.dim()) {
        throw TruncationError("moment order n+m=" + std::to_string(n + m) + " exceeds dim/2 for dim " +
                              std::to_string(rho.dim()));
    }
    auto [a, a_dagger] = ladder_matrices(rho.dim());
    const Eigen::MatrixXcd op = matrix_power(a_dagger.entries, n) * matrix_power(a.entries, m);
    return (rho.entries() * op).trace();
}

complex oracle_expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
    if (op.dim() != rho.dim() || op.entries.cols() != op.entries.rows()) {
        throw DimensionMismatch("operator is " + std::to_string(op.entries.rows()) + "x" +
                                std::to_string(op.entries.cols()) + ", state has dim " + std::to_string(rho.dim()));
    }
    return (rho.entries() * op.entries).trace();
}

}  // namespace gsmooth
