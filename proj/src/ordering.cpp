#include "gsmooth/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

#include "gsmooth/errors.hpp"

namespace gsmooth {

namespace {

constexpr double kNegligibleCoefficient = 1e-10;

std::int64_t binomial(int n, int k) {
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

std::int64_t factorial(int k) {
    std::int64_t result = 1;
    for (int i = 2; i <= k; ++i) result *= i;
    return result;
}

void require_indices(int n, int m) {
    if (n < 0 || m < 0 || n > kMaxOrderingIndex || m > kMaxOrderingIndex) {
        throw InvalidSpec("ordering indices must lie in [0, " + std::to_string(kMaxOrderingIndex) + "]");
    }
}

void require_truncation(int n, int m, int dim) {
    if (2 * (n + m) > dim) {
        throw TruncationError("n+m=" + std::to_string(n + m) + " exceeds dim/2 for dim " + std::to_string(dim));
    }
}

struct BogoliubovPowers {
    std::vector<Eigen::MatrixXcd> b;
    std::vector<Eigen::MatrixXcd> b_dagger;

    BogoliubovPowers(int dim, double r, int max_power) {
        const OperatorMatrix op = squeezed_ladder(dim, r);
        const Eigen::MatrixXcd op_dagger = op.entries.adjoint();
        b.push_back(Eigen::MatrixXcd::Identity(dim, dim));
        b_dagger.push_back(Eigen::MatrixXcd::Identity(dim, dim));
        for (int p = 1; p <= max_power; ++p) {
            b.push_back(b.back() * op.entries);
            b_dagger.push_back(b_dagger.back() * op_dagger);
        }
    }
};

}  // namespace

OrderingParams::OrderingParams(double s_value, double r_value)
    : s(s_value), r(r_value), kappa_over_omega(std::exp(2.0 * r_value)) {
    if (!std::isfinite(s) || !(s < 0.0)) throw InvalidSpec("ordering parameter s must be finite and negative");
    if (!std::isfinite(r)) throw InvalidSpec("squeeze parameter r must be finite");
}

OrderingParams OrderingParams::from_widths(double sigma1, double sigma2) {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0) || !std::isfinite(sigma1) || !std::isfinite(sigma2)) {
        throw InvalidSpec("widths must be finite and positive");
    }
    return OrderingParams(-4.0 * sigma1 * sigma2, 0.5 * std::log(sigma2 / sigma1));
}

std::vector<OrderingTerm> ordering_terms(int n, int m, double s) {
    require_indices(n, m);
    const double base = -0.5 * s - 0.5;
    std::vector<OrderingTerm> terms;
    double power = 1.0;
    for (int k = 0; k <= std::min(n, m); ++k) {
        const double combinatorial = static_cast<double>(factorial(k) * binomial(n, k) * binomial(m, k));
        terms.push_back({k, combinatorial * power});
        power *= base;
    }
    return terms;
}

std::vector<ExactOrderingTerm> ordering_terms_exact(int n, int m) {
    require_indices(n, m);
    std::vector<ExactOrderingTerm> terms;
    for (int k = 0; k <= std::min(n, m); ++k) {
        const std::int64_t sign = k % 2 == 0 ? 1 : -1;
        terms.push_back({k, sign * factorial(k) * binomial(n, k) * binomial(m, k), std::int64_t{1} << k});
    }
    return terms;
}

OperatorMatrix ordered_monomial_matrix(int n, int m, const OrderingParams& params, int dim) {
    require_indices(n, m);
    require_truncation(n, m, dim);
    const BogoliubovPowers powers(dim, params.r, std::max(n, m));
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [k, c] : ordering_terms(n, m, params.s)) {
        result += c * (powers.b[m - k] * powers.b_dagger[n - k]);
    }
    return {std::move(result)};
}

OperatorMatrix normal_ordered_monomial_matrix(int n, int m, const OrderingParams& params, int dim) {
    require_indices(n, m);
    require_truncation(n, m, dim);
    const BogoliubovPowers powers(dim, params.r, std::max(n, m));
    const double base = 0.5 * (1.0 - params.s);
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Zero(dim, dim);
    double power = 1.0;
    for (int k = 0; k <= std::min(n, m); ++k) {
        const double c = static_cast<double>(factorial(k) * binomial(n, k) * binomial(m, k)) * power;
        result += c * (powers.b_dagger[n - k] * powers.b[m - k]);
        power *= base;
    }
    return {std::move(result)};
}

int OrderingExpansion::degree() const {
    int d = 0;
    for (const auto& [key, c] : terms) d = std::max(d, key.first + key.second);
    return d;
}

complex OrderingExpansion::coefficient(int n, int m) const {
    const auto it = terms.find({n, m});
    return it == terms.end() ? complex(0.0, 0.0) : it->second;
}

OperatorMatrix OrderingExpansion::realize(int dim) const {
    Eigen::MatrixXcd result = constant * Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& [key, c] : terms) {
        result += c * ordered_monomial_matrix(key.first, key.second, params, dim).entries;
    }
    return {std::move(result)};
}

OrderingExpansion expand_in_ordered_basis(const OperatorMatrix& target, const OrderingParams& params, int dim,
                                          int max_degree) {
    if (max_degree < 0 || max_degree > 4) throw InvalidSpec("max_degree must lie in [0, 4]");
    if (dim < 4 * max_degree || dim < 2) throw TruncationError("dim must be at least 4 * max_degree");
    if (target.dim() != dim || target.entries.cols() != dim) {
        throw DimensionMismatch("target operator does not have dimension " + std::to_string(dim));
    }

    std::vector<std::pair<int, int>> basis;  // (0, 0) is the identity
    for (int degree = 0; degree <= max_degree; ++degree)
        for (int n = degree; n >= 0; --n) basis.emplace_back(n, degree - n);

    const int block = truncation_safe_size(dim, std::max(max_degree, 1));
    const Eigen::Index rows = static_cast<Eigen::Index>(block) * block;
    Eigen::MatrixXcd design(rows, static_cast<Eigen::Index>(basis.size()));
    Eigen::VectorXd column_scale(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto [n, m] = basis[c];
        const Eigen::MatrixXcd sub =
            ordered_monomial_matrix(n, m, params, dim).entries.topLeftCorner(block, block);
        design.col(static_cast<Eigen::Index>(c)) = sub.reshaped();
        column_scale(c) = std::max(design.col(static_cast<Eigen::Index>(c)).norm(), 1e-300);
        design.col(static_cast<Eigen::Index>(c)) /= column_scale(c);
    }
    const Eigen::VectorXcd rhs = target.entries.topLeftCorner(block, block).reshaped();

    const Eigen::VectorXcd scaled = design.colPivHouseholderQr().solve(rhs);
    const double residual = (design * scaled - rhs).norm() / std::max(1.0, rhs.norm());
    if (!(residual <= kExpansionTolerance)) {
        throw NotInSpan("target is not spanned by ordered monomials of degree <= " + std::to_string(max_degree) +
                        " (relative residual " + std::to_string(residual) + ")");
    }

    OrderingExpansion expansion(params);
    for (std::size_t c = 0; c < basis.size(); ++c) {
        complex coefficient = scaled(static_cast<Eigen::Index>(c)) / column_scale(c);
        if (std::abs(coefficient.real()) < kNegligibleCoefficient) coefficient.real(0.0);
        if (std::abs(coefficient.imag()) < kNegligibleCoefficient) coefficient.imag(0.0);
        if (basis[c] == std::pair{0, 0}) {
            expansion.constant = coefficient;
        } else if (coefficient != complex(0.0, 0.0)) {
            expansion.terms[basis[c]] = coefficient;
        }
    }
    return expansion;
}

OrderingExpansion photon_number_expansion(const OrderingParams& params) {
    OrderingExpansion e(params);
    const double sh = std::sinh(2.0 * params.r);
    const double ch = std::cosh(2.0 * params.r);
    if (sh != 0.0) {
        e.terms[{2, 0}] = -0.5 * sh;
        e.terms[{0, 2}] = -0.5 * sh;
    }
    e.terms[{1, 1}] = ch;
    e.constant = 0.5 * params.s * ch - 0.5;
    return e;
}

OrderingExpansion qp2_expansion(const OrderingParams& params, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidSpec("omega must be finite and positive");
    const double factor = -std::sqrt(omega * params.kappa_over_omega / 8.0);
    OrderingExpansion e(params);
    e.terms[{0, 3}] = factor;
    e.terms[{3, 0}] = factor;
    e.terms[{1, 2}] = -factor;
    e.terms[{2, 1}] = -factor;
    e.terms[{0, 1}] = -(params.s + 2.0) * factor;
    e.terms[{1, 0}] = -(params.s - 2.0) * factor;
    return e;
}

OperatorMatrix qp2_operator(int dim, double omega) {
    const OperatorMatrix p = momentum_matrix(dim, omega);
    return position_matrix(dim, omega) * p * p;
}

OperatorMatrix ladder_monomial(int n, int m, int dim) {
    if (n < 0 || m < 0) throw InvalidSpec("monomial powers must be nonnegative");
    auto [a, a_dagger] = ladder_matrices(dim);
    return {matrix_power(a_dagger.entries, n) * matrix_power(a.entries, m)};
}

}  // namespace gsmooth
