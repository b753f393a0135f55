#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gsmooth/fock.hpp"

namespace gsmooth {

/// Parameters of the ordering rule attached to a Gaussian smoothing:
/// s = -4 sigma1 sigma2 and the Bogoliubov frame b = cosh(r) a + sinh(r) a^dagger
/// with e^{2r} = kappa/omega = sigma2/sigma1.
struct OrderingParams {
    double s;
    double r;
    double kappa_over_omega;

    /// Throws InvalidSpec unless s < 0 and r is finite.
    OrderingParams(double s, double r);
    static OrderingParams from_widths(double sigma1, double sigma2);
};

struct OrderingTerm {
    int k;
    double coefficient;
};

/// Exact form of an ordering coefficient: (numerator / denominator) * (s + 1)^k.
struct ExactOrderingTerm {
    int k;
    std::int64_t numerator;
    std::int64_t denominator;
};

inline constexpr int kMaxOrderingIndex = 8;

/// Coefficients of b^{m-k} b^dagger^{n-k} in {b^dagger^n b^m}:
/// k! C(n,k) C(m,k) (-s/2 - 1/2)^k for k = 0..min(n, m).
std::vector<OrderingTerm> ordering_terms(int n, int m, double s);
std::vector<ExactOrderingTerm> ordering_terms_exact(int n, int m);

/// Matrix of {b^dagger^n b^m} in antinormal order (b powers to the left).
OperatorMatrix ordered_monomial_matrix(int n, int m, const OrderingParams& params, int dim);

/// The same operator written in normal order,
/// sum_k k! C(n,k) C(m,k) ((1 - s)/2)^k b^dagger^{n-k} b^{m-k}.
/// Agrees with ordered_monomial_matrix away from the truncation edge.
OperatorMatrix normal_ordered_monomial_matrix(int n, int m, const OrderingParams& params, int dim);

/// Size of the leading sub-block on which products of `degree` ladder
/// operators are unaffected by truncation.
inline int truncation_safe_size(int dim, int degree) { return dim - degree; }

/// sum_{(n,m)} c_nm {b^dagger^n b^m} + constant.
struct OrderingExpansion {
    std::map<std::pair<int, int>, complex> terms;
    complex constant{0.0, 0.0};
    OrderingParams params;

    explicit OrderingExpansion(OrderingParams p) : params(p) {}

    int degree() const;
    complex coefficient(int n, int m) const;
    OperatorMatrix realize(int dim) const;
};

inline constexpr double kExpansionTolerance = 1e-9;

/// Least-squares expansion of `target` over {b^dagger^n b^m}, n + m <= max_degree,
/// plus the identity, fitted on the truncation-safe sub-block. Throws NotInSpan
/// when the relative Frobenius residual exceeds 1e-9.
OrderingExpansion expand_in_ordered_basis(const OperatorMatrix& target, const OrderingParams& params, int dim,
                                          int max_degree);

/// a^dagger a = -({b^dagger^2} + {b^2}) sinh(2r)/2 + {b^dagger b} cosh(2r) + (s/2) cosh(2r) - 1/2.
OrderingExpansion photon_number_expansion(const OrderingParams& params);

/// q p^2 = -sqrt(kappa/8) [{b^3} + {b^dagger^3} - {b^dagger b^2} - {b^dagger^2 b}
///                         - (s+2){b} - (s-2){b^dagger}]   (hbar = m = 1).
OrderingExpansion qp2_expansion(const OrderingParams& params, double omega = 1.0);

/// The bare product q p p.
OperatorMatrix qp2_operator(int dim, double omega = 1.0);

/// a^dagger^n a^m.
OperatorMatrix ladder_monomial(int n, int m, int dim);

}  // namespace gsmooth
