#include "gsmooth/moments.hpp"

#include <cmath>
#include <string>

#include "gsmooth/errors.hpp"

namespace gsmooth {

namespace {
constexpr double kZeroSqueeze = 1e-12;
}

void require_consistent(const PhaseSpaceField& field, const OrderingParams& params) {
    const double s_field = -4.0 * field.sigma1() * field.sigma2();
    if (std::abs(s_field - params.s) > kParamTolerance) {
        throw ParamMismatch("field widths give s=" + std::to_string(s_field) + " but the ordering uses s=" +
                            std::to_string(params.s));
    }
    if (std::abs(field.sigma1() * params.kappa_over_omega - field.sigma2()) > kParamTolerance) {
        throw ParamMismatch("field widths give kappa/omega=" + std::to_string(field.sigma2() / field.sigma1()) +
                            " but the ordering uses " + std::to_string(params.kappa_over_omega));
    }
}

MomentEstimate expectation_from_g(const PhaseSpaceField& field, const OrderingExpansion& expansion) {
    require_consistent(field, expansion.params);
    if (expansion.degree() > 6) throw InvalidSpec("expansion degree exceeds 6");
    // The constant multiplies the identity, whose G-moment is the field's normalization.
    complex value = expansion.constant * integrate_moment(field, 0, 0, expansion.params.r);
    for (const auto& [key, c] : expansion.terms) {
        value += c * integrate_moment(field, key.first, key.second, expansion.params.r);
    }
    return {value, 0.0, EstimateMethod::grid_quadrature, expansion.params};
}

MomentEstimate photon_number_from_g(const PhaseSpaceField& field, const OrderingParams& params) {
    require_consistent(field, params);
    const double r = params.r;
    double value;
    if (std::abs(r) < kZeroSqueeze) {
        value = integrate_moment(field, 1, 1, 0.0).real() + 0.5 * (params.s - 1.0);
    } else {
        const complex beta_sq = integrate_moment(field, 0, 2, r);
        const complex beta_conj_sq = integrate_moment(field, 2, 0, r);
        const double beta_abs_sq = integrate_moment(field, 1, 1, r).real();
        value = (-(beta_conj_sq + beta_sq) * (0.5 * std::sinh(2.0 * r))).real() + beta_abs_sq * std::cosh(2.0 * r) +
                0.5 * params.s * std::cosh(2.0 * r) - 0.5;
    }
    return {complex(value, 0.0), 0.0, EstimateMethod::grid_quadrature, params};
}

double photon_number_assuming_q(const PhaseSpaceField& field) {
    return integrate_moment(field, 1, 1, 0.0).real() - 1.0;
}

double correction_factor(double s) {
    if (!std::isfinite(s) || s > -1.0) {
        throw UnphysicalS("s=" + std::to_string(s) + " > -1 would require sigma1*sigma2 < 1/4");
    }
    return 0.5 * (s + 1.0);
}

}  // namespace gsmooth
