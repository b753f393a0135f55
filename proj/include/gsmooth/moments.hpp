#pragma once

#include "gsmooth/ordering.hpp"
#include "gsmooth/phasespace.hpp"

namespace gsmooth {

enum class EstimateMethod { grid_quadrature, monte_carlo };

struct MomentEstimate {
    complex value;
    double std_error;  // zero exactly for grid quadrature
    EstimateMethod method;
    OrderingParams params;
};

inline constexpr double kParamTolerance = 1e-9;

/// Throws ParamMismatch unless the field's widths produce `params`
/// (s = -4 sigma1 sigma2 and e^{2r} = sigma2/sigma1, both within 1e-9).
void require_consistent(const PhaseSpaceField& field, const OrderingParams& params);

/// sum c_nm * integrate_moment(field, n, m, r) + constant.
MomentEstimate expectation_from_g(const PhaseSpaceField& field, const OrderingExpansion& expansion);

/// <a^dagger a> from a smoothed field:
///   int G [-(beta*^2 + beta^2) sinh(2r)/2 + |beta|^2 cosh(2r)] + (s/2) cosh(2r) - 1/2,
/// which for |r| < 1e-12 is int G |alpha|^2 + (s - 1)/2.
MomentEstimate photon_number_from_g(const PhaseSpaceField& field, const OrderingParams& params);

/// The same quantity when G is wrongly treated as the Q function:
/// int G |alpha|^2 - 1.
double photon_number_assuming_q(const PhaseSpaceField& field);

/// Additive term (s + 1)/2 that separates the two formulas above.
/// Throws UnphysicalS for s > -1.
double correction_factor(double s);

}  // namespace gsmooth
