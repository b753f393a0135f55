#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "gsmooth/fock.hpp"

namespace gsmooth {

/// Uniform grid shared by both quadrature axes: axis1 = alpha_1 = Re alpha,
/// axis2 = alpha_2 = Im alpha. Must be symmetric about zero with at least 33
/// points per axis.
class QuadratureGrid {
public:
    QuadratureGrid(double min, double max, double step);

    static QuadratureGrid standard() { return QuadratureGrid(-8.0, 8.0, 0.05); }

    double min() const { return min_; }
    double max() const { return max_; }
    double step() const { return step_; }
    int points() const { return points_; }
    double coordinate(int index) const { return min_ + index * step_; }

    friend bool operator==(const QuadratureGrid&, const QuadratureGrid&) = default;

private:
    double min_;
    double max_;
    double step_;
    int points_;
};

enum class FieldLabel { wigner, husimi, q, g };

std::string_view to_string(FieldLabel label);
FieldLabel parse_field_label(std::string_view text);

/// Gaussian smoothing widths. `physical()` is the simultaneous-measurement
/// uncertainty bound sigma1 * sigma2 >= 1/4.
struct SmoothingWidths {
    double sigma1;
    double sigma2;

    SmoothingWidths(double s1, double s2);
    static SmoothingWidths isotropic(double sigma) { return {sigma, sigma}; }

    bool physical() const { return sigma1 * sigma2 >= 0.25 - 1e-12; }
};

/// Real samples on a QuadratureGrid. values(i, j) is the field at
/// alpha_1 = grid.coordinate(i), alpha_2 = grid.coordinate(j).
class PhaseSpaceField {
public:
    PhaseSpaceField(QuadratureGrid grid, Eigen::MatrixXd values, FieldLabel label, double sigma1, double sigma2);

    const QuadratureGrid& grid() const { return grid_; }
    const Eigen::MatrixXd& values() const { return values_; }
    FieldLabel label() const { return label_; }
    double sigma1() const { return sigma1_; }
    double sigma2() const { return sigma2_; }

    /// Midpoint-rule integral of the field over the grid.
    double integral() const;
    double min_value() const { return values_.minCoeff(); }
    double max_value() const { return values_.maxCoeff(); }
    /// Integrated |value| over the outermost ring of grid cells.
    double boundary_mass() const;

private:
    QuadratureGrid grid_;
    Eigen::MatrixXd values_;
    FieldLabel label_;
    double sigma1_;
    double sigma2_;
};

inline constexpr double kMaxWignerStep = 0.25;
inline constexpr double kBoundaryMassLimit = 1e-12;
inline constexpr double kAliasingLimit = 1e-10;

PhaseSpaceField wigner_grid(const DensityMatrix& rho, const QuadratureGrid& grid);

/// Separable Gaussian convolution (Weierstrass transform) of `field`.
/// Kernels are truncated at 6 sigma and renormalized on the grid; values
/// outside the grid are taken as zero.
PhaseSpaceField smooth(const PhaseSpaceField& field, const SmoothingWidths& widths);

/// Q(alpha) = <alpha|rho|alpha> / pi from coherent-state overlaps.
PhaseSpaceField q_exact_grid(const DensityMatrix& rho, const QuadratureGrid& grid);

/// Smoothed Wigner function computed in the Fourier domain: the symmetric
/// characteristic function Tr(rho exp(i k1 x1 + i k2 x2)) is damped by
/// exp(-sigma1^2 k1^2/2 - sigma2^2 k2^2/2) and transformed back.
PhaseSpaceField g_via_characteristic(const DensityMatrix& rho, const SmoothingWidths& widths,
                                     const QuadratureGrid& grid);

/// Damping factor applied to the characteristic function.
double characteristic_filter(const SmoothingWidths& widths, double k1, double k2);

/// Symmetric characteristic function Tr(rho exp(i k1 x1 + i k2 x2)) with
/// x1 = (a + a^dagger)/2 and x2 = (a - a^dagger)/(2i).
complex characteristic_function(const DensityMatrix& rho, double k1, double k2);

/// Sum over the grid of field * conj(beta)^n * beta^m * step^2 where
/// beta = alpha cosh r + conj(alpha) sinh r. The map has unit Jacobian, so
/// this is the beta-moment of the field.
complex integrate_moment(const PhaseSpaceField& field, int n, int m, double r);

/// alpha -> beta = alpha cosh r + conj(alpha) sinh r.
inline complex to_beta(double alpha1, double alpha2, double r) {
    return {std::exp(r) * alpha1, std::exp(-r) * alpha2};
}

}  // namespace gsmooth
