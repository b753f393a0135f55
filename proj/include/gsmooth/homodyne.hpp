#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gsmooth/moments.hpp"

namespace gsmooth {

/// Eight-port homodyne detector pair with efficiencies eta1, eta2 in (0, 1].
/// The joint count distribution is the Wigner function smoothed with
/// 4 sigma_i^2 = (2 - eta_i) / eta_i, which fixes
///   kappa = omega sigma2/sigma1,  s = -4 sigma1 sigma2,  e^r = sqrt(kappa/omega).
struct DetectorModel {
    double eta1;
    double eta2;
    double omega;
    double sigma1;
    double sigma2;
    double kappa;
    double s;
    double r;

    SmoothingWidths widths() const { return {sigma1, sigma2}; }
    OrderingParams ordering_params() const { return OrderingParams::from_widths(sigma1, sigma2); }
};

/// Throws UnphysicalEfficiency unless 0 < eta_i <= 1 and omega > 0.
DetectorModel detector_params(double eta1, double eta2, double omega = 1.0);

struct QuadratureSample {
    double alpha1;
    double alpha2;

    friend bool operator==(const QuadratureSample&, const QuadratureSample&) = default;
};

struct SampleSet {
    std::vector<QuadratureSample> samples;
    std::uint64_t seed;
    DetectorModel detector;
    std::string state_descriptor;
    std::int64_t count;
};

/// Joint count distribution of the detector pair for `rho` on `grid`.
PhaseSpaceField joint_count_distribution(const DensityMatrix& rho, const DetectorModel& detector,
                                         const QuadratureGrid& grid = QuadratureGrid::standard());

/// Draws `count` grid points from p_ij proportional to G_ij by inverse CDF over
/// the row-major flattened grid. The generator is mt19937_64 seeded with
/// `seed`; uniforms are the top 53 bits of each draw, so identical inputs give
/// bit-identical samples on every platform.
SampleSet sample_joint_counts(const PhaseSpaceField& joint, const DetectorModel& detector, std::int64_t count,
                              std::uint64_t seed, std::string state_descriptor = {});

SampleSet sample_joint_counts(const DensityMatrix& rho, const DetectorModel& detector, std::int64_t count,
                              std::uint64_t seed, std::string state_descriptor = {},
                              const QuadratureGrid& grid = QuadratureGrid::standard());

inline constexpr std::int64_t kMinEstimateSamples = 100;

/// Sample mean of conj(beta)^n beta^m with beta from the detector's r.
/// std_error is the larger of the real/imaginary sample deviations over sqrt(count).
MomentEstimate estimate_moment(const SampleSet& set, int n, int m);

/// Sample mean of the ordered-basis expansion evaluated per sample.
MomentEstimate estimate_expansion(const SampleSet& set, const OrderingExpansion& expansion);

/// Eq.-(22)-style photon number per sample, averaged.
MomentEstimate estimate_photon_number(const SampleSet& set);

struct ReconstructionEntry {
    int n;
    int m;
    MomentEstimate estimate;
    complex oracle;
    double abs_error;
};

struct ReconstructionReport {
    std::vector<ReconstructionEntry> entries;
    DetectorModel detector;
    std::string state_descriptor;
    std::uint64_t seed;
    std::int64_t sample_count;
    double wall_time_seconds;
};

/// Simulates the measurement and recovers <a^dagger^n a^m> for each target
/// (n + m <= 4), comparing against the Fock-space trace.
ReconstructionReport reconstruct(const DensityMatrix& rho, const DetectorModel& detector,
                                 const std::vector<std::pair<int, int>>& targets, std::int64_t count,
                                 std::uint64_t seed, std::string state_descriptor = {},
                                 const QuadratureGrid& grid = QuadratureGrid::standard(),
                                 SampleSet* samples_out = nullptr);

}  // namespace gsmooth
