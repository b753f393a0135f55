#include "gsmooth/homodyne.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "gsmooth/errors.hpp"

namespace gsmooth {

namespace {

constexpr double kNegativityTolerance = 1e-9;

double unit_uniform(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void require_efficiency(double eta, const char* name) {
    if (!std::isfinite(eta) || !(eta > 0.0) || eta > 1.0) {
        throw UnphysicalEfficiency(std::string(name) + "=" + std::to_string(eta) + " outside (0, 1]");
    }
}

void require_estimate_count(const SampleSet& set) {
    if (set.count < kMinEstimateSamples) {
        throw InsufficientSamples("need at least " + std::to_string(kMinEstimateSamples) + " samples, have " +
                                  std::to_string(set.count));
    }
}

// Mean and standard error of per-sample complex values.
template <typename PerSample>
MomentEstimate sample_mean(const SampleSet& set, const OrderingParams& params, PerSample f) {
    require_estimate_count(set);
    std::vector<complex> values;
    values.reserve(set.samples.size());
    complex sum = 0.0;
    for (const auto& sample : set.samples) {
        values.push_back(f(to_beta(sample.alpha1, sample.alpha2, set.detector.r)));
        sum += values.back();
    }
    const double n = static_cast<double>(values.size());
    const complex mean = sum / n;
    double var_re = 0.0;
    double var_im = 0.0;
    for (const complex v : values) {
        var_re += (v.real() - mean.real()) * (v.real() - mean.real());
        var_im += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
    }
    var_re /= n - 1.0;
    var_im /= n - 1.0;
    return {mean, std::sqrt(std::max(var_re, var_im) / n), EstimateMethod::monte_carlo, params};
}

complex monomial(complex beta, int n, int m) {
    complex v = 1.0;
    const complex beta_conj = std::conj(beta);
    for (int t = 0; t < n; ++t) v *= beta_conj;
    for (int t = 0; t < m; ++t) v *= beta;
    return v;
}

}  // namespace

DetectorModel detector_params(double eta1, double eta2, double omega) {
    require_efficiency(eta1, "eta1");
    require_efficiency(eta2, "eta2");
    if (!std::isfinite(omega) || !(omega > 0.0)) throw UnphysicalEfficiency("omega must be finite and positive");
    DetectorModel d{};
    d.eta1 = eta1;
    d.eta2 = eta2;
    d.omega = omega;
    d.sigma1 = 0.5 * std::sqrt((2.0 - eta1) / eta1);
    d.sigma2 = 0.5 * std::sqrt((2.0 - eta2) / eta2);
    const double kappa_over_omega = std::sqrt((2.0 - eta2) * eta1 / ((2.0 - eta1) * eta2));
    d.kappa = omega * kappa_over_omega;
    d.s = -std::sqrt((2.0 - eta1) * (2.0 - eta2) / (eta1 * eta2));
    d.r = 0.5 * std::log(kappa_over_omega);
    return d;
}

PhaseSpaceField joint_count_distribution(const DensityMatrix& rho, const DetectorModel& detector,
                                         const QuadratureGrid& grid) {
    return smooth(wigner_grid(rho, grid), detector.widths());
}

SampleSet sample_joint_counts(const PhaseSpaceField& joint, const DetectorModel& detector, std::int64_t count,
                              std::uint64_t seed, std::string state_descriptor) {
    if (count < 1) throw InsufficientSamples("sample count must be >= 1, got " + std::to_string(count));
    if (joint.min_value() < -kNegativityTolerance) {
        throw NonPhysicalDistribution("distribution has negative value " + std::to_string(joint.min_value()));
    }
    require_consistent(joint, detector.ordering_params());
    if (joint.boundary_mass() > kBoundaryMassLimit) {
        throw BoundaryMassError("distribution mass on the grid boundary is " + std::to_string(joint.boundary_mass()));
    }

    const QuadratureGrid& grid = joint.grid();
    const int n = grid.points();
    const Eigen::MatrixXd& values = joint.values();
    std::vector<double> cdf(static_cast<std::size_t>(n) * n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            total += std::max(0.0, values(i, j));
            cdf[static_cast<std::size_t>(i) * n + j] = total;
        }
    }

    std::mt19937_64 engine(seed);
    SampleSet set{{}, seed, detector, std::move(state_descriptor), count};
    set.samples.reserve(static_cast<std::size_t>(count));
    for (std::int64_t t = 0; t < count; ++t) {
        const double target = unit_uniform(engine) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        if (it == cdf.end()) --it;
        const auto flat = static_cast<std::size_t>(it - cdf.begin());
        set.samples.push_back({grid.coordinate(static_cast<int>(flat / n)), grid.coordinate(static_cast<int>(flat % n))});
    }
    return set;
}

SampleSet sample_joint_counts(const DensityMatrix& rho, const DetectorModel& detector, std::int64_t count,
                              std::uint64_t seed, std::string state_descriptor, const QuadratureGrid& grid) {
    if (count < 1) throw InsufficientSamples("sample count must be >= 1, got " + std::to_string(count));
    return sample_joint_counts(joint_count_distribution(rho, detector, grid), detector, count, seed,
                               std::move(state_descriptor));
}

MomentEstimate estimate_moment(const SampleSet& set, int n, int m) {
    if (n < 0 || m < 0) throw InvalidSpec("moment orders must be nonnegative");
    const OrderingParams params = set.detector.ordering_params();
    if (n == 0 && m == 0) {
        require_estimate_count(set);
        return {1.0, 0.0, EstimateMethod::monte_carlo, params};
    }
    return sample_mean(set, params, [n, m](complex beta) { return monomial(beta, n, m); });
}

MomentEstimate estimate_expansion(const SampleSet& set, const OrderingExpansion& expansion) {
    const OrderingParams detector_params = set.detector.ordering_params();
    if (std::abs(detector_params.s - expansion.params.s) > kParamTolerance ||
        std::abs(detector_params.r - expansion.params.r) > kParamTolerance) {
        throw ParamMismatch("expansion parameters do not match the detector");
    }
    if (expansion.terms.empty()) {
        require_estimate_count(set);
        return {expansion.constant, 0.0, EstimateMethod::monte_carlo, expansion.params};
    }
    return sample_mean(set, expansion.params, [&expansion](complex beta) {
        complex v = expansion.constant;
        for (const auto& [key, c] : expansion.terms) v += c * monomial(beta, key.first, key.second);
        return v;
    });
}

MomentEstimate estimate_photon_number(const SampleSet& set) {
    const OrderingParams params = set.detector.ordering_params();
    const double sh = 0.5 * std::sinh(2.0 * params.r);
    const double ch = std::cosh(2.0 * params.r);
    const double constant = 0.5 * params.s * ch - 0.5;
    return sample_mean(set, params, [=](complex beta) {
        return complex(-2.0 * (beta * beta).real() * sh + std::norm(beta) * ch + constant, 0.0);
    });
}

ReconstructionReport reconstruct(const DensityMatrix& rho, const DetectorModel& detector,
                                 const std::vector<std::pair<int, int>>& targets, std::int64_t count,
                                 std::uint64_t seed, std::string state_descriptor, const QuadratureGrid& grid,
                                 SampleSet* samples_out) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [n, m] : targets) {
        if (n < 0 || m < 0 || n + m > 4) throw InvalidSpec("targets must satisfy 0 <= n, m and n + m <= 4");
    }
    if (count < kMinEstimateSamples) {
        throw InsufficientSamples("need at least " + std::to_string(kMinEstimateSamples) + " samples, got " +
                                  std::to_string(count));
    }

    SampleSet set = sample_joint_counts(rho, detector, count, seed, state_descriptor, grid);
    const OrderingParams params = detector.ordering_params();

    ReconstructionReport report{{}, detector, std::move(state_descriptor), seed, count, 0.0};
    for (const auto& [n, m] : targets) {
        MomentEstimate estimate = [&] {
            if (n == 1 && m == 1) return estimate_photon_number(set);
            const OrderingExpansion expansion =
                expand_in_ordered_basis(ladder_monomial(n, m, rho.dim()), params, rho.dim(), n + m);
            return estimate_expansion(set, expansion);
        }();
        const complex oracle = oracle_moment(rho, n, m);
        const double error = std::abs(estimate.value - oracle);
        report.entries.push_back({n, m, estimate, oracle, error});
    }
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (samples_out != nullptr) *samples_out = std::move(set);
    return report;
}

}  // namespace gsmooth
