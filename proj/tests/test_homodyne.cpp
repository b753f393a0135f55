#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"

#include "gsmooth/errors.hpp"
#include "gsmooth/homodyne.hpp"
#include "gsmooth/homodyne_io.hpp"
#include "test_support.hpp"

using namespace gsmooth;
using gsmooth::testing::cached_wigner;
using gsmooth::testing::test_state;

namespace {

constexpr std::int64_t kMillion = 1'000'000;

SampleSet draw(const std::string& state, double eta1, double eta2, std::int64_t count, std::uint64_t seed = 42) {
    const DetectorModel d = detector_params(eta1, eta2);
    return sample_joint_counts(smooth(cached_wigner(state), d.widths()), d, count, seed, state);
}

struct Stats {
    double mean;
    double variance;
};

Stats alpha1_stats(const SampleSet& set) {
    double sum = 0.0;
    for (const auto& s : set.samples) sum += s.alpha1;
    const double mean = sum / set.samples.size();
    double sq = 0.0;
    for (const auto& s : set.samples) sq += (s.alpha1 - mean) * (s.alpha1 - mean);
    return {mean, sq / (set.samples.size() - 1)};
}

}  // namespace

TEST_CASE("detector parameter examples") {
    const DetectorModel perfect = detector_params(1.0, 1.0);
    CHECK(perfect.sigma1 == 0.5);
    CHECK(perfect.sigma2 == 0.5);
    CHECK(perfect.s == -1.0);
    CHECK(perfect.kappa == 1.0);
    CHECK(perfect.r == 0.0);

    const DetectorModel two_thirds = detector_params(2.0 / 3.0, 2.0 / 3.0);
    CHECK(two_thirds.sigma1 * two_thirds.sigma1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(two_thirds.s == doctest::Approx(-2.0).epsilon(1e-14));

    const DetectorModel d = detector_params(0.8, 0.6);
    CHECK(d.sigma1 * d.sigma1 == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(d.sigma2 * d.sigma2 == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
    CHECK(d.s == doctest::Approx(-std::sqrt(3.5)).epsilon(1e-14));
    CHECK(d.kappa == doctest::Approx(std::sqrt(14.0 / 9.0)).epsilon(1e-14));
    CHECK(d.r == doctest::Approx(0.11045818806975981).epsilon(1e-13));
}

TEST_CASE("detector parameters satisfy their defining relations") {
    for (double e1 : {0.1, 0.5, 0.6, 0.67, 0.8, 0.95, 1.0})
        for (double e2 : {0.1, 0.5, 0.6, 0.67, 0.8, 0.95, 1.0})
            for (double omega : {0.5, 1.0, 3.0}) {
                const DetectorModel d = detector_params(e1, e2, omega);
                CAPTURE(e1);
                CAPTURE(e2);
                CHECK(std::abs(4 * d.sigma1 * d.sigma1 - (2 - e1) / e1) < 1e-12);
                CHECK(std::abs(4 * d.sigma2 * d.sigma2 - (2 - e2) / e2) < 1e-12);
                CHECK(std::abs(d.s + 4 * d.sigma1 * d.sigma2) < 1e-12);
                CHECK(std::abs(d.kappa / omega - d.sigma2 / d.sigma1) < 1e-12);
                CHECK(std::abs(std::exp(d.r) - std::sqrt(d.kappa / omega)) < 1e-12);
                CHECK(d.s <= -1.0);
                if (e1 == e2) {
                    CHECK(d.r == 0.0);
                    CHECK(std::abs(d.s + (2 - e1) / e1) < 1e-12);
                }
                const OrderingParams p = d.ordering_params();
                CHECK(std::abs(p.s - d.s) < 1e-12);
                CHECK(std::abs(p.r - d.r) < 1e-12);
            }
}

TEST_CASE("detector parameter errors") {
    CHECK_THROWS_AS(detector_params(0.0, 1.0), UnphysicalEfficiency);
    CHECK_THROWS_AS(detector_params(1.0, 1.2), UnphysicalEfficiency);
    CHECK_THROWS_AS(detector_params(NAN, 1.0), UnphysicalEfficiency);
    CHECK_THROWS_AS(detector_params(1.0, 1.0, 0.0), UnphysicalEfficiency);
}

TEST_CASE("sampled quadrature statistics") {
    const SampleSet vacuum = draw("vacuum", 1.0, 1.0, kMillion);
    REQUIRE(vacuum.samples.size() == static_cast<size_t>(kMillion));
    CHECK(vacuum.count == kMillion);
    const Stats v = alpha1_stats(vacuum);
    CHECK(std::abs(v.variance - 0.5) < 3 * std::sqrt(2.0 / kMillion) * 0.5);

    const SampleSet coherent = draw("coherent:1.5", 1.0, 1.0, kMillion);
    const Stats c = alpha1_stats(coherent);
    CHECK(std::abs(c.mean - 1.5) < 3 * std::sqrt(c.variance / kMillion));

    const SampleSet one = draw("vacuum", 1.0, 1.0, 1);
    REQUIRE(one.samples.size() == 1);
    CHECK(std::abs(one.samples[0].alpha1) <= 8.0);
    CHECK(std::abs(one.samples[0].alpha2) <= 8.0);
}

TEST_CASE("sampling is deterministic for a seed") {
    const SampleSet a = draw("cat:1.5,0", 0.8, 0.6, 20000, 7);
    const SampleSet b = draw("cat:1.5,0", 0.8, 0.6, 20000, 7);
    const SampleSet c = draw("cat:1.5,0", 0.8, 0.6, 20000, 8);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
    const DetectorModel d = detector_params(1.0, 1.0);
    const SampleSet from_rho = sample_joint_counts(test_state("vacuum"), d, 5000, 3, "vacuum");
    const SampleSet from_field = sample_joint_counts(smooth(cached_wigner("vacuum"), d.widths()), d, 5000, 3, "vacuum");
    CHECK(from_rho.samples == from_field.samples);
    for (const auto& s : from_rho.samples) {
        const double i = (s.alpha1 + 8.0) / 0.05;
        CHECK(std::abs(i - std::round(i)) < 1e-9);
    }
}

TEST_CASE("sampling errors") {
    const DetectorModel d = detector_params(1.0, 1.0);
    CHECK_THROWS_AS(sample_joint_counts(cached_wigner("fock:1"), d, 100, 1), NonPhysicalDistribution);
    CHECK_THROWS_AS(draw("vacuum", 1.0, 1.0, 0), InsufficientSamples);
    const PhaseSpaceField mismatched = smooth(cached_wigner("vacuum"), SmoothingWidths::isotropic(0.6));
    CHECK_THROWS_AS(sample_joint_counts(mismatched, d, 100, 1), ParamMismatch);
    const PhaseSpaceField clipped =
        smooth(wigner_grid(test_state("coherent:1.5"), QuadratureGrid(-4, 4, 0.05)), d.widths());
    CHECK_THROWS_AS(sample_joint_counts(clipped, d, 100, 1), BoundaryMassError);
}

TEST_CASE("moment estimates from samples") {
    const SampleSet vacuum = draw("vacuum", 1.0, 1.0, kMillion);
    const MomentEstimate trivial = estimate_moment(vacuum, 0, 0);
    CHECK(trivial.value == complex(1.0, 0.0));
    CHECK(trivial.std_error == 0.0);

    const MomentEstimate n = estimate_moment(vacuum, 1, 1);
    CHECK(n.method == EstimateMethod::monte_carlo);
    CHECK(n.std_error > 0.0);
    CHECK(std::abs(n.value - 1.0) < 3 * n.std_error);

    const SampleSet coherent = draw("coherent:1.5", 2.0 / 3.0, 2.0 / 3.0, kMillion);
    const MomentEstimate c = estimate_moment(coherent, 1, 1);
    CHECK(std::abs(c.value - 3.75) < 3 * c.std_error);

    CHECK_THROWS_AS(estimate_moment(draw("vacuum", 1.0, 1.0, 99), 1, 1), InsufficientSamples);
}

TEST_CASE("Monte Carlo moments converge to grid moments") {
    for (const char* name : {"fock:2", "squeezed:0.3", "cat:1.5,0"}) {
        const DetectorModel d = detector_params(0.8, 0.6);
        const PhaseSpaceField g = smooth(cached_wigner(name), d.widths());
        const SampleSet set = sample_joint_counts(g, d, kMillion, 42, name);
        for (auto [n, m] : {std::pair{1, 1}, std::pair{2, 0}, std::pair{2, 2}}) {
            const MomentEstimate mc = estimate_moment(set, n, m);
            const complex quad = integrate_moment(g, n, m, d.r);
            CAPTURE(name);
            CAPTURE(n);
            CAPTURE(m);
            CHECK(std::abs(mc.value - quad) < 3 * mc.std_error + 5e-3);
        }
    }
}

TEST_CASE("reconstruction examples") {
    const DensityMatrix coherent = test_state("coherent:1.5");
    const ReconstructionReport r =
        reconstruct(coherent, detector_params(0.8, 0.8), {{1, 1}}, kMillion, 42, "coherent:1.5");
    REQUIRE(r.entries.size() == 1);
    CHECK(std::abs(r.entries[0].estimate.value - 2.25) < 3 * r.entries[0].estimate.std_error);
    CHECK(r.entries[0].abs_error == std::abs(r.entries[0].estimate.value - r.entries[0].oracle));
    CHECK(r.sample_count == kMillion);
    CHECK(r.seed == 42);

    const ReconstructionReport one = reconstruct(test_state("fock:1"), detector_params(1.0, 1.0), {{1, 1}}, kMillion, 42);
    CHECK(std::abs(one.entries[0].estimate.value - 1.0) < 3 * one.entries[0].estimate.std_error);

    for (auto [e1, e2] : {std::pair{1.0, 1.0}, std::pair{0.6, 0.8}}) {
        const ReconstructionReport v =
            reconstruct(test_state("vacuum"), detector_params(e1, e2), {{1, 1}, {0, 2}}, kMillion, 42);
        for (const auto& e : v.entries) {
            CAPTURE(e1);
            CHECK(std::abs(e.estimate.value) < 3 * e.estimate.std_error);
        }
    }

    CHECK_THROWS_AS(reconstruct(coherent, detector_params(1.0, 1.0), {{3, 2}}, 1000, 1), InvalidSpec);
    CHECK_THROWS_AS(reconstruct(coherent, detector_params(1.0, 1.0), {{1, 1}}, 50, 1), InsufficientSamples);
}

TEST_CASE("sample CSV round trip") {
    const SampleSet set = draw("cat:1.5,0", 0.8, 0.6, 500, 11);
    std::stringstream buffer;
    write_samples_csv(buffer, set);
    const SampleSet back = read_samples_csv(buffer);
    CHECK(back.samples == set.samples);
    CHECK(back.seed == set.seed);
    CHECK(back.count == set.count);
    CHECK(back.state_descriptor == "cat:1.5,0");
    CHECK(back.detector.eta1 == set.detector.eta1);
    CHECK(back.detector.eta2 == set.detector.eta2);

    std::istringstream bad("# seed,eta1,eta2,count,state\n# 1,1,1,2,vacuum\n0.1,0.2\n");
    CHECK_THROWS_AS(read_samples_csv(bad), InvalidSpec);
}

TEST_CASE("report JSON round trip") {
    const ReconstructionReport r =
        reconstruct(test_state("fock:2"), detector_params(0.8, 0.6), {{1, 1}, {2, 2}, {0, 1}}, 5000, 5, "fock:2");
    const nlohmann::json j = report_to_json(r);
    CHECK_FALSE(j.contains("wall_time_s"));
    CHECK(report_to_json(r, true).contains("wall_time_s"));
    const ReconstructionReport back = report_from_json(j);
    REQUIRE(back.entries.size() == r.entries.size());
    for (size_t i = 0; i < r.entries.size(); ++i) {
        CHECK(back.entries[i].n == r.entries[i].n);
        CHECK(back.entries[i].m == r.entries[i].m);
        CHECK(back.entries[i].estimate.value == r.entries[i].estimate.value);
        CHECK(back.entries[i].estimate.std_error == r.entries[i].estimate.std_error);
        CHECK(back.entries[i].oracle == r.entries[i].oracle);
        CHECK(back.entries[i].abs_error == r.entries[i].abs_error);
    }
    CHECK(back.state_descriptor == "fock:2");
    CHECK(back.seed == 5);
    CHECK(report_to_json(back).dump() == j.dump());
}
