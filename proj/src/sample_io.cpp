#include "gsmooth/homodyne_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "gsmooth/errors.hpp"

namespace gsmooth {

namespace {

constexpr const char* kSamplesHeader = "# seed,eta1,eta2,count,state";

std::string g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string_view to_string(EstimateMethod method) {
    return method == EstimateMethod::grid_quadrature ? "grid_quadrature" : "monte_carlo";
}

EstimateMethod parse_method(const std::string& text) {
    if (text == "grid_quadrature") return EstimateMethod::grid_quadrature;
    if (text == "monte_carlo") return EstimateMethod::monte_carlo;
    throw InvalidSpec("unknown estimate method '" + text + "'");
}

}  // namespace

void write_samples_csv(std::ostream& out, const SampleSet& set) {
    out << kSamplesHeader << '\n';
    out << "# " << set.seed << ',' << g17(set.detector.eta1) << ',' << g17(set.detector.eta2) << ',' << set.count << ','
        << set.state_descriptor << '\n';
    for (const auto& sample : set.samples) out << g17(sample.alpha1) << ',' << g17(sample.alpha2) << '\n';
}

SampleSet read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSamplesHeader) throw InvalidSpec("samples CSV: missing header line");
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw InvalidSpec("samples CSV: missing metadata line");
    std::string meta = line.substr(2);
    std::string fields[4];
    for (auto& field : fields) {
        const auto comma = meta.find(',');
        if (comma == std::string::npos) throw InvalidSpec("samples CSV: truncated metadata line");
        field = meta.substr(0, comma);
        meta = meta.substr(comma + 1);
    }
    try {
        SampleSet set{{}, std::stoull(fields[0]), detector_params(std::stod(fields[1]), std::stod(fields[2])), meta,
                      std::stoll(fields[3])};
        set.samples.reserve(static_cast<std::size_t>(std::max<std::int64_t>(set.count, 0)));
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw InvalidSpec("samples CSV: malformed sample line");
            set.samples.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        }
        if (static_cast<std::int64_t>(set.samples.size()) != set.count) {
            throw InvalidSpec("samples CSV: count does not match number of samples");
        }
        return set;
    } catch (const std::logic_error&) {
        throw InvalidSpec("samples CSV: malformed number");
    }
}

nlohmann::json complex_to_json(complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

complex complex_from_json(const nlohmann::json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

nlohmann::json detector_to_json(const DetectorModel& d) {
    return {{"eta1", d.eta1},     {"eta2", d.eta2}, {"omega", d.omega}, {"sigma1", d.sigma1},
            {"sigma2", d.sigma2}, {"kappa", d.kappa}, {"s", d.s},         {"r", d.r}};
}

nlohmann::json report_to_json(const ReconstructionReport& report, bool include_timing) {
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& e : report.entries) {
        targets.push_back({
            {"target", {e.n, e.m}},
            {"estimate", complex_to_json(e.estimate.value)},
            {"std_error", e.estimate.std_error},
            {"method", std::string(to_string(e.estimate.method))},
            {"oracle", complex_to_json(e.oracle)},
            {"abs_error", e.abs_error},
        });
    }
    nlohmann::json j = {
        {"state", report.state_descriptor},
        {"seed", report.seed},
        {"sample_count", report.sample_count},
        {"detector", detector_to_json(report.detector)},
        {"targets", std::move(targets)},
    };
    if (include_timing) j["wall_time_s"] = report.wall_time_seconds;
    return j;
}

ReconstructionReport report_from_json(const nlohmann::json& j) {
    try {
        const auto& d = j.at("detector");
        const DetectorModel detector =
            detector_params(d.at("eta1").get<double>(), d.at("eta2").get<double>(), d.at("omega").get<double>());
        const OrderingParams params = detector.ordering_params();
        ReconstructionReport report{{},
                                    detector,
                                    j.at("state").get<std::string>(),
                                    j.at("seed").get<std::uint64_t>(),
                                    j.at("sample_count").get<std::int64_t>(),
                                    j.value("wall_time_s", 0.0)};
        for (const auto& t : j.at("targets")) {
            const MomentEstimate estimate{complex_from_json(t.at("estimate")), t.at("std_error").get<double>(),
                                          parse_method(t.at("method").get<std::string>()), params};
            report.entries.push_back({t.at("target").at(0).get<int>(), t.at("target").at(1).get<int>(), estimate,
                                      complex_from_json(t.at("oracle")), t.at("abs_error").get<double>()});
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("report JSON: ") + e.what());
    }
}

}  // namespace gsmooth
