#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsmooth/errors.hpp"
#include "gsmooth/field_io.hpp"
#include "gsmooth/homodyne.hpp"
#include "gsmooth/homodyne_io.hpp"
#include "gsmooth/moments.hpp"
#include "gsmooth/ordering.hpp"
#include "gsmooth/phasespace.hpp"
#include "gsmooth/state_spec.hpp"

namespace gsmooth::cli {

namespace {

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string state = "vacuum";
    int dim = kDefaultDim;
    double grid_min = -8.0;
    double grid_max = 8.0;
    double step = 0.05;
    double eta1 = 1.0;
    double eta2 = 1.0;
    std::int64_t count = 1'000'000;
    std::uint64_t seed = 42;
    std::string out;
    OutputFormat format = OutputFormat::csv;

    QuadratureGrid grid() const { return QuadratureGrid(grid_min, grid_max, step); }
    DensityMatrix density() const { return build_state(parse_state_spec(state), dim); }
};

std::string g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void add_state_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--state", cfg.state, "state spec: vacuum | fock:N | coherent:Z | thermal:NBAR | cat:Z[,PHASE] | squeezed:R")
        ->capture_default_str();
    cmd.add_option("--dim", cfg.dim, "Fock truncation")->capture_default_str();
    cmd.add_option("--grid-min", cfg.grid_min, "lower grid bound (both axes)")->capture_default_str();
    cmd.add_option("--grid-max", cfg.grid_max, "upper grid bound (both axes)")->capture_default_str();
    cmd.add_option("--step", cfg.step, "grid step")->capture_default_str();
}

void add_detector_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--eta1", cfg.eta1, "efficiency of the alpha_1 detector")->capture_default_str();
    cmd.add_option("--eta2", cfg.eta2, "efficiency of the alpha_2 detector")->capture_default_str();
}

void add_output_options(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--out", cfg.out, "output path");
    cmd.add_option("--format", cfg.format, "output format: csv | json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                                                                {"json", OutputFormat::json}})
                        .description(""));
}

std::vector<std::pair<int, int>> parse_targets(const std::vector<std::string>& texts) {
    std::vector<std::pair<int, int>> targets;
    for (const auto& text : texts) {
        int n = -1;
        int m = -1;
        char tail = 0;
        if (std::sscanf(text.c_str(), "%d,%d%c", &n, &m, &tail) != 2 || n < 0 || m < 0) {
            throw InvalidSpec("target '" + text + "' is not of the form n,m");
        }
        if (n + m > 4) throw InvalidSpec("target '" + text + "' has n+m > 4");
        targets.emplace_back(n, m);
    }
    if (targets.empty()) throw InvalidSpec("no targets given");
    return targets;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) throw InvalidSpec("cannot open '" + path + "' for writing");
    file << text;
}

// ---- dist -----------------------------------------------------------------

struct DistOptions {
    std::string which = "g";
    std::optional<double> sigma1;
    std::optional<double> sigma2;
};

int cmd_dist(const RunConfig& cfg, const DistOptions& opt, std::ostream& out) {
    const QuadratureGrid grid = cfg.grid();
    const DensityMatrix rho = cfg.density();

    std::optional<PhaseSpaceField> field;
    bool physical = true;
    if (opt.which == "wigner") {
        field = wigner_grid(rho, grid);
        physical = false;
    } else if (opt.which == "q") {
        field = q_exact_grid(rho, grid);
    } else if (opt.which == "husimi") {
        const double s1 = opt.sigma1.value_or(opt.sigma2 ? 0.25 / *opt.sigma2 : 0.5);
        const SmoothingWidths widths(s1, 0.25 / s1);
        field = smooth(wigner_grid(rho, grid), widths);
    } else if (opt.which == "g") {
        std::optional<SmoothingWidths> widths;
        if (opt.sigma1 || opt.sigma2) {
            if (!opt.sigma1 || !opt.sigma2) throw InvalidSpec("--sigma1 and --sigma2 must be given together");
            widths.emplace(*opt.sigma1, *opt.sigma2);
        } else {
            widths.emplace(detector_params(cfg.eta1, cfg.eta2).widths());
        }
        physical = widths->physical();
        field = smooth(wigner_grid(rho, grid), *widths);
    } else {
        throw InvalidSpec("--which must be one of wigner, q, g, husimi");
    }

    const std::string path =
        cfg.out.empty() ? opt.which + (cfg.format == OutputFormat::json ? ".json" : ".csv") : cfg.out;
    std::ostringstream buffer;
    if (cfg.format == OutputFormat::json) {
        buffer << field_to_json(*field).dump() << '\n';
    } else {
        write_field_csv(buffer, *field);
    }
    write_text(path, buffer.str());

    out << "label=" << to_string(field->label()) << " sigma1=" << g17(field->sigma1())
        << " sigma2=" << g17(field->sigma2()) << " normalization=" << g17(field->integral())
        << " min=" << g17(field->min_value()) << " max=" << g17(field->max_value())
        << " physical=" << (physical ? "true" : "false") << " out=" << path << '\n';
    return 0;
}

// ---- moments --------------------------------------------------------------

int cmd_moments(const RunConfig& cfg, const std::vector<std::string>& target_texts, std::ostream& out) {
    const auto targets = parse_targets(target_texts);
    const DensityMatrix rho = cfg.density();
    const DetectorModel detector = detector_params(cfg.eta1, cfg.eta2);
    const OrderingParams params = detector.ordering_params();
    const PhaseSpaceField joint = joint_count_distribution(rho, detector, cfg.grid());

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [n, m] : targets) {
        complex value;
        if (n == 1 && m == 1) {
            value = photon_number_from_g(joint, params).value;
        } else {
            const OrderingExpansion expansion =
                expand_in_ordered_basis(ladder_monomial(n, m, rho.dim()), params, rho.dim(), n + m);
            value = expectation_from_g(joint, expansion).value;
        }
        const complex oracle = oracle_moment(rho, n, m);
        rows.push_back({{"target", {n, m}},
                        {"g_path_value", complex_to_json(value)},
                        {"oracle_value", complex_to_json(oracle)},
                        {"abs_error", std::abs(value - oracle)}});
    }
    const nlohmann::json report = {{"state", format_state_spec(parse_state_spec(cfg.state))},
                                   {"detector", detector_to_json(detector)},
                                   {"method", "grid_quadrature"},
                                   {"targets", std::move(rows)}};
    const std::string text = report.dump(2) + "\n";
    if (!cfg.out.empty()) write_text(cfg.out, text);
    out << text;
    return 0;
}

// ---- simulate -------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, const std::vector<std::string>& target_texts, const std::string& emit_samples,
                 bool timing, std::ostream& out) {
    const auto targets = parse_targets(target_texts);
    if (cfg.count < kMinEstimateSamples) {
        throw InsufficientSamples("--count must be at least " + std::to_string(kMinEstimateSamples));
    }
    const DetectorModel detector = detector_params(cfg.eta1, cfg.eta2);
    const DensityMatrix rho = cfg.density();
    SampleSet samples;
    const ReconstructionReport report =
        reconstruct(rho, detector, targets, cfg.count, cfg.seed, format_state_spec(parse_state_spec(cfg.state)),
                    cfg.grid(), emit_samples.empty() ? nullptr : &samples);
    if (!emit_samples.empty()) {
        std::ostringstream buffer;
        write_samples_csv(buffer, samples);
        write_text(emit_samples, buffer.str());
    }
    const std::string text = report_to_json(report, timing).dump(2) + "\n";
    if (!cfg.out.empty()) write_text(cfg.out, text);
    out << text;
    return 0;
}

// ---- ordering -------------------------------------------------------------

struct OrderingOptions {
    int n = 0;
    int m = 0;
    double s = -1.0;
    bool check = false;
    int dim = 32;
    double r = 0.0;
};

int cmd_ordering(const OrderingOptions& opt, std::ostream& out) {
    for (const auto& term : ordering_terms(opt.n, opt.m, opt.s)) {
        out << "k=" << term.k << ": " << g17(term.coefficient) << '\n';
    }
    if (opt.check) {
        const OrderingParams params(opt.s, opt.r);
        const Eigen::MatrixXcd antinormal = ordered_monomial_matrix(opt.n, opt.m, params, opt.dim).entries;
        const Eigen::MatrixXcd normal = normal_ordered_monomial_matrix(opt.n, opt.m, params, opt.dim).entries;
        const int block = truncation_safe_size(opt.dim, opt.n + opt.m);
        const double residual = (antinormal - normal).topLeftCorner(block, block).norm();
        out << "residual=" << g17(residual) << '\n';
    }
    return 0;
}

int report_error(const Error& e, std::ostream& err) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return e.category() == ErrorCategory::validation ? 2 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian-smoothed Wigner functions and imperfect-detector moment recovery", "gsmooth"};
    app.require_subcommand(1);

    RunConfig cfg;

    DistOptions dist_opt;
    auto* dist = app.add_subcommand("dist", "export a Wigner, Q, Husimi or smoothed (G) distribution");
    add_state_options(*dist, cfg);
    add_detector_options(*dist, cfg);
    add_output_options(*dist, cfg);
    dist->add_option("--which", dist_opt.which, "wigner | q | g | husimi")->capture_default_str();
    dist->add_option("--sigma1", dist_opt.sigma1, "smoothing width along alpha_1");
    dist->add_option("--sigma2", dist_opt.sigma2, "smoothing width along alpha_2");

    std::vector<std::string> target_texts;
    auto* moments = app.add_subcommand("moments", "recover <a^dagger^n a^m> from the smoothed distribution by quadrature");
    add_state_options(*moments, cfg);
    add_detector_options(*moments, cfg);
    moments->add_option("--out", cfg.out, "also write the JSON report here");
    moments->add_option("--targets", target_texts, "moment targets as n,m (repeatable)")->required();

    std::string emit_samples;
    bool timing = false;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo eight-port homodyne experiment");
    add_state_options(*simulate, cfg);
    add_detector_options(*simulate, cfg);
    simulate->add_option("--count", cfg.count, "number of joint counts")->capture_default_str();
    simulate->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
    simulate->add_option("--out", cfg.out, "also write the JSON report here");
    simulate->add_option("--targets", target_texts, "moment targets as n,m (repeatable)")->required();
    simulate->add_option("--emit-samples", emit_samples, "write the sample CSV here");
    simulate->add_flag("--timing", timing, "include wall time in the report");

    OrderingOptions ordering_opt;
    auto* ordering = app.add_subcommand("ordering", "print the ordering-rule coefficients for {b^dagger^n b^m}");
    ordering->add_option("n", ordering_opt.n, "power of b^dagger")->required();
    ordering->add_option("m", ordering_opt.m, "power of b")->required();
    ordering->add_option("--s", ordering_opt.s, "ordering parameter s")->required();
    ordering->add_flag("--check", ordering_opt.check, "verify the matrix identity");
    ordering->add_option("--dim", ordering_opt.dim, "Fock truncation for --check")->capture_default_str();
    ordering->add_option("--r", ordering_opt.r, "squeeze parameter for --check")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: ArgumentError: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*dist) return cmd_dist(cfg, dist_opt, out);
        if (*moments) return cmd_moments(cfg, target_texts, out);
        if (*simulate) return cmd_simulate(cfg, target_texts, emit_samples, timing, out);
        if (*ordering) return cmd_ordering(ordering_opt, out);
    } catch (const Error& e) {
        return report_error(e, err);
    } catch (const std::exception& e) {
        err << "error: InternalError: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace gsmooth::cli
