#include "gsmooth/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "gsmooth/errors.hpp"
#include "gsmooth/special.hpp"

namespace gsmooth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLabelTolerance = 1e-12;
constexpr double kNonnegativityTolerance = 1e-9;
constexpr double kNormalizationTolerance = 2e-3;
constexpr double kKernelSigmas = 6.0;

// Runs body(row) for every row in [0, rows). Rows are independent, so the
// result does not depend on the partition.
template <typename Body>
void parallel_rows(int rows, Body body) {
    const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 16);
    if (workers == 1 || rows < 2 * workers) {
        for (int row = 0; row < rows; ++row) body(row);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (int row = w; row < rows; row += workers) body(row);
        });
    }
    for (auto& t : threads) t.join();
}

FieldLabel label_for_widths(double sigma1, double sigma2) {
    if (std::abs(sigma1 - 0.5) <= kLabelTolerance && std::abs(sigma2 - 0.5) <= kLabelTolerance) return FieldLabel::q;
    if (std::abs(sigma1 * sigma2 - 0.25) <= kLabelTolerance) return FieldLabel::husimi;
    return FieldLabel::g;
}

std::vector<double> gaussian_kernel(double sigma, double step) {
    const int half = static_cast<int>(std::ceil(kKernelSigmas * sigma / step));
    std::vector<double> w(2 * half + 1);
    double total = 0.0;
    for (int l = -half; l <= half; ++l) {
        const double x = l * step;
        w[l + half] = std::exp(-x * x / (2.0 * sigma * sigma));
        total += w[l + half];
    }
    for (double& v : w) v /= total;
    return w;
}

// out(i, j) = sum_l w_l in(i - l, j) with zero extension, along axis1.
Eigen::MatrixXd convolve_axis1(const Eigen::MatrixXd& in, const std::vector<double>& w) {
    const int n = static_cast<int>(in.rows());
    const int half = static_cast<int>(w.size() / 2);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(in.rows(), in.cols());
    for (int j = 0; j < in.cols(); ++j) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            const int lo = std::max(-half, i - (n - 1));
            const int hi = std::min(half, i);
            for (int l = lo; l <= hi; ++l) acc += w[l + half] * in(i - l, j);
            out(i, j) = acc;
        }
    }
    return out;
}

void require_grid_resolution(const QuadratureGrid& grid) {
    if (grid.step() > kMaxWignerStep) {
        throw GridTooCoarse("grid step " + std::to_string(grid.step()) + " exceeds " + std::to_string(kMaxWignerStep));
    }
}

}  // namespace

QuadratureGrid::QuadratureGrid(double min, double max, double step) : min_(min), max_(max), step_(step), points_(0) {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) throw InvalidGrid("grid bounds must be finite");
    if (!(max > min)) throw InvalidGrid("grid max must exceed min");
    if (!(step > 0.0)) throw InvalidGrid("grid step must be positive");
    if (std::abs(min + max) > 1e-12 * std::max(1.0, max)) throw InvalidGrid("grid must be symmetric about 0");
    const double cells = (max - min) / step;
    points_ = static_cast<int>(std::lround(cells)) + 1;
    if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells)) {
        throw InvalidGrid("grid step does not divide [min, max]");
    }
    if (points_ < 33) throw InvalidGrid("grid needs at least 33 points per axis, got " + std::to_string(points_));
}

std::string_view to_string(FieldLabel label) {
    switch (label) {
        case FieldLabel::wigner: return "wigner";
        case FieldLabel::husimi: return "husimi";
        case FieldLabel::q: return "q";
        case FieldLabel::g: return "g";
    }
    return "g";
}

FieldLabel parse_field_label(std::string_view text) {
    if (text == "wigner") return FieldLabel::wigner;
    if (text == "husimi") return FieldLabel::husimi;
    if (text == "q") return FieldLabel::q;
    if (text == "g") return FieldLabel::g;
    throw InvalidSpec("unknown field label '" + std::string(text) + "'");
}

SmoothingWidths::SmoothingWidths(double s1, double s2) : sigma1(s1), sigma2(s2) {
    if (!std::isfinite(s1) || !std::isfinite(s2) || !(s1 > 0.0) || !(s2 > 0.0)) {
        throw InvalidSpec("smoothing widths must be finite and positive");
    }
}

PhaseSpaceField::PhaseSpaceField(QuadratureGrid grid, Eigen::MatrixXd values, FieldLabel label, double sigma1,
                                 double sigma2)
    : grid_(grid), values_(std::move(values)), label_(label), sigma1_(sigma1), sigma2_(sigma2) {
    if (values_.rows() != grid_.points() || values_.cols() != grid_.points()) {
        throw InvalidField("field shape does not match its grid");
    }
    if (!values_.allFinite()) throw InvalidField("field contains non-finite values");
    if (!(sigma1_ >= 0.0) || !(sigma2_ >= 0.0)) throw InvalidField("field widths must be nonnegative");
    if (label_ != FieldLabel::wigner && sigma1_ * sigma2_ >= 0.25 - 1e-12 && min_value() < -kNonnegativityTolerance) {
        throw InvalidField("smoothed field with sigma1*sigma2 >= 1/4 has negative values (" +
                           std::to_string(min_value()) + ")");
    }
}

double PhaseSpaceField::integral() const {
    double total = 0.0;
    for (int i = 0; i < values_.rows(); ++i)
        for (int j = 0; j < values_.cols(); ++j) total += values_(i, j);
    return total * grid_.step() * grid_.step();
}

double PhaseSpaceField::boundary_mass() const {
    const int last = grid_.points() - 1;
    double total = 0.0;
    for (int i = 0; i <= last; ++i) {
        total += std::abs(values_(i, 0)) + std::abs(values_(i, last));
    }
    for (int j = 1; j < last; ++j) {
        total += std::abs(values_(0, j)) + std::abs(values_(last, j));
    }
    return total * grid_.step() * grid_.step();
}

PhaseSpaceField wigner_grid(const DensityMatrix& rho, const QuadratureGrid& grid) {
    require_grid_resolution(grid);
    const int dim = rho.dim();
    const int n = grid.points();

    // diagonals[k][m] = (-1)^m rho(m, m + k)
    std::vector<std::vector<complex>> diagonals(dim);
    for (int k = 0; k < dim; ++k) {
        diagonals[k].resize(dim - k);
        for (int m = 0; m + k < dim; ++m) diagonals[k][m] = (m % 2 == 0 ? 1.0 : -1.0) * rho(m, m + k);
    }

    Eigen::MatrixXd values(n, n);
    parallel_rows(n, [&](int i) {
        special::LaguerreTable table(dim);
        const double a1 = grid.coordinate(i);
        for (int j = 0; j < n; ++j) {
            const double a2 = grid.coordinate(j);
            const double radius2 = a1 * a1 + a2 * a2;
            table.evaluate(4.0 * radius2);
            const complex unit = radius2 > 0.0 ? complex(a1, a2) / std::sqrt(radius2) : complex(1.0, 0.0);

            double sum = 0.0;
            for (int m = 0; m < dim; ++m) sum += diagonals[0][m].real() * table(0, m);
            complex phase = 1.0;
            for (int k = 1; k < dim; ++k) {
                phase *= unit;
                complex s = 0.0;
                for (int m = 0; m + k < dim; ++m) s += diagonals[k][m] * table(k, m);
                sum += 2.0 * (s * phase).real();
            }
            values(i, j) = 2.0 / kPi * sum;
        }
    });
    return PhaseSpaceField(grid, std::move(values), FieldLabel::wigner, 0.0, 0.0);
}

PhaseSpaceField smooth(const PhaseSpaceField& field, const SmoothingWidths& widths) {
    const QuadratureGrid& grid = field.grid();
    const double extent = grid.max() - grid.min();
    if (kKernelSigmas * std::max(widths.sigma1, widths.sigma2) > extent / 2.0) {
        throw KernelExceedsGrid("6*sigma=" + std::to_string(kKernelSigmas * std::max(widths.sigma1, widths.sigma2)) +
                                " exceeds half the grid extent " + std::to_string(extent / 2.0));
    }
    const auto k1 = gaussian_kernel(widths.sigma1, grid.step());
    const auto k2 = gaussian_kernel(widths.sigma2, grid.step());

    Eigen::MatrixXd pass1 = convolve_axis1(field.values(), k1);
    Eigen::MatrixXd pass2 = convolve_axis1(pass1.transpose(), k2).transpose();

    const double sigma1 = std::hypot(field.sigma1(), widths.sigma1);
    const double sigma2 = std::hypot(field.sigma2(), widths.sigma2);
    return PhaseSpaceField(grid, std::move(pass2), label_for_widths(sigma1, sigma2), sigma1, sigma2);
}

PhaseSpaceField q_exact_grid(const DensityMatrix& rho, const QuadratureGrid& grid) {
    const int dim = rho.dim();
    const int n = grid.points();
    const Eigen::MatrixXcd& entries = rho.entries();
    Eigen::MatrixXd values(n, n);
    parallel_rows(n, [&](int i) {
        Eigen::VectorXcd overlap(dim);
        for (int j = 0; j < n; ++j) {
            const complex alpha(grid.coordinate(i), grid.coordinate(j));
            overlap(0) = std::exp(-0.5 * std::norm(alpha));
            for (int k = 1; k < dim; ++k) overlap(k) = overlap(k - 1) * alpha / std::sqrt(static_cast<double>(k));
            const complex value = overlap.dot(entries * overlap);
            values(i, j) = value.real() / kPi;
        }
    });
    return PhaseSpaceField(grid, std::move(values), FieldLabel::q, 0.5, 0.5);
}

double characteristic_filter(const SmoothingWidths& widths, double k1, double k2) {
    return std::exp(-0.5 * widths.sigma1 * widths.sigma1 * k1 * k1 - 0.5 * widths.sigma2 * widths.sigma2 * k2 * k2);
}

namespace {

// Tr(rho D(lambda)) using <n+k|D|n> = e^{ik theta} F_{n,k}(|lambda|^2) and
// <n|D|n+k> = (-1)^k e^{-ik theta} F_{n,k}(|lambda|^2).
complex displacement_trace(const DensityMatrix& rho, complex lambda, special::LaguerreTable& table) {
    const int dim = rho.dim();
    const double x = std::norm(lambda);
    table.evaluate(x);
    const complex unit = x > 0.0 ? lambda / std::sqrt(x) : complex(1.0, 0.0);
    complex chi = 0.0;
    for (int m = 0; m < dim; ++m) chi += rho(m, m) * table(0, m);
    complex phase = 1.0;
    for (int k = 1; k < dim; ++k) {
        phase *= unit;
        complex s = 0.0;
        for (int m = 0; m + k < dim; ++m) s += rho(m, m + k) * table(k, m);
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        chi += s * phase + sign * std::conj(s) * std::conj(phase);
    }
    return chi;
}

// exp(i k1 x1 + i k2 x2) = D(lambda) with lambda = (-k2 + i k1) / 2.
complex lambda_for(double k1, double k2) { return {-0.5 * k2, 0.5 * k1}; }

}  // namespace

complex characteristic_function(const DensityMatrix& rho, double k1, double k2) {
    special::LaguerreTable table(rho.dim());
    return displacement_trace(rho, lambda_for(k1, k2), table);
}

PhaseSpaceField g_via_characteristic(const DensityMatrix& rho, const SmoothingWidths& widths,
                                     const QuadratureGrid& grid) {
    const int n = grid.points();
    const int center = (n - 1) / 2;
    const double h = grid.step();
    const double dk = 2.0 * kPi / (n * h);

    Eigen::MatrixXcd spectrum(n, n);
    parallel_rows(n, [&](int p) {
        special::LaguerreTable table(rho.dim());
        const double k1 = (p - center) * dk;
        for (int q = 0; q < n; ++q) {
            const double k2 = (q - center) * dk;
            spectrum(p, q) = displacement_trace(rho, lambda_for(k1, k2), table) * characteristic_filter(widths, k1, k2);
        }
    });

    double edge = 0.0;
    for (int t = 0; t < n; ++t) {
        edge = std::max({edge, std::abs(spectrum(0, t)), std::abs(spectrum(n - 1, t)), std::abs(spectrum(t, 0)),
                         std::abs(spectrum(t, n - 1))});
    }
    if (edge > kAliasingLimit) {
        throw AliasingError("filtered characteristic function is " + std::to_string(edge) +
                            " at the Nyquist frequency; refine the grid");
    }

    // E(i, p) = exp(-i k_p alpha_i); the phase index is reduced mod n to keep
    // the arguments small.
    Eigen::MatrixXcd kernel(n, n);
    for (int i = 0; i < n; ++i) {
        for (int p = 0; p < n; ++p) {
            long long idx = static_cast<long long>(i - center) * (p - center) % n;
            if (idx < 0) idx += n;
            kernel(i, p) = std::polar(1.0, -2.0 * kPi * static_cast<double>(idx) / n);
        }
    }
    const Eigen::MatrixXcd transformed = kernel * spectrum * kernel.transpose();
    const double scale = 1.0 / ((n * h) * (n * h));
    Eigen::MatrixXd values = transformed.real() * scale;
    return PhaseSpaceField(grid, std::move(values), label_for_widths(widths.sigma1, widths.sigma2), widths.sigma1,
                           widths.sigma2);
}

complex integrate_moment(const PhaseSpaceField& field, int n, int m, double r) {
    if (n < 0 || m < 0 || n + m > 6) throw InvalidSpec("moment orders must satisfy 0 <= n, m and n + m <= 6");
    if (!std::isfinite(r)) throw InvalidSpec("squeeze parameter must be finite");
    const double norm = field.integral();
    if (std::abs(norm - 1.0) > kNormalizationTolerance) {
        throw InvalidField("field integrates to " + std::to_string(norm) + ", not 1");
    }
    const double boundary = field.boundary_mass();
    if (boundary > kBoundaryMassLimit) {
        throw BoundaryMassError("field mass on the grid boundary is " + std::to_string(boundary) +
                                "; moments would be biased");
    }
    const QuadratureGrid& grid = field.grid();
    const Eigen::MatrixXd& values = field.values();
    complex total = 0.0;
    for (int i = 0; i < grid.points(); ++i) {
        for (int j = 0; j < grid.points(); ++j) {
            const complex beta = to_beta(grid.coordinate(i), grid.coordinate(j), r);
            const complex beta_conj = std::conj(beta);
            complex term = values(i, j);
            for (int t = 0; t < n; ++t) term *= beta_conj;
            for (int t = 0; t < m; ++t) term *= beta;
            total += term;
        }
    }
    return total * grid.step() * grid.step();
}

}  // namespace gsmooth
