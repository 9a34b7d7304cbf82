#include "nlrd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nlrd/errors.hpp"
#include "nlrd/quadrature.hpp"

namespace nlrd {

namespace {
// Truncation point for unbounded supports: the Gaussian-type tails used here
// contribute less than 1e-12 beyond |x| = 8.
constexpr double kTailCut = 8.0;
}  // namespace

void Kernel::eval_batch(std::span<const double> xs, std::span<double> out) const {
    if (batch) {
        batch(xs, out);
        return;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = evaluator(xs[i]);
}

double Kernel::lower_bound() const {
    return std::isfinite(support_radius) ? -support_radius : -kTailCut;
}

double Kernel::upper_bound() const {
    return std::isfinite(support_radius) ? support_radius : kTailCut;
}

Kernel RescaledKernel::as_kernel() const {
    const Kernel b = base;
    const double r = rho;
    Kernel k;
    k.evaluator = [b, r](double y) { return r * b(r * y); };
    k.support_radius = b.support_radius / r;
    k.label = b.label + "@rho=" + std::to_string(r);
    for (double p : b.breakpoints) k.breakpoints.push_back(p / r);
    if (b.batch) {
        auto inner = b.batch;
        k.batch = [inner, r](std::span<const double> xs, std::span<double> out) {
            std::vector<double> scaled(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) scaled[i] = r * xs[i];
            inner(scaled, out);
            for (double& v : out) v *= r;
        };
    }
    return k;
}

double eval(const Kernel& k, double x) { return k.evaluator(x); }

RescaledKernel rescale(const Kernel& k, double rho) {
    if (!(rho > 0.0)) throw ConfigError("rescale: rho must be positive");
    return RescaledKernel{k, rho};
}

double center_of_mass(const Kernel& k) {
    const double lo = k.lower_bound(), hi = k.upper_bound();
    return integrate_split([&k](double x) { return x * k(x); }, lo, hi, k.breakpoints, 1e-10);
}

double normalization_residual(const Kernel& k, double rho) {
    RescaledKernel rk = rescale(k, rho);
    const double lo = k.lower_bound() / rho, hi = k.upper_bound() / rho;
    std::vector<double> bps;
    for (double p : k.breakpoints) bps.push_back(p / rho);
    double mass = integrate_split([&rk](double y) { return rk(y); }, lo, hi, bps, 1e-10);
    return std::abs(mass - 1.0);
}

KernelReport validate_kernel(const Kernel& k) {
    KernelReport rep;
    rep.positive_at_origin = k(0.0) > 0.0;
    rep.compact_support = std::isfinite(k.support_radius);
    const double lo = k.lower_bound(), hi = k.upper_bound();
    rep.nonnegative = true;
    for (int i = 0; i <= 2000; ++i) {
        const double x = lo + (hi - lo) * i / 2000.0;
        if (k(x) < 0.0) {
            rep.nonnegative = false;
            break;
        }
    }
    double mass = integrate_split([&k](double x) { return k(x); }, lo, hi, k.breakpoints, 1e-10);
    rep.mass_residual = std::abs(mass - 1.0);
    rep.first_moment = center_of_mass(k);
    return rep;
}

Kernel tent_kernel() {
    Kernel k;
    k.evaluator = [](double x) { return std::max(0.0, 1.0 - std::abs(x)); };
    k.support_radius = 1.0;
    k.label = "tent";
    k.breakpoints = {-1.0, 0.0, 1.0};
    k.batch = [](std::span<const double> xs, std::span<double> out) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::max(0.0, 1.0 - std::abs(xs[i]));
    };
    return k;
}

double case4_normalizing_constant() { return 1.0 / (0.25 + std::sqrt(M_PI / 2.0)); }

Kernel case4_asymmetric_kernel() {
    const double C = case4_normalizing_constant();
    Kernel k;
    k.evaluator = [C](double x) {
        if (x <= 0.0) return C * std::exp(-0.5 * x * x);
        if (x < 0.5) return C * (1.0 - 2.0 * x);
        return 0.0;
    };
    k.support_radius = std::numeric_limits<double>::infinity();
    k.label = "case4_asymmetric";
    k.breakpoints = {0.0, 0.5};
    k.batch = [C](std::span<const double> xs, std::span<double> out) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            out[i] = x <= 0.0 ? C * std::exp(-0.5 * x * x)
                              : (x < 0.5 ? C * (1.0 - 2.0 * x) : 0.0);
        }
    };
    return k;
}

Kernel smooth_bump_kernel() {
    // psi(x) = C exp(-1/(1-x^2)) on (-1,1); C fixed once by quadrature.
    static const double C = [] {
        double mass = integrate(
            [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; },
            -1.0, 1.0, 1e-12);
        return 1.0 / mass;
    }();
    Kernel k;
    k.evaluator = [](double x) {
        return std::abs(x) < 1.0 ? C * std::exp(-1.0 / (1.0 - x * x)) : 0.0;
    };
    k.support_radius = 1.0;
    k.label = "smooth_bump";
    k.breakpoints = {-1.0, 1.0};
    return k;
}

Kernel kernel_by_label(const std::string& label) {
    if (label == "tent") return tent_kernel();
    if (label == "case4_asymmetric") return case4_asymmetric_kernel();
    if (label == "smooth_bump") return smooth_bump_kernel();
    throw ConfigError("unknown kernel label: " + label);
}

Kernel kernel_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open kernel CSV: " + path);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x >> y)) continue;
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 2) throw ConfigError("kernel CSV needs at least two rows: " + path);
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1]) throw ConfigError("kernel CSV offsets must be strictly increasing");
    for (double y : ys)
        if (y < 0.0) throw ConfigError("kernel CSV densities must be nonnegative");
    // Trapezoid mass of the piecewise-linear interpolant, then renormalize.
    double mass = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        mass += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    if (mass <= 0.0) throw ConfigError("kernel CSV has zero mass");
    for (double& y : ys) y /= mass;

    Kernel k;
    k.evaluator = [xs, ys](double x) {
        if (x <= xs.front() || x >= xs.back()) {
            if (x == xs.front()) return ys.front();
            if (x == xs.back()) return ys.back();
            return 0.0;
        }
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    };
    k.support_radius = std::max(std::abs(xs.front()), std::abs(xs.back()));
    k.label = "csv:" + path;
    k.breakpoints = xs;
    return k;
}

}  // namespace nlrd
