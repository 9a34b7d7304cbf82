#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace nlrd {

// Dispersal kernel: a 1-D probability density, nonnegative with positive mass
// at the origin. support_radius may be infinite (heavy one-sided tails).
struct Kernel {
    std::function<double(double)> evaluator;
    double support_radius = std::numeric_limits<double>::infinity();
    std::string label;
    // Kink locations, used to pre-split quadrature intervals.
    std::vector<double> breakpoints;
    // Optional vectorized evaluation; falls back to pointwise when absent.
    std::function<void(std::span<const double>, std::span<double>)> batch;

    double operator()(double x) const { return evaluator(x); }
    void eval_batch(std::span<const double> xs, std::span<double> out) const;
    // Effective integration bounds: support truncated where tails contribute < 1e-12.
    double lower_bound() const;
    double upper_bound() const;
};

// Density rho * base(rho * y); support radius divided by rho.
struct RescaledKernel {
    Kernel base;
    double rho = 1.0;

    double operator()(double y) const { return rho * base(rho * y); }
    double support_radius() const { return base.support_radius / rho; }
    Kernel as_kernel() const;
};

double eval(const Kernel& k, double x);
RescaledKernel rescale(const Kernel& k, double rho);

// First moment by adaptive quadrature, absolute error <= 1e-6.
double center_of_mass(const Kernel& k);

// | integral of rescale(k, rho) - 1 |.
double normalization_residual(const Kernel& k, double rho);

// Validation of the structural kernel assumptions. (J): continuous nonnegative
// density, J(0) > 0, unit mass. (J1): compact support and zero center of mass.
struct KernelReport {
    bool nonnegative = false;
    bool positive_at_origin = false;
    double mass_residual = 0.0;
    bool compact_support = false;
    double first_moment = 0.0;
    bool satisfies_J() const { return nonnegative && positive_at_origin && mass_residual <= 1e-8; }
    bool satisfies_J1() const { return compact_support && std::abs(first_moment) <= 1e-6; }
};
KernelReport validate_kernel(const Kernel& k);

// Built-in kernels.
Kernel tent_kernel();
Kernel case4_asymmetric_kernel();   // Gaussian left tail, linear right cutoff.
Kernel smooth_bump_kernel();        // C^1 mollifier bump on [-1, 1].
double case4_normalizing_constant();

// Lookup by label: "tent" | "case4_asymmetric" | "smooth_bump".
Kernel kernel_by_label(const std::string& label);

// Piecewise-linear kernel from a two-column CSV (offset, density); density is
// renormalized to unit mass on load.
Kernel kernel_from_csv(const std::string& path);

}  // namespace nlrd
