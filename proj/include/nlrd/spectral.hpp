#pragma once

#include <functional>
#include <optional>
#include <string>

#include "nlrd/discretization.hpp"
#include "nlrd/models.hpp"

namespace nlrd {

// Dense discretization of the linearized generator D(K - I) + Df(0) - c I.
struct LinearGenerator {
    Matrix matrix;
    std::optional<double> period;  // nullopt = autonomous
};

struct SpectralReport {
    double value = 0.0;
    std::optional<Vec> eigvec;  // strictly positive for Metzler-irreducible input
    std::string method;
    double residual = 0.0;
    std::size_t grid_n = 0;
    double omega = 0.0;  // growth bound ln r(Phi(T,0)) / T (periodic path only)
};

// Autonomous block generator at a frozen rho.
LinearGenerator build_generator(const ReactionSystem& system, const Kernel& kernel, double rho,
                                const Grid& grid, const Vec& diffusion, double dilution);

// Largest-real-part eigenvalue. Metzler generators use shifted power iteration
// refined by inverse iteration and report a positive eigenvector; general
// matrices fall back to a full eigensolver without an eigenvector.
SpectralReport spectral_bound_autonomous(const LinearGenerator& gen);

// Principal eigenvalue s(A) of a small Metzler matrix with Perron eigenvector.
SpectralReport ode_bound(const Matrix& A);

// Dense time-dependent generator t -> G(t).
using GeneratorBuilder = std::function<Matrix(double)>;

// Monodromy matrix Phi(T,0): RK4 on M' = G(t) M, M(0) = I, G frozen per stage.
Matrix monodromy(const GeneratorBuilder& gen_builder, double T, double dt);

// Periodic principal bound lambda*_T = -omega = -ln r(Phi(T,0)) / T.
SpectralReport periodic_bound(const GeneratorBuilder& gen_builder, double T, double dt);

// Structured periodic family: one nonlocal matrix per species plus constant
// species coupling. monodromy() on this form runs the block fast path and
// matches the dense path to rounding.
struct KernelGeneratorFamily {
    ReactionSystem system;
    Kernel kernel;
    Grid grid;
    Vec diffusion;
    std::function<double(double)> rho;
    std::function<double(double)> dilution;

    Matrix dense_at(double t) const;
    GeneratorBuilder dense_builder() const;
};

Matrix monodromy(const KernelGeneratorFamily& family, double T, double dt);
SpectralReport periodic_bound(const KernelGeneratorFamily& family, double T, double dt);

// Spectral radius of a nonnegative matrix by deterministic power iteration.
struct PowerResult {
    double value;
    Vec vec;
    double residual;
    std::size_t iterations;
};
PowerResult power_spectral_radius(const Matrix& A, double tol = 1e-10,
                                  std::size_t max_iter = 100000);

bool is_metzler(const Matrix& A, double tol = 1e-12);

}  // namespace nlrd
