#include "nlrd/spectral.hpp"

#include <lapacke.h>

#include <cmath>

#include "nlrd/errors.hpp"

namespace nlrd {

bool is_metzler(const Matrix& A, double tol) {
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j)
            if (i != j && A(i, j) < -tol) return false;
    return true;
}

LinearGenerator build_generator(const ReactionSystem& system, const Kernel& kernel, double rho,
                                const Grid& grid, const Vec& diffusion, double dilution) {
    const std::size_t m = system.m, n = grid.n_nodes();
    NonlocalMatrix K = assemble(kernel, rho, grid);
    Matrix A = system.jacobian_at_zero();
    Matrix G(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < n; ++p) {
            double* row = G.row(i * n + p);
            for (std::size_t q = 0; q < n; ++q) row[i * n + q] = diffusion[i] * K.entries(p, q);
            row[i * n + p] += -diffusion[i] - dilution + A(i, i);
            for (std::size_t j = 0; j < m; ++j)
                if (j != i) row[j * n + p] += A(i, j);
        }
    }
    return {std::move(G), std::nullopt};
}

PowerResult power_spectral_radius(const Matrix& A, double tol, std::size_t max_iter) {
    const std::size_t n = A.rows;
    Vec v(n, 1.0), w(n);
    double lambda = 0.0;
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        matvec(A, v, w);
        double rayleigh_num = 0.0, rayleigh_den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rayleigh_num += v[i] * w[i];
            rayleigh_den += v[i] * v[i];
        }
        const double next = rayleigh_num / rayleigh_den;
        const double norm = max_abs(w);
        if (norm == 0.0) return {0.0, v, 0.0, it};
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (it > 0 && std::abs(next - lambda) <= tol * (1.0 + std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    if (it == max_iter)
        throw ConvergenceError("power iteration: no convergence in " + std::to_string(max_iter) +
                               " steps");
    matvec(A, v, w);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(w[i] - lambda * v[i]));
    return {lambda, v, res / max_abs(v), it};
}

namespace {

// A few inverse-iteration sweeps around mu to polish the eigenpair.
void inverse_iteration_refine(const Matrix& G, double& lambda, Vec& v) {
    const std::size_t n = G.rows;
    const int ni = static_cast<int>(n);
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double mu = lambda + (attempt == 0 ? 0.0 : attempt * 1e-8 * (1.0 + std::abs(lambda)));
        Matrix S = G;
        for (std::size_t i = 0; i < n; ++i) S(i, i) -= mu;
        std::vector<int> ipiv(n);
        Matrix lu = S;
        if (LAPACKE_dgetrf(LAPACK_ROW_MAJOR, ni, ni, lu.a.data(), ni, ipiv.data()) != 0) continue;
        Vec x = v, w(n);
        bool ok = true;
        for (int sweep = 0; sweep < 5 && ok; ++sweep) {
            if (LAPACKE_dgetrs(LAPACK_ROW_MAJOR, 'N', ni, 1, lu.a.data(), ni, ipiv.data(),
                               x.data(), 1) != 0) {
                ok = false;
                break;
            }
            const double norm = max_abs(x);
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                ok = false;
                break;
            }
            for (double& xi : x) xi /= norm;
        }
        if (!ok) continue;
        matvec(G, x, w);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += x[i] * w[i];
            den += x[i] * x[i];
        }
        lambda = num / den;
        v = x;
        return;
    }
}

}  // namespace

SpectralReport spectral_bound_autonomous(const LinearGenerator& gen) {
    const Matrix& G = gen.matrix;
    if (gen.period)
        throw ConfigError("spectral_bound_autonomous: generator is time-dependent");
    SpectralReport rep;
    rep.grid_n = G.rows;
    if (!is_metzler(G)) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& ev : eigenvalues(G)) best = std::max(best, ev.real());
        rep.value = best;
        rep.method = "dense_eigensolver";
        return rep;
    }
    double shift = 0.0;
    for (std::size_t i = 0; i < G.rows; ++i) shift = std::max(shift, std::abs(G(i, i)));
    shift += 1.0;
    Matrix B = G;
    for (std::size_t i = 0; i < G.rows; ++i) B(i, i) += shift;
    PowerResult pr = power_spectral_radius(B, 1e-10);
    double lambda = pr.value - shift;
    Vec v = pr.vec;
    inverse_iteration_refine(G, lambda, v);
    Vec w(G.rows);
    matvec(G, v, w);
    double res = 0.0;
    for (std::size_t i = 0; i < G.rows; ++i) res = std::max(res, std::abs(w[i] - lambda * v[i]));
    rep.value = lambda;
    rep.residual = res / max_abs(v);
    rep.method = "shifted_power+inverse_iteration";
    rep.eigvec = std::move(v);
    return rep;
}

SpectralReport ode_bound(const Matrix& A) {
    if (!is_metzler(A)) throw ConfigError("ode_bound: matrix is not Metzler");
    SpectralReport rep;
    rep.grid_n = A.rows;
    double shift = 0.0;
    for (std::size_t i = 0; i < A.rows; ++i) shift = std::max(shift, std::abs(A(i, i)));
    shift += 1.0;
    Matrix B = A;
    for (std::size_t i = 0; i < A.rows; ++i) B(i, i) += shift;
    PowerResult pr = power_spectral_radius(B, 1e-12);
    double lambda = pr.value - shift;
    Vec v = pr.vec;
    inverse_iteration_refine(A, lambda, v);
    // Normalize to unit Euclidean length with positive orientation.
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    double sign = 0.0;
    for (double x : v) sign += x;
    const double scale = (sign < 0.0 ? -1.0 : 1.0) / nrm;
    for (double& x : v) x *= scale;
    Vec w(A.rows);
    matvec(A, v, w);
    double res = 0.0;
    for (std::size_t i = 0; i < A.rows; ++i) res = std::max(res, std::abs(w[i] - lambda * v[i]));
    rep.value = lambda;
    rep.residual = res / max_abs(v);
    rep.method = "shifted_power+inverse_iteration";
    bool strictly_positive = true;
    for (double x : v) strictly_positive = strictly_positive && x > 0.0;
    if (!strictly_positive) rep.method += " (warning: eigenvector not strictly positive)";
    rep.eigvec = std::move(v);
    return rep;
}

namespace {

std::size_t checked_steps(double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("monodromy: T and dt must be positive");
    const double ratio = T / dt;
    const auto steps = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio || steps == 0)
        throw ConfigError("monodromy: dt must divide T");
    return steps;
}

void check_finite(const Matrix& M, double t) {
    for (double x : M.a)
        if (!std::isfinite(x))
            throw NumericError("monodromy: non-finite entries at t=" + std::to_string(t));
}

}  // namespace

Matrix monodromy(const GeneratorBuilder& gen_builder, double T, double dt) {
    const std::size_t steps = checked_steps(T, dt);
    Matrix M;
    {
        Matrix G0 = gen_builder(0.0);
        M = Matrix::identity(G0.rows);
    }
    const std::size_t n = M.rows;
    Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
    Matrix Gnext = gen_builder(0.0);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        Matrix G1 = std::move(Gnext);
        Matrix G2 = gen_builder(t + 0.5 * dt);
        Gnext = gen_builder(t + dt);
        gemm(1.0, G1, M, 0.0, k1);
        for (std::size_t i = 0; i < M.a.size(); ++i) tmp.a[i] = M.a[i] + 0.5 * dt * k1.a[i];
        gemm(1.0, G2, tmp, 0.0, k2);
        for (std::size_t i = 0; i < M.a.size(); ++i) tmp.a[i] = M.a[i] + 0.5 * dt * k2.a[i];
        gemm(1.0, G2, tmp, 0.0, k3);
        for (std::size_t i = 0; i < M.a.size(); ++i) tmp.a[i] = M.a[i] + dt * k3.a[i];
        gemm(1.0, Gnext, tmp, 0.0, k4);
        for (std::size_t i = 0; i < M.a.size(); ++i)
            M.a[i] += dt / 6.0 * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
        if ((s & 255) == 0 || s + 1 == steps) check_finite(M, t + dt);
    }
    return M;
}

Matrix KernelGeneratorFamily::dense_at(double t) const {
    LinearGenerator g = build_generator(system, kernel, rho(t), grid, diffusion, dilution(t));
    return std::move(g.matrix);
}

GeneratorBuilder KernelGeneratorFamily::dense_builder() const {
    KernelGeneratorFamily copy = *this;
    return [copy](double t) { return copy.dense_at(t); };
}

namespace {

// Y = G(t) M in block form: only the per-species nonlocal products are cubic,
// the constant coupling is diagonal across nodes.
void apply_structured(const KernelGeneratorFamily& fam, const Matrix& K, double dilution,
                      const Matrix& A, const Matrix& M, Matrix& Y, Matrix& Ktilde) {
    const std::size_t m = fam.system.m, n = fam.grid.n_nodes(), w = M.cols;
    if (Ktilde.rows != n) Ktilde = Matrix(n, n);
    for (std::size_t i = 0; i < m; ++i) {
        double* yi = Y.a.data() + i * n * w;
        // Species coupling first: Y_i = sum_{j != i} A(i,j) M_j.
        bool seeded = false;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const double* mj = M.a.data() + j * n * w;
            const double aij = A(i, j);
            if (!seeded) {
                for (std::size_t idx = 0; idx < n * w; ++idx) yi[idx] = aij * mj[idx];
                seeded = true;
            } else {
                for (std::size_t idx = 0; idx < n * w; ++idx) yi[idx] += aij * mj[idx];
            }
        }
        // Fold diffusion and the diagonal into one matrix so the whole row
        // block costs a single gemm: Y_i += (d_i K + diag I) M_i.
        const double di = fam.diffusion[i];
        const double diag = -di - dilution + A(i, i);
        for (std::size_t p = 0; p < n * n; ++p) Ktilde.a[p] = di * K.a[p];
        for (std::size_t p = 0; p < n; ++p) Ktilde(p, p) += diag;
        gemm_raw(n, w, n, 1.0, Ktilde.a.data(), n, M.a.data() + i * n * w, w,
                 seeded ? 1.0 : 0.0, yi, w);
    }
}

// Uniform midpoint grids make the kernel matrix Toeplitz: entry (i, j) only
// depends on i - j, so one batch of 2n-1 kernel values fills the matrix.
bool uniform_spacing(const Grid& grid, double& h) {
    const std::size_t n = grid.n_nodes();
    if (n < 2) return false;
    h = grid.nodes[1] - grid.nodes[0];
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (std::abs((grid.nodes[j + 1] - grid.nodes[j]) - h) > 1e-14) return false;
        if (std::abs(grid.weights[j] - grid.weights[0]) > 1e-16) return false;
    }
    return true;
}

void assemble_toeplitz(const Kernel& kernel, double rho, const Grid& grid, double h, Matrix& K) {
    const std::size_t n = grid.n_nodes();
    if (K.rows != n) K = Matrix(n, n);
    Vec xs(2 * n - 1), vals(2 * n - 1);
    for (std::size_t k = 0; k < 2 * n - 1; ++k)
        xs[k] = rho * (static_cast<double>(k) - static_cast<double>(n - 1)) * h;
    kernel.eval_batch(xs, vals);
    const double scale = grid.weights[0] * rho;
    for (std::size_t i = 0; i < n; ++i) {
        double* row = K.row(i);
        const double* base = vals.data() + (n - 1 + i);
        for (std::size_t j = 0; j < n; ++j) row[j] = scale * base[-(std::ptrdiff_t)j];
    }
}

}  // namespace

Matrix monodromy(const KernelGeneratorFamily& family, double T, double dt) {
    const std::size_t steps = checked_steps(T, dt);
    const std::size_t m = family.system.m, n = family.grid.n_nodes(), N = m * n;
    const Matrix A = family.system.jacobian_at_zero();

    double h = 0.0;
    const bool toeplitz = uniform_spacing(family.grid, h);
    auto fill_K = [&](double rho, Matrix& K) {
        if (toeplitz)
            assemble_toeplitz(family.kernel, rho, family.grid, h, K);
        else
            K = assemble(family.kernel, rho, family.grid).entries;
    };

    Matrix M = Matrix::identity(N);
    Matrix k1(N, N), k2(N, N), k3(N, N), k4(N, N), tmp(N, N), Ktilde(n, n);
    Matrix K1, Khalf, Knext;
    fill_K(family.rho(0.0), Knext);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        std::swap(K1, Knext);
        fill_K(family.rho(t + 0.5 * dt), Khalf);
        fill_K(family.rho(t + dt), Knext);
        const double c1 = family.dilution(t), c2 = family.dilution(t + 0.5 * dt),
                     c3 = family.dilution(t + dt);
        apply_structured(family, K1, c1, A, M, k1, Ktilde);
        for (std::size_t i = 0; i < M.a.size(); ++i) tmp.a[i] = M.a[i] + 0.5 * dt * k1.a[i];
        apply_structured(family, Khalf, c2, A, tmp, k2, Ktilde);
        for (std::size_t i = 0; i < M.a.size(); ++i) tmp.a[i] = M.a[i] + 0.5 * dt * k2.a[i];
        apply_structured(family, Khalf, c2, A, tmp, k3, Ktilde);
        for (std::size_t i = 0; i < M.a.size(); ++i) tmp.a[i] = M.a[i] + dt * k3.a[i];
        apply_structured(family, Knext, c3, A, tmp, k4, Ktilde);
        for (std::size_t i = 0; i < M.a.size(); ++i)
            M.a[i] += dt / 6.0 * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
        if ((s & 255) == 0 || s + 1 == steps) check_finite(M, t + dt);
    }
    return M;
}

namespace {

SpectralReport bound_from_monodromy(Matrix Phi, double T) {
    SpectralReport rep;
    rep.grid_n = Phi.rows;
    PowerResult pr = power_spectral_radius(Phi, 1e-12);
    if (!(pr.value > 0.0) || !std::isfinite(pr.value))
        throw NumericError("periodic_bound: degenerate monodromy operator (r <= 0)");
    rep.omega = std::log(pr.value) / T;
    rep.value = -rep.omega;
    rep.residual = pr.residual / std::max(pr.value, 1.0);
    rep.method = "monodromy_rk4+power";
    rep.eigvec = std::move(pr.vec);
    return rep;
}

}  // namespace

SpectralReport periodic_bound(const GeneratorBuilder& gen_builder, double T, double dt) {
    return bound_from_monodromy(monodromy(gen_builder, T, dt), T);
}

SpectralReport periodic_bound(const KernelGeneratorFamily& family, double T, double dt) {
    return bound_from_monodromy(monodromy(family, T, dt), T);
}

}  // namespace nlrd
