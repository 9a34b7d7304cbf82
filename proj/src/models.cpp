#include "nlrd/models.hpp"

#include <cmath>

#include "nlrd/errors.hpp"

namespace nlrd {

ReactionSystem wn_reaction(const WNParams& p) {
    if (!(p.d_V > 0 && p.alpha_V > 0 && p.alpha_R > 0 && p.beta_R > 0 && p.gamma_R > 0 &&
          p.N_R > 0 && p.A_V > 0 && p.D_V > 0 && p.D_R > 0))
        throw ConfigError("wn_reaction: all parameters must be strictly positive");
    ReactionSystem s;
    s.m = 2;
    s.cap_v = {p.A_V, p.N_R};
    s.f = [p](std::span<const double> u, std::span<double> out) {
        const double IV = u[0], IR = u[1];
        out[0] = p.alpha_V * p.beta_R * (IR / p.N_R) * (p.A_V - IV) - p.d_V * IV;
        out[1] = p.alpha_R * p.beta_R * (IV / p.N_R) * (p.N_R - IR) - p.gamma_R * IR;
    };
    s.jacobian = [p](std::span<const double> u, Matrix& J) {
        const double IV = u[0], IR = u[1];
        J(0, 0) = -p.alpha_V * p.beta_R * IR / p.N_R - p.d_V;
        J(0, 1) = p.alpha_V * p.beta_R * (p.A_V - IV) / p.N_R;
        J(1, 0) = p.alpha_R * p.beta_R * (p.N_R - IR) / p.N_R;
        J(1, 1) = -p.alpha_R * p.beta_R * IV / p.N_R - p.gamma_R;
    };
    s.params = {{"d_V", p.d_V},   {"alpha_V", p.alpha_V}, {"alpha_R", p.alpha_R},
                {"beta_R", p.beta_R}, {"gamma_R", p.gamma_R}, {"N_R", p.N_R},
                {"A_V", p.A_V},   {"D_V", p.D_V},       {"D_R", p.D_R}};
    s.label = "west_nile";
    return s;
}

ReactionSystem logistic_reaction(double r, double K) {
    if (!(r > 0 && K > 0)) throw ConfigError("logistic_reaction: r and K must be positive");
    ReactionSystem s;
    s.m = 1;
    s.cap_v = {K};
    s.f = [r, K](std::span<const double> u, std::span<double> out) {
        out[0] = r * u[0] * (1.0 - u[0] / K);
    };
    s.jacobian = [r, K](std::span<const double> u, Matrix& J) {
        J(0, 0) = r * (1.0 - 2.0 * u[0] / K);
    };
    s.params = {{"r", r}, {"K", K}};
    s.label = "logistic";
    return s;
}

namespace {

// Additive-recurrence quasi-random sequence in [0,1)^d.
class QuasiRandom {
  public:
    explicit QuasiRandom(std::size_t dim) : dim_(dim), state_(dim, 0.5) {
        // One irrational stride per dimension, from the generalized golden ratio.
        double g = 1.0;
        for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (dim + 1.0));
        strides_.resize(dim);
        double a = 1.0 / g;
        for (std::size_t i = 0; i < dim; ++i) {
            strides_[i] = a;
            a /= g;
        }
    }
    const Vec& next() {
        for (std::size_t i = 0; i < dim_; ++i) state_[i] = std::fmod(state_[i] + strides_[i], 1.0);
        return state_;
    }

  private:
    std::size_t dim_;
    Vec strides_;
    Vec state_;
};

bool sign_pattern_irreducible(const Matrix& J, std::size_t m) {
    // Reachability on the off-diagonal sign pattern.
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && J(i, j) != 0.0) adj[i].push_back(j);
    for (std::size_t s = 0; s < m; ++s) {
        std::vector<bool> seen(m, false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
        }
        if (count < m) return false;
    }
    return true;
}

}  // namespace

AssumptionFReport validate_F(const ReactionSystem& system, std::size_t samples) {
    if (samples < 1) throw ConfigError("validate_F: samples must be >= 1");
    const std::size_t m = system.m;
    AssumptionFReport rep;
    constexpr double tol = 1e-12;

    Vec zero(m, 0.0), fz(m);
    system.f(zero, fz);
    rep.f0_zero = max_abs(fz) <= 1e-14;

    rep.cooperative = true;
    rep.irreducible = true;
    rep.subhomogeneous = true;
    rep.worst_offdiag = 0.0;
    rep.worst_subhom_margin = std::numeric_limits<double>::infinity();
    rep.cap_margin = -std::numeric_limits<double>::infinity();

    QuasiRandom qr(m + 1);
    Matrix J(m, m);
    Vec u(m), au(m), fu(m), fau(m);
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec& q = qr.next();
        for (std::size_t i = 0; i < m; ++i) u[i] = q[i] * system.cap_v[i];
        const double alpha = 0.05 + 0.9 * q[m];

        system.jacobian(u, J);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j && J(i, j) < rep.worst_offdiag) {
                    rep.worst_offdiag = J(i, j);
                    rep.witness_u = u;
                }
        if (!sign_pattern_irreducible(J, m)) rep.irreducible = false;

        system.f(u, fu);
        for (std::size_t i = 0; i < m; ++i) au[i] = alpha * u[i];
        system.f(au, fau);
        for (std::size_t i = 0; i < m; ++i) {
            const double margin = fau[i] - alpha * fu[i];
            if (margin < rep.worst_subhom_margin) {
                rep.worst_subhom_margin = margin;
                if (margin < -tol) {
                    rep.witness_u = u;
                    rep.witness_alpha = alpha;
                }
            }
        }
        // Cap condition: f_i(u) <= 0 whenever u_i = v_i.
        for (std::size_t i = 0; i < m; ++i) {
            Vec uc = u;
            uc[i] = system.cap_v[i];
            Vec fc(m);
            system.f(uc, fc);
            rep.cap_margin = std::max(rep.cap_margin, fc[i]);
        }
    }
    rep.cooperative = rep.worst_offdiag >= -tol;
    rep.subhomogeneous = rep.worst_subhom_margin >= -tol;
    return rep;
}

double jacobian_fd_check(const ReactionSystem& system, std::span<const double> point, double h) {
    if (!(h > 0.0)) throw ConfigError("jacobian_fd_check: h must be positive");
    const std::size_t m = system.m;
    Matrix J = system.jacobian_at(point);
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, std::abs(J(i, j)));
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    Vec up(point.begin(), point.end()), un(point.begin(), point.end()), fp(m), fn(m);
    for (std::size_t j = 0; j < m; ++j) {
        up[j] += h;
        un[j] -= h;
        system.f(up, fp);
        system.f(un, fn);
        for (std::size_t i = 0; i < m; ++i) {
            const double fd = (fp[i] - fn[i]) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - J(i, j)) / scale);
        }
        up[j] = point[j];
        un[j] = point[j];
    }
    return worst;
}

}  // namespace nlrd
