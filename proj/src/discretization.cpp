#include "nlrd/discretization.hpp"

#include "nlrd/errors.hpp"

namespace nlrd {

Grid build_grid(std::size_t n) {
    if (n < 2) throw ConfigError("build_grid: need at least 2 nodes");
    Grid g;
    g.nodes.resize(n);
    g.weights.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        g.nodes[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return g;
}

namespace {

void fill_row(const Kernel& kernel, double rho, const Grid& grid, std::size_t i, double* out,
              std::vector<double>& scratch) {
    const std::size_t n = grid.n_nodes();
    for (std::size_t j = 0; j < n; ++j) scratch[j] = rho * (grid.nodes[i] - grid.nodes[j]);
    kernel.eval_batch(scratch, {out, n});
    for (std::size_t j = 0; j < n; ++j) out[j] *= grid.weights[j] * rho;
}

}  // namespace

NonlocalMatrix assemble(const Kernel& kernel, double rho, const Grid& grid) {
    if (!(rho > 0.0)) throw ConfigError("assemble: rho must be positive");
    const std::size_t n = grid.n_nodes();
    NonlocalMatrix K{Matrix(n, n), rho};
#pragma omp parallel
    {
        std::vector<double> scratch(n);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            fill_row(kernel, rho, grid, static_cast<std::size_t>(i),
                     K.entries.row(static_cast<std::size_t>(i)), scratch);
    }
    return K;
}

NonlocalMatrix assemble_serial(const Kernel& kernel, double rho, const Grid& grid) {
    if (!(rho > 0.0)) throw ConfigError("assemble: rho must be positive");
    const std::size_t n = grid.n_nodes();
    NonlocalMatrix K{Matrix(n, n), rho};
    std::vector<double> scratch(n);
    for (std::size_t i = 0; i < n; ++i) fill_row(kernel, rho, grid, i, K.entries.row(i), scratch);
    return K;
}

}  // namespace nlrd
