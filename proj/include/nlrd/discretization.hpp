#pragma once

#include "nlrd/kernels.hpp"
#include "nlrd/linalg.hpp"

namespace nlrd {

// Midpoint-rule quadrature grid on the reference domain (0, 1).
struct Grid {
    Vec nodes;
    Vec weights;
    std::size_t n_nodes() const { return nodes.size(); }
};

// Discrete nonlocal operator: entries[i][j] = w_j * rho * J(rho * (x_i - x_j)).
struct NonlocalMatrix {
    Matrix entries;
    double rho_used = 1.0;
};

Grid build_grid(std::size_t n);

// OpenMP-parallel over rows; every entry is computed independently, so the
// parallel result is bit-identical to assemble_serial.
NonlocalMatrix assemble(const Kernel& kernel, double rho, const Grid& grid);
NonlocalMatrix assemble_serial(const Kernel& kernel, double rho, const Grid& grid);

}  // namespace nlrd
