#pragma once

#include <functional>
#include <vector>

namespace nlrd {

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
// Subdivides until the local error estimate is below abs_tol; throws
// QuadratureError when the interval stack exceeds max_intervals.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_intervals = 100000);

// Same, but pre-split at the given breakpoints (kink locations).
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& breakpoints, double abs_tol = 1e-10);

}  // namespace nlrd
