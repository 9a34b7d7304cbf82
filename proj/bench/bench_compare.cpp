// Benchmark: OpenMP/BLAS-backed kernels against the serial reference
// implementations. Prints wall times and speedups; exits nonzero only if the
// two paths disagree (they must be bit-identical for assembly, and within
// rounding for the BLAS products).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "nlrd/discretization.hpp"
#include "nlrd/kernels.hpp"
#include "nlrd/linalg.hpp"

using namespace nlrd;
using clk = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    auto t0 = clk::now();
    for (int r = 0; r < reps; ++r) fn();
    return std::chrono::duration<double>(clk::now() - t0).count() / reps;
}

}  // namespace

int main() {
    int status = 0;

    {
        Grid grid = build_grid(600);
        Kernel k = kernel_by_label("case4_asymmetric");
        NonlocalMatrix par, ser;
        double tp = time_of([&] { par = assemble(k, 3.0, grid); }, 5);
        double ts = time_of([&] { ser = assemble_serial(k, 3.0, grid); }, 5);
        bool identical = par.entries.a == ser.entries.a;
        std::printf("assemble n=600 case4: parallel %.3f ms, serial %.3f ms, speedup %.2fx, "
                    "bit-identical: %s\n",
                    tp * 1e3, ts * 1e3, ts / tp, identical ? "yes" : "NO");
        if (!identical) status = 1;
    }

    {
        const std::size_t n = 512;
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        Matrix A(n, n), B(n, n), C1(n, n), C2(n, n);
        for (auto& v : A.a) v = d(rng);
        for (auto& v : B.a) v = d(rng);
        double tb = time_of([&] { gemm(1.0, A, B, 0.0, C1); }, 10);
        double ts = time_of([&] { serial::gemm(1.0, A, B, 0.0, C2); }, 2);
        double diff = 0.0;
        for (std::size_t i = 0; i < C1.a.size(); ++i)
            diff = std::max(diff, std::abs(C1.a[i] - C2.a[i]));
        double gflops = 2.0 * n * n * n / tb * 1e-9;
        std::printf("gemm %zux%zu: BLAS %.3f ms (%.1f GFLOP/s), serial %.3f ms, speedup %.2fx, "
                    "max |diff| %.2e\n",
                    n, n, tb * 1e3, gflops, ts * 1e3, ts / tb, diff);
        if (diff > 1e-9) status = 1;
    }

    {
        const std::size_t n = 2048;
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        Matrix A(n, n);
        Vec x(n), y1(n), y2(n);
        for (auto& v : A.a) v = d(rng);
        for (auto& v : x) v = d(rng);
        double tb = time_of([&] { matvec(A, x, y1); }, 20);
        double ts = time_of([&] { serial::matvec(A, x, y2); }, 20);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y1[i] - y2[i]));
        std::printf("matvec n=%zu: BLAS %.3f ms, serial %.3f ms, speedup %.2fx, max |diff| %.2e\n",
                    n, tb * 1e3, ts * 1e3, ts / tb, diff);
        if (diff > 1e-9) status = 1;
    }

    return status;
}
