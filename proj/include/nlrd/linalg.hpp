#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlrd {

using Vec = std::vector<double>;

// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vec a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    double* row(std::size_t i) { return a.data() + i * cols; }
    const double* row(std::size_t i) const { return a.data() + i * cols; }

    static Matrix identity(std::size_t n);
};

// y = A x (BLAS-backed; per-row dot products, deterministic).
void matvec(const Matrix& A, std::span<const double> x, std::span<double> y);

// C = alpha A B + beta C.
void gemm(double alpha, const Matrix& A, const Matrix& B, double beta, Matrix& C);

// Raw row-major gemm on subblocks: C[m x n] = alpha A[m x k] B[k x n] + beta C.
void gemm_raw(std::size_t m, std::size_t n, std::size_t k, double alpha, const double* A,
              std::size_t lda, const double* B, std::size_t ldb, double beta, double* C,
              std::size_t ldc);

// Solve A x = b in place (LU with partial pivoting); b holds x on return.
void lu_solve(Matrix A, std::span<double> b);

// All eigenvalues of a general dense matrix.
std::vector<std::complex<double>> eigenvalues(const Matrix& A);

double max_abs(std::span<const double> v);

// Plain triple-loop / dot-product implementations used to validate the
// BLAS-backed paths and as the baseline in benchmarks.
namespace serial {
void matvec(const Matrix& A, std::span<const double> x, std::span<double> y);
void gemm(double alpha, const Matrix& A, const Matrix& B, double beta, Matrix& C);
}  // namespace serial

}  // namespace nlrd
