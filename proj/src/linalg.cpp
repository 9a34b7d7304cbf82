#include "nlrd/linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <cstdlib>

#include "nlrd/errors.hpp"

namespace nlrd {

Matrix Matrix::identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

void matvec(const Matrix& A, std::span<const double> x, std::span<double> y) {
    cblas_dgemv(CblasRowMajor, CblasNoTrans, static_cast<int>(A.rows), static_cast<int>(A.cols),
                1.0, A.a.data(), static_cast<int>(A.cols), x.data(), 1, 0.0, y.data(), 1);
}

void gemm(double alpha, const Matrix& A, const Matrix& B, double beta, Matrix& C) {
    gemm_raw(A.rows, B.cols, A.cols, alpha, A.a.data(), A.cols, B.a.data(), B.cols, beta,
             C.a.data(), C.cols);
}

void gemm_raw(std::size_t m, std::size_t n, std::size_t k, double alpha, const double* A,
              std::size_t lda, const double* B, std::size_t ldb, double beta, double* C,
              std::size_t ldc) {
    cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(m),
                static_cast<int>(n), static_cast<int>(k), alpha, A, static_cast<int>(lda), B,
                static_cast<int>(ldb), beta, C, static_cast<int>(ldc));
}

void lu_solve(Matrix A, std::span<double> b) {
    const int n = static_cast<int>(A.rows);
    std::vector<int> ipiv(A.rows);
    int info = LAPACKE_dgesv(LAPACK_ROW_MAJOR, n, 1, A.a.data(), n, ipiv.data(), b.data(), 1);
    if (info != 0) throw NumericError("lu_solve: singular matrix (dgesv info=" + std::to_string(info) + ")");
}

std::vector<std::complex<double>> eigenvalues(const Matrix& A) {
    const int n = static_cast<int>(A.rows);
    Matrix work = A;
    Vec wr(A.rows), wi(A.rows);
    int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, work.a.data(), n, wr.data(), wi.data(),
                             nullptr, n, nullptr, n);
    if (info != 0) throw NumericError("eigenvalues: dgeev failed (info=" + std::to_string(info) + ")");
    std::vector<std::complex<double>> ev(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) ev[i] = {wr[i], wi[i]};
    return ev;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

namespace serial {

void matvec(const Matrix& A, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < A.rows; ++i) {
        double s = 0.0;
        const double* r = A.row(i);
        for (std::size_t j = 0; j < A.cols; ++j) s += r[j] * x[j];
        y[i] = s;
    }
}

void gemm(double alpha, const Matrix& A, const Matrix& B, double beta, Matrix& C) {
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < B.cols; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < A.cols; ++k) s += A(i, k) * B(k, j);
            C(i, j) = alpha * s + beta * C(i, j);
        }
    }
}

}  // namespace serial
}  // namespace nlrd
