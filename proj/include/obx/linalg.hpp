#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace obx {

/// Dense real matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool empty() const { return a_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    [[nodiscard]] double* data() { return a_.data(); }
    [[nodiscard]] const double* data() const { return a_.data(); }

    [[nodiscard]] std::span<double> row(std::size_t i) {
        return {a_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {a_.data() + i * cols_, cols_};
    }

    [[nodiscard]] Matrix block(std::size_t i0, std::size_t j0,
                               std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t i0, std::size_t j0, const Matrix& b);

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

using Vector = std::vector<double>;

namespace linalg {

// Parallel kernels. Every output element is written by exactly one loop
// iteration, so results are identical for any thread count and match the
// serial reference bit for bit.
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);

/// Packed LU factorization with partial pivoting: P*A = L*U with unit
/// lower-triangular L stored below the diagonal of `lu`.
struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;  // row i of the factored matrix came from perm[i]
    double parity = 1.0;
    bool singular = false;
    double min_pivot = 0.0;  // smallest |U_ii|
    double max_pivot = 0.0;  // largest |U_ii|

    [[nodiscard]] double det() const;
    /// min|pivot| / max|pivot|; 0 when singular. Cheap nonsingularity proxy.
    [[nodiscard]] double pivot_ratio() const;
    [[nodiscard]] Vector solve(const Vector& b) const;
    [[nodiscard]] Matrix solve(const Matrix& b) const;
};

LuFactors lu_factor(Matrix a);

/// Thin SVD via one-sided Jacobi rotations; singular values sorted
/// descending. Columns of `u` belonging to zero singular values are zero.
struct SvdResult {
    Matrix u;
    Vector sigma;
    Matrix v;
};

SvdResult svd(const Matrix& a);
std::size_t rank_from_sigma(const Vector& sigma, double rel_tol);
double condition_number(const Matrix& a);

Matrix transpose(const Matrix& a);
Matrix inverse(const Matrix& a);
Matrix hcat(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
double norm2(std::span<const double> v);
double max_abs(std::span<const double> v);
Vector subtract(std::span<const double> a, std::span<const double> b);

/// Haar-ish random orthogonal matrix; deterministic for a fixed rng state.
Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng);

// Serial reference implementations, kept for correctness tests and the
// kernel benchmark.
namespace serial {
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
LuFactors lu_factor(Matrix a);
}  // namespace serial

}  // namespace linalg
}  // namespace obx
