// Serial reference kernels. These mirror the parallel kernels loop for loop
// (same element order, same arithmetic) so the two can be compared exactly
// in tests and timed against each other in the benchmark.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "obx/linalg.hpp"

namespace obx::linalg::serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    const std::size_t n = a.rows(), k_dim = a.cols(), m = b.cols();
    Matrix c(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = c.data() + i * m;
        for (std::size_t k = 0; k < k_dim; ++k) {
            const double aik = a(i, k);
            const double* bk = b.data() + k * m;
            for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        const double* ai = a.data() + i * a.cols();
        for (std::size_t j = 0; j < a.cols(); ++j) acc += ai[j] * x[j];
        y[i] = acc;
    }
    return y;
}

LuFactors lu_factor(Matrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("lu_factor: matrix not square");
    const std::size_t n = a.rows();
    LuFactors f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double piv_abs = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > piv_abs) {
                piv_abs = v;
                piv = i;
            }
        }
        if (piv_abs == 0.0) {
            f.singular = true;
            f.min_pivot = 0.0;
            break;
        }
        if (piv != k) {
            auto rk = a.row(k), rp = a.row(piv);
            std::swap_ranges(rk.begin(), rk.end(), rp.begin());
            std::swap(f.perm[k], f.perm[piv]);
            f.parity = -f.parity;
        }
        if (k == 0 || piv_abs < f.min_pivot) f.min_pivot = piv_abs;
        if (piv_abs > f.max_pivot) f.max_pivot = piv_abs;

        const double pivot = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double lik = a(i, k) / pivot;
            a(i, k) = lik;
            double* ri = a.data() + i * n;
            const double* rk = a.data() + k * n;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= lik * rk[j];
        }
    }
    f.lu = std::move(a);
    return f;
}

}  // namespace obx::linalg::serial
