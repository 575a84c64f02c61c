#include "obx/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "obx/errors.hpp"

namespace obx {

Matrix Matrix::block(std::size_t i0, std::size_t j0,
                     std::size_t nrows, std::size_t ncols) const {
    assert(i0 + nrows <= rows_ && j0 + ncols <= cols_);
    Matrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    assert(i0 + b.rows() <= rows_ && j0 + b.cols() <= cols_);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

namespace linalg {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    const std::size_t n = a.rows(), k_dim = a.cols(), m = b.cols();
    Matrix c(n, m);
    const auto row_product = [&](std::size_t i) {
        double* ci = c.data() + i * m;
        for (std::size_t k = 0; k < k_dim; ++k) {
            const double aik = a(i, k);
            const double* bk = b.data() + k * m;
            for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    };
    // below the cutoff the plain loop avoids the runtime entirely
    if (n * k_dim * m > 32768) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i) row_product(i);
    } else {
        for (std::size_t i = 0; i < n; ++i) row_product(i);
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    const std::size_t n = a.rows(), m = a.cols();
    Vector y(n, 0.0);
    const auto row_dot = [&](std::size_t i) {
        double acc = 0.0;
        const double* ai = a.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) acc += ai[j] * x[j];
        y[i] = acc;
    };
    if (n * m > 65536) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i) row_dot(i);
    } else {
        for (std::size_t i = 0; i < n; ++i) row_dot(i);
    }
    return y;
}

double LuFactors::det() const {
    if (singular) return 0.0;
    double d = parity;
    for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
}

double LuFactors::pivot_ratio() const {
    if (singular || max_pivot == 0.0) return 0.0;
    return min_pivot / max_pivot;
}

Vector LuFactors::solve(const Vector& b) const {
    if (singular) throw Error("lu solve: matrix is singular");
    const std::size_t n = lu.rows();
    if (b.size() != n) throw std::invalid_argument("lu solve: size mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = b[perm[i]];
        for (std::size_t j = 0; j < i; ++j) acc -= lu(i, j) * y[j];
        y[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= lu(ii, j) * y[j];
        y[ii] = acc / lu(ii, ii);
    }
    return y;
}

Matrix LuFactors::solve(const Matrix& b) const {
    const std::size_t n = lu.rows();
    if (b.rows() != n) throw std::invalid_argument("lu solve: size mismatch");
    Matrix x(n, b.cols());
    Vector col(n);
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
        Vector sol = solve(col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
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
        const auto eliminate_row = [&](std::size_t i) {
            const double lik = a(i, k) / pivot;
            a(i, k) = lik;
            double* ri = a.data() + i * n;
            const double* rk = a.data() + k * n;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= lik * rk[j];
        };
        const std::size_t tail = n - k - 1;
        // fork cost amortizes only on large trailing blocks
        if (tail * tail > 65536) {
#pragma omp parallel for schedule(static)
            for (std::size_t i = k + 1; i < n; ++i) eliminate_row(i);
        } else {
            for (std::size_t i = k + 1; i < n; ++i) eliminate_row(i);
        }
    }
    f.lu = std::move(a);
    return f;
}

SvdResult svd(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Matrix w = a;
    Matrix v = Matrix::identity(n);

    // One-sided Jacobi: orthogonalize column pairs until all inner products
    // are negligible relative to the column norms.
    constexpr double kTol = 1e-15;
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wp = w(i, p), wq = w(i, q);
                    app += wp * wp;
                    aqq += wq * wq;
                    apq += wp * wq;
                }
                if (std::abs(apq) <= kTol * std::sqrt(app * aqq)) continue;
                rotated = true;
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    Vector sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += w(i, j) * w(i, j);
        sigma[j] = std::sqrt(acc);
    }

    // Sort descending; stable on ties for determinism.
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.u = Matrix(m, n);
    out.v = Matrix(n, n);
    out.sigma.resize(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        out.sigma[jj] = sigma[j];
        if (sigma[j] > 0.0)
            for (std::size_t i = 0; i < m; ++i) out.u(i, jj) = w(i, j) / sigma[j];
        for (std::size_t i = 0; i < n; ++i) out.v(i, jj) = v(i, j);
    }
    return out;
}

std::size_t rank_from_sigma(const Vector& sigma, double rel_tol) {
    if (sigma.empty()) return 0;
    const double cutoff = rel_tol * sigma.front();
    std::size_t r = 0;
    for (double s : sigma)
        if (s > cutoff && s > 0.0) ++r;
    return r;
}

double condition_number(const Matrix& a) {
    const SvdResult d = svd(a);
    if (d.sigma.empty()) return 0.0;
    const double smin = d.sigma.back();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return d.sigma.front() / smin;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix inverse(const Matrix& a) {
    LuFactors f = lu_factor(a);
    if (f.singular) throw Error("inverse: matrix is singular");
    return f.solve(Matrix::identity(a.rows()));
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    Matrix c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
}

double norm2(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("subtract: size mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(n, n);
    // Modified Gram-Schmidt on Gaussian columns; a degenerate column is
    // redrawn (vanishingly rare, keeps the draw sequence deterministic).
    for (std::size_t j = 0; j < n; ++j) {
        for (int attempt = 0;; ++attempt) {
            Vector col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = gauss(rng);
            for (std::size_t k = 0; k < j; ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * col[i];
                for (std::size_t i = 0; i < n; ++i) col[i] -= dot * q(i, k);
            }
            const double nrm = norm2(col);
            if (nrm > 1e-8) {
                for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
                break;
            }
            if (attempt > 64) throw Error("random_orthogonal: degenerate draw");
        }
    }
    return q;
}

}  // namespace linalg
}  // namespace obx
