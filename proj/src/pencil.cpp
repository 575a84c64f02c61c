#include "obx/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "obx/errors.hpp"

namespace obx {

namespace {

Matrix pencil_at(const Matrix& c, const Matrix& g, double lambda) {
    Matrix f(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) f(i, j) = g(i, j) + lambda * c(i, j);
    return f;
}

// lambda candidates 1, -1, 2, -2, ... (0 is appended for regularity probing).
double probe_value(std::size_t index) {
    const double magnitude = double(index / 2 + 1);
    return (index % 2 == 0) ? magnitude : -magnitude;
}

// nonsingularity proxy: smallest-to-largest pivot magnitude ratio
double pivot_quality(const Matrix& c, const Matrix& g, double lambda) {
    return linalg::lu_factor(pencil_at(c, g, lambda)).pivot_ratio();
}

std::size_t rank_of(const Matrix& a, double rank_tol) {
    return linalg::rank_from_sigma(linalg::svd(a).sigma, rank_tol);
}

}  // namespace

bool is_regular(const Matrix& c, const Matrix& g) {
    if (c.rows() != c.cols() || g.rows() != g.cols() || c.rows() != g.rows())
        throw std::invalid_argument("is_regular: matrices must be square and equal-sized");
    const std::size_t n = c.rows();
    if (n == 0) return true;
    if (pivot_quality(c, g, 0.0) > 1e-12) return true;
    for (std::size_t j = 0; j < n; ++j)
        if (pivot_quality(c, g, probe_value(j)) > 1e-12) return true;
    return false;
}

WeierstrassDecomposition weierstrass(const Matrix& c, const Matrix& g,
                                     const PencilOptions& options) {
    if (c.rows() != c.cols() || g.rows() != g.cols() || c.rows() != g.rows())
        throw std::invalid_argument("weierstrass: matrices must be square and equal-sized");
    const std::size_t n = c.rows();
    if (n == 0) throw std::invalid_argument("weierstrass: empty pencil");

    // Pick the shift: first candidate whose pencil is comfortably
    // nonsingular, otherwise the best seen.
    double lambda0 = 0.0, best_quality = -1.0;
    bool found = false;
    for (std::size_t j = 0; j < 2 * (n + 1); ++j) {
        const double lam = probe_value(j);
        const double q = pivot_quality(c, g, lam);
        if (q > best_quality) {
            best_quality = q;
            lambda0 = lam;
        }
        if (q > 1e-6) {
            found = true;
            lambda0 = lam;
            break;
        }
    }
    if (!found && best_quality <= 1e-12)
        throw SingularPencilError("pencil is singular: det(G + lambda*C) vanishes at all probes");

    const Matrix f = pencil_at(c, g, lambda0);
    const linalg::LuFactors f_lu = linalg::lu_factor(f);
    if (f_lu.singular)
        throw SingularPencilError("pencil is singular at the chosen shift");
    const Matrix a = f_lu.solve(c);  // A = (G + lambda0 C)^{-1} C

    // Power A until the rank stabilizes; the stabilized power separates the
    // invertible core from the nilpotent part. Powers are renormalized to
    // unit Frobenius norm, and a norm collapse relative to the running
    // scale identifies a power that vanished identically (rank tests alone
    // cannot see that: roundoff trash looks full-rank once renormalized).
    const double a_norm = linalg::frobenius_norm(a);
    Matrix power(n, n);  // zero
    std::size_t rank = 0;
    if (a_norm > 0.0) {
        Matrix p = a;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p(i, j) /= a_norm;
        rank = rank_of(p, options.rank_tol);
        for (std::size_t iter = 0; iter < n && rank > 0; ++iter) {
            Matrix next = linalg::matmul(p, a);
            const double mu = linalg::frobenius_norm(next);
            if (mu <= options.rank_tol * a_norm) {
                // A^{j+1} is numerically zero: no invertible core at all.
                rank = 0;
                p = Matrix(n, n);
                break;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) next(i, j) /= mu;
            const std::size_t next_rank = rank_of(next, options.rank_tol);
            if (next_rank == rank) break;
            p = std::move(next);
            rank = next_rank;
        }
        power = std::move(p);
    }

    WeierstrassDecomposition w;
    w.lambda0 = lambda0;
    w.r = rank;
    w.s = n - rank;

    // Q = [range basis | null basis] of the stabilized power; both are
    // A-invariant, so Q^{-1} A Q is block diagonal.
    const linalg::SvdResult sv = linalg::svd(power);
    Matrix q(n, n);
    for (std::size_t j = 0; j < w.r; ++j)
        for (std::size_t i = 0; i < n; ++i) q(i, j) = sv.u(i, j);
    for (std::size_t j = 0; j < w.s; ++j)
        for (std::size_t i = 0; i < n; ++i) q(i, w.r + j) = sv.v(i, w.r + j);

    const linalg::SvdResult q_sv = linalg::svd(q);
    if (q_sv.sigma.back() < options.rank_tol)
        throw IllConditionedSplitError(
            "core/nilpotent separation is below the rank tolerance");

    const linalg::LuFactors q_lu = linalg::lu_factor(q);
    const Matrix a_blocks = q_lu.solve(linalg::matmul(a, q));
    const Matrix a_core = a_blocks.block(0, 0, w.r, w.r);
    const Matrix a_nil = a_blocks.block(w.r, w.r, w.s, w.s);

    // Core: J = A_core^{-1} - lambda0 I. Nil: N = (I - lambda0 A_nil)^{-1} A_nil.
    // P = blockdiag(A_core, I - lambda0 A_nil)^{-1} Q^{-1} F^{-1}.
    const Matrix qf_inv = q_lu.solve(f_lu.solve(Matrix::identity(n)));
    Matrix p(n, n);
    if (w.r > 0) {
        const linalg::LuFactors core_lu = linalg::lu_factor(a_core);
        if (core_lu.singular || core_lu.pivot_ratio() < 1e-14)
            throw IllConditionedSplitError("core block is numerically singular");
        w.J = core_lu.solve(Matrix::identity(w.r));
        for (std::size_t i = 0; i < w.r; ++i) w.J(i, i) -= lambda0;
        p.set_block(0, 0, core_lu.solve(qf_inv.block(0, 0, w.r, n)));
    } else {
        w.J = Matrix(0, 0);
    }

    if (w.s > 0) {
        Matrix w_a = Matrix::identity(w.s);
        for (std::size_t i = 0; i < w.s; ++i)
            for (std::size_t j = 0; j < w.s; ++j) w_a(i, j) -= lambda0 * a_nil(i, j);
        const linalg::LuFactors wa_lu = linalg::lu_factor(w_a);
        w.Nnil = wa_lu.solve(a_nil);
        p.set_block(w.r, 0, wa_lu.solve(qf_inv.block(w.r, 0, w.s, n)));
    } else {
        w.Nnil = Matrix(0, 0);
    }
    w.P = std::move(p);
    w.Q = std::move(q);

    // Nilpotency index: first power of the unit-normalized N whose norm
    // falls to the rank tolerance (genuinely nonzero powers stay O(1) on
    // this scale; vanished powers drop to roundoff).
    if (w.s == 0) {
        w.index_k = 0;
    } else {
        const double n_norm = linalg::frobenius_norm(w.Nnil);
        if (n_norm <= options.rank_tol) {
            w.index_k = 1;  // N = 0
        } else {
            Matrix unit = w.Nnil;
            for (std::size_t i = 0; i < w.s; ++i)
                for (std::size_t j = 0; j < w.s; ++j) unit(i, j) /= n_norm;
            int k = 1;
            Matrix nk = unit;
            while (linalg::frobenius_norm(nk) > options.rank_tol) {
                ++k;
                if (std::size_t(k) > w.s)
                    throw IllConditionedSplitError("nilpotent block failed to annihilate");
                nk = linalg::matmul(nk, unit);
            }
            w.index_k = k;
        }
    }

    // Certify the reconstruction.
    Matrix canon_c(n, n), canon_g(n, n);
    for (std::size_t i = 0; i < w.r; ++i) canon_c(i, i) = 1.0;
    canon_c.set_block(w.r, w.r, w.Nnil);
    canon_g.set_block(0, 0, w.J);
    for (std::size_t i = w.r; i < n; ++i) canon_g(i, i) = 1.0;

    const Matrix pcq = linalg::matmul(linalg::matmul(w.P, c), w.Q);
    const Matrix pgq = linalg::matmul(linalg::matmul(w.P, g), w.Q);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dc = pcq(i, j) - canon_c(i, j);
            const double dg = pgq(i, j) - canon_g(i, j);
            res += dc * dc + dg * dg;
        }
    w.reconstruction_residual = std::sqrt(res);

    const double scale = linalg::frobenius_norm(c) + linalg::frobenius_norm(g);
    if (w.reconstruction_residual > 1e-10 * scale)
        throw IllConditionedSplitError("decomposition residual exceeds tolerance");

    return w;
}

int differentiation_index(const Matrix& c, const Matrix& g,
                          const PencilOptions& options) {
    return weierstrass(c, g, options).index_k;
}

DecoupledSource decouple_source(const WeierstrassDecomposition& w,
                                const SinusoidalSource& source) {
    const Vector uc = linalg::matvec(w.P, source.b_c);
    const Vector us = linalg::matvec(w.P, source.b_s);
    DecoupledSource d;
    d.u_d.omega = d.u_a.omega = source.omega;
    d.u_d.b_c.assign(uc.begin(), uc.begin() + w.r);
    d.u_d.b_s.assign(us.begin(), us.begin() + w.r);
    d.u_a.b_c.assign(uc.begin() + w.r, uc.end());
    d.u_a.b_s.assign(us.begin() + w.r, us.end());
    return d;
}

Vector exact_algebraic_solution(const WeierstrassDecomposition& w,
                                const SinusoidalSource& u_a, double t) {
    if (u_a.dim() != w.s)
        throw std::invalid_argument("exact_algebraic_solution: dimension mismatch");
    Vector z(w.s, 0.0);
    Matrix n_power = Matrix::identity(w.s);
    for (int i = 0; i < std::max(w.index_k, 1); ++i) {
        if (i > 0) n_power = linalg::matmul(n_power, w.Nnil);
        const Vector term = linalg::matvec(n_power, u_a.derivative(i, t));
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t j = 0; j < w.s; ++j) z[j] += sign * term[j];
    }
    return z;
}

DecoupledState decouple_state(const WeierstrassDecomposition& w, const Vector& x) {
    const Vector z = linalg::lu_factor(w.Q).solve(x);
    DecoupledState d;
    d.z_d.assign(z.begin(), z.begin() + w.r);
    d.z_a.assign(z.begin() + w.r, z.end());
    return d;
}

}  // namespace obx
