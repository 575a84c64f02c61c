#include "obx/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "obx/errors.hpp"
#include "obx/format.hpp"
#include "obx/pencil.hpp"

namespace obx {

Matrix assemble(const LinearDae& dae, const ObreshkovScheme& scheme, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("assemble: h must be > 0");
    const std::size_t n = dae.dim();
    const int m = scheme.m;
    Matrix a((m + 1) * n, (m + 1) * n);

    for (int bi = 0; bi < m; ++bi)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                a(bi * n + i, bi * n + j) = dae.G(i, j);
                a(bi * n + i, (bi + 1) * n + j) = dae.C(i, j) / h;
            }

    for (int bj = 0; bj <= m; ++bj) {
        const double coeff =
            (bj % 2 == 0) ? scheme.alpha_current[bj] : -scheme.alpha_current[bj];
        for (std::size_t i = 0; i < n; ++i) a(m * n + i, bj * n + i) = coeff;
    }
    return a;
}

Vector build_rhs(const LinearDae& dae, const ObreshkovScheme& scheme,
                 const StepState& prev, double t_n) {
    const std::size_t n = dae.dim();
    const int m = scheme.m, l = scheme.l;
    if (prev.block_count() < std::size_t(l) + 1)
        throw InsufficientHistoryError(
            "previous state holds " + std::to_string(prev.block_count()) +
            " derivative blocks, need " + std::to_string(l + 1));

    const double h = prev.h_used;
    Vector rhs((m + 1) * n, 0.0);
    double h_pow = 1.0;
    for (int bi = 0; bi < m; ++bi) {
        const Vector bd = dae.source.derivative(bi, t_n);
        for (std::size_t i = 0; i < n; ++i) rhs[bi * n + i] = h_pow * bd[i];
        h_pow *= h;
    }
    for (int i = 0; i <= l; ++i) {
        const Vector& blk = prev.block(i);
        const double coeff = scheme.alpha_past[i];
        for (std::size_t j = 0; j < n; ++j) rhs[m * n + j] += coeff * blk[j];
    }
    return rhs;
}

AugmentedSolver::AugmentedSolver(const LinearDae& dae, const ObreshkovScheme& scheme,
                                 double h)
    : dae_(&dae), scheme_(scheme), h_(h) {
    if (!(h > 0.0)) throw std::invalid_argument("AugmentedSolver: h must be > 0");
    if (!is_regular(dae.C, dae.G))
        throw SingularPencilError("pencil is singular; the system is not solvable");
    matrix_ = assemble(dae, scheme, h);
    lu_ = linalg::lu_factor(matrix_);
    if (lu_.singular || lu_.pivot_ratio() < 1e-15)
        throw SingularAugmentedError("augmented matrix is singular (h=" +
                                     format_double(h) + ", l=" + std::to_string(scheme.l) +
                                     ", m=" + std::to_string(scheme.m) + ")");
}

StepState AugmentedSolver::step(const StepState& prev) const {
    // Blocks are h-scaled, so a state produced with a different step size
    // cannot be consumed here. h_used == 0 marks a hand-built state whose
    // blocks are taken to be scaled with the solver's h.
    if (prev.h_used != 0.0 && std::abs(prev.h_used - h_) > 1e-12 * h_)
        throw std::invalid_argument(
            "step: previous state blocks are scaled with a different h");
    StepState work = prev;
    work.h_used = h_;
    const double t_n = prev.t + h_;
    const Vector rhs = build_rhs(*dae_, scheme_, work, t_n);
    const Vector sol = lu_.solve(rhs);

    const std::size_t n = dae_->dim();
    StepState next;
    next.t = t_n;
    next.h_used = h_;
    next.scaled_derivatives.resize(scheme_.m + 1);
    for (int bi = 0; bi <= scheme_.m; ++bi)
        next.scaled_derivatives[bi].assign(sol.begin() + bi * n,
                                           sol.begin() + (bi + 1) * n);
    return next;
}

StepState step(const LinearDae& dae, const ObreshkovScheme& scheme,
               const StepState& prev, double h) {
    return AugmentedSolver(dae, scheme, h).step(prev);
}

std::vector<StepState> march(const LinearDae& dae, const ObreshkovScheme& scheme,
                             const StepState& initial, double h, int steps) {
    if (steps < 1) throw std::invalid_argument("march: steps must be >= 1");
    const AugmentedSolver solver(dae, scheme, h);
    std::vector<StepState> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.push_back(initial);
    if (trajectory.front().h_used == 0.0) trajectory.front().h_used = h;
    for (int i = 0; i < steps; ++i) trajectory.push_back(solver.step(trajectory.back()));
    return trajectory;
}

StepState initial_state_from_steady_state(const LinearDae& dae,
                                          const PhasorSolution& phasor,
                                          const ObreshkovScheme& scheme, double h) {
    if (phasor.X_c.size() != dae.dim() || phasor.X_s.size() != dae.dim())
        throw std::invalid_argument(
            "initial_state_from_steady_state: phasor dimension mismatch");
    StepState s;
    s.t = 0.0;
    s.h_used = h;
    s.scaled_derivatives.resize(scheme.m + 1);
    double h_pow = 1.0;
    for (int i = 0; i <= scheme.m; ++i) {
        Vector d = steady_state_derivative(phasor, i, 0.0);
        for (double& v : d) v *= h_pow;
        s.scaled_derivatives[i] = std::move(d);
        h_pow *= h;
    }
    return s;
}

void write_trajectory_csv(std::ostream& os, const std::vector<StepState>& trajectory,
                          bool with_derivatives) {
    if (trajectory.empty()) return;
    const std::size_t n = trajectory.front().block(0).size();
    const std::size_t blocks = with_derivatives ? trajectory.front().block_count() : 1;

    os << 't';
    for (std::size_t j = 0; j < n; ++j) os << ",x_" << j;
    for (std::size_t bi = 1; bi < blocks; ++bi)
        for (std::size_t j = 0; j < n; ++j) os << ",d" << bi << "_x" << j;
    os << '\n';

    for (const StepState& s : trajectory) {
        os << format_double(s.t);
        for (std::size_t bi = 0; bi < blocks; ++bi)
            for (std::size_t j = 0; j < n; ++j) os << ',' << format_double(s.block(bi)[j]);
        os << '\n';
    }
}

}  // namespace obx
