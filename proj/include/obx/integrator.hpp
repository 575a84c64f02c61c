#pragma once

#include <ostream>
#include <vector>

#include "obx/coefficients.hpp"
#include "obx/dae.hpp"
#include "obx/linalg.hpp"
#include "obx/steady_state.hpp"

namespace obx {

/// State of one time point: scaled derivative blocks
/// [x, h*x', h^2*x'', ...]; block i stores h^i * x^(i).
struct StepState {
    double t = 0.0;
    double h_used = 0.0;
    std::vector<Vector> scaled_derivatives;

    [[nodiscard]] std::size_t block_count() const { return scaled_derivatives.size(); }
    [[nodiscard]] const Vector& block(std::size_t i) const { return scaled_derivatives[i]; }
};

/// The (m+1)N x (m+1)N one-step matrix. Block row i < m couples block i
/// (by G) and block i+1 (by C/h); block row m carries the signed
/// coefficient row [a_0 I, -a_1 I, ..., (-1)^m a_m I].
Matrix assemble(const LinearDae& dae, const ObreshkovScheme& scheme, double h);

/// Right-hand side at t_n: blocks 0..m-1 are h^i b^(i)(t_n); the last block
/// is sum_{i=0..l} b_i * (h^i x^(i)_{n-1}) from the previous state.
/// Throws InsufficientHistoryError if prev holds fewer than l+1 blocks.
Vector build_rhs(const LinearDae& dae, const ObreshkovScheme& scheme,
                 const StepState& prev, double t_n);

/// One-step solver with a factorization held for reuse; rebuilt whenever
/// (h, l, m) changes. Construction checks pencil regularity.
class AugmentedSolver {
public:
    AugmentedSolver(const LinearDae& dae, const ObreshkovScheme& scheme, double h);

    [[nodiscard]] StepState step(const StepState& prev) const;
    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] double h() const { return h_; }

private:
    const LinearDae* dae_;
    ObreshkovScheme scheme_;
    double h_;
    Matrix matrix_;
    linalg::LuFactors lu_;
};

/// Single step convenience wrapper (assembles and factors once).
StepState step(const LinearDae& dae, const ObreshkovScheme& scheme,
               const StepState& prev, double h);

/// Fixed-step march; returns the initial state followed by `steps` states.
/// The factorization is computed once and reused.
std::vector<StepState> march(const LinearDae& dae, const ObreshkovScheme& scheme,
                             const StepState& initial, double h, int steps);

/// Error-free start on the steady-state trajectory at t = 0: block i is
/// h^i times the analytic i-th derivative of x_ss. Fills all m+1 blocks.
StepState initial_state_from_steady_state(const LinearDae& dae,
                                          const PhasorSolution& phasor,
                                          const ObreshkovScheme& scheme, double h);

/// CSV trajectory: header `t,x_0,...,x_{N-1}`; with_derivatives appends the
/// scaled derivative blocks as d<i>_x<j> columns.
void write_trajectory_csv(std::ostream& os, const std::vector<StepState>& trajectory,
                          bool with_derivatives = false);

}  // namespace obx
