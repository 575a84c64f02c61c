#pragma once

#include "obx/dae.hpp"
#include "obx/linalg.hpp"

namespace obx {

struct PencilOptions {
    /// Singular values below rank_tol * sigma_max count as zero.
    double rank_tol = 1e-9;
};

/// True iff det(G + lambda*C) is not identically zero, decided by probing
/// the determinant at dim+1 distinct lambda values (a degree-<=dim
/// polynomial vanishing at dim+1 points is identically zero).
bool is_regular(const Matrix& c, const Matrix& g);

/// Canonical decoupling of a regular pencil (C, G):
///   P*C*Q = blockdiag(I_r, N),  P*G*Q = blockdiag(J, I_s),
/// with N nilpotent. index_k is the nilpotency index of N, with the
/// conventions: s = 0 -> k = 0, and s > 0 with N = 0 -> k = 1.
struct WeierstrassDecomposition {
    Matrix P;
    Matrix Q;
    Matrix J;     // r x r, returned up to similarity
    Matrix Nnil;  // s x s nilpotent block
    std::size_t r = 0;
    std::size_t s = 0;
    int index_k = 0;
    double lambda0 = 0.0;              // shift used by the construction
    double reconstruction_residual = 0.0;  // Frobenius residual of both products
};

/// Shift-and-invert construction: with F = G + lambda0*C nonsingular, the
/// range and null space of powers of A = F^{-1} C are complementary
/// invariant subspaces separating the differential and algebraic parts.
/// Throws SingularPencilError / IllConditionedSplitError.
WeierstrassDecomposition weierstrass(const Matrix& c, const Matrix& g,
                                     const PencilOptions& options = {});

int differentiation_index(const Matrix& c, const Matrix& g,
                          const PencilOptions& options = {});

/// Splits P*b into the differential (r) and algebraic (s) excitations.
struct DecoupledSource {
    SinusoidalSource u_d;
    SinusoidalSource u_a;
};

DecoupledSource decouple_source(const WeierstrassDecomposition& w,
                                const SinusoidalSource& source);

/// Exact solution of the algebraic subsystem N z_A' + z_A = u_A:
///   z_A(t) = sum_{i=0..k-1} (-1)^i N^i u_A^(i)(t).
Vector exact_algebraic_solution(const WeierstrassDecomposition& w,
                                const SinusoidalSource& u_a, double t);

/// z = Q^{-1} x split into the (r, s) blocks.
struct DecoupledState {
    Vector z_d;
    Vector z_a;
};

DecoupledState decouple_state(const WeierstrassDecomposition& w, const Vector& x);

}  // namespace obx
