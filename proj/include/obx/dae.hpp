#pragma once

#include <cstdint>
#include <string>

#include "obx/linalg.hpp"

namespace obx {

/// b(t) = b_c*cos(omega*t) + b_s*sin(omega*t). Closed under differentiation:
/// every derivative is again sinusoidal at the same frequency.
struct SinusoidalSource {
    Vector b_c;
    Vector b_s;
    double omega = 0.0;  // rad/s

    [[nodiscard]] std::size_t dim() const { return b_c.size(); }
    [[nodiscard]] Vector value(double t) const;

    /// Amplitudes of the order-th derivative: quarter-phase rotation of
    /// (b_c, b_s) scaled by omega^order.
    [[nodiscard]] SinusoidalSource derivative_source(int order) const;
    [[nodiscard]] Vector derivative(int order, double t) const;
};

/// Linear constant-coefficient system C x'(t) + G x(t) = b(t), with C
/// possibly singular.
struct LinearDae {
    Matrix C;
    Matrix G;
    SinusoidalSource source;

    LinearDae() = default;
    LinearDae(Matrix c, Matrix g, SinusoidalSource src);

    [[nodiscard]] std::size_t dim() const { return C.rows(); }
};

enum class BuiltinKind {
    Ode,         // nonsingular C, index 0
    Index1,
    Index2,
    Index3,
    Algebraic1,  // no differential part (r = 0)
    Algebraic2,
    Algebraic3,
};

BuiltinKind builtin_kind_from_string(const std::string& name);
std::string to_string(BuiltinKind kind);

/// Synthesized benchmark of known differentiation index. The system is
/// assembled in decoupled coordinates (a stable diagonal differential block
/// and a nilpotent shift block of the requested index) and conjugated by a
/// seeded well-conditioned pair so the structure is not visible in (C, G).
struct BenchmarkSystem {
    LinearDae dae;
    int declared_index = 0;
    std::uint64_t construction_seed = 0;
    Matrix conj_left;   // left conjugator, condition < 100 by construction
    Matrix conj_right;  // right conjugator
};

BenchmarkSystem builtin_system(BuiltinKind kind, std::uint64_t seed);

}  // namespace obx
