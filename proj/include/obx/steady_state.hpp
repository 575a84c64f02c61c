#pragma once

#include "obx/dae.hpp"
#include "obx/linalg.hpp"

namespace obx {

/// Sinusoidal steady state x_ss(t) = X_c cos(omega t) + X_s sin(omega t).
/// Satisfies G X_c + omega C X_s = b_c and G X_s - omega C X_c = b_s, so it
/// solves the system with no truncation error; this is the reference that
/// one-step errors are measured against.
struct PhasorSolution {
    Vector X_c;
    Vector X_s;
    double omega = 0.0;
};

/// Solves the 2N x 2N real block system [[G, wC], [-wC, G]].
/// Throws ResonantFrequencyError when it is singular (j*omega is a
/// generalized eigenvalue of the pencil).
PhasorSolution ac_solve(const LinearDae& dae);

/// Analytic order-th derivative of x_ss at time t.
Vector steady_state_derivative(const PhasorSolution& phasor, int order, double t);

/// Relative residual of the phasor equations; ~1e-15 for healthy solves.
double phasor_residual(const LinearDae& dae, const PhasorSolution& phasor);

}  // namespace obx
