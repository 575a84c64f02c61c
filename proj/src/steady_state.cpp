#include "obx/steady_state.hpp"

#include <algorithm>
#include <cmath>

#include "obx/errors.hpp"

namespace obx {

PhasorSolution ac_solve(const LinearDae& dae) {
    const std::size_t n = dae.dim();
    const double w = dae.source.omega;

    Matrix block(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            block(i, j) = dae.G(i, j);
            block(i, n + j) = w * dae.C(i, j);
            block(n + i, j) = -w * dae.C(i, j);
            block(n + i, n + j) = dae.G(i, j);
        }

    Vector rhs(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = dae.source.b_c[i];
        rhs[n + i] = dae.source.b_s[i];
    }

    const linalg::LuFactors lu = linalg::lu_factor(block);
    if (lu.singular)
        throw ResonantFrequencyError("AC system is singular at omega = " +
                                     std::to_string(w));
    const Vector sol = lu.solve(rhs);

    PhasorSolution phasor;
    phasor.omega = w;
    phasor.X_c.assign(sol.begin(), sol.begin() + n);
    phasor.X_s.assign(sol.begin() + n, sol.end());

    if (phasor_residual(dae, phasor) > 1e-12)
        throw ResonantFrequencyError(
            "AC solve residual too large; omega is at or near a resonance");
    return phasor;
}

Vector steady_state_derivative(const PhasorSolution& phasor, int order, double t) {
    SinusoidalSource wave;
    wave.b_c = phasor.X_c;
    wave.b_s = phasor.X_s;
    wave.omega = phasor.omega;
    return wave.derivative(order, t);
}

double phasor_residual(const LinearDae& dae, const PhasorSolution& phasor) {
    const double w = phasor.omega;
    const Vector gc = linalg::matvec(dae.G, phasor.X_c);
    const Vector gs = linalg::matvec(dae.G, phasor.X_s);
    const Vector cc = linalg::matvec(dae.C, phasor.X_c);
    const Vector cs = linalg::matvec(dae.C, phasor.X_s);

    double res = 0.0;
    for (std::size_t i = 0; i < dae.dim(); ++i) {
        const double r1 = gc[i] + w * cs[i] - dae.source.b_c[i];
        const double r2 = gs[i] - w * cc[i] - dae.source.b_s[i];
        res += r1 * r1 + r2 * r2;
    }
    res = std::sqrt(res);

    const double x_scale = linalg::norm2(phasor.X_c) + linalg::norm2(phasor.X_s);
    const double mat_scale = linalg::frobenius_norm(dae.G) + w * linalg::frobenius_norm(dae.C);
    const double b_scale = linalg::norm2(dae.source.b_c) + linalg::norm2(dae.source.b_s);
    const double scale = std::max({b_scale, mat_scale * x_scale, 1e-300});
    return res / scale;
}

}  // namespace obx
