#include "obx/coefficients.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "obx/errors.hpp"

namespace obx {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt num = 1, den = 1;
    for (int j = 1; j <= k; ++j) {
        num *= n - k + j;
        den *= j;
    }
    return num / den;
}

BigInt factorial(int n) {
    BigInt f = 1;
    for (int j = 2; j <= n; ++j) f *= j;
    return f;
}

}  // namespace

Rational obreshkov_alpha(int i, int l, int m) {
    if (i < 0 || i > m) throw std::invalid_argument("obreshkov_alpha: i out of range");
    // (m+l-i)!/(m+l)! collapses to 1 over the falling product
    // (m+l)(m+l-1)...(m+l-i+1).
    BigInt falling = 1;
    for (int j = 0; j < i; ++j) falling *= m + l - j;
    return Rational(binomial(m, i), falling);
}

ObreshkovScheme make_scheme(int l, int m) {
    if (l < 0) throw std::invalid_argument("make_scheme: l must be >= 0");
    if (m < 1) throw std::invalid_argument("make_scheme: m must be >= 1 (implicit rule)");
    if (l + m > 20) throw std::invalid_argument("make_scheme: l + m must be <= 20");

    ObreshkovScheme s;
    s.l = l;
    s.m = m;
    s.alpha_current_exact.reserve(m + 1);
    s.alpha_past_exact.reserve(l + 1);
    for (int i = 0; i <= m; ++i) s.alpha_current_exact.push_back(obreshkov_alpha(i, l, m));
    for (int i = 0; i <= l; ++i) s.alpha_past_exact.push_back(obreshkov_alpha(i, m, l));
    s.alpha_current.reserve(m + 1);
    s.alpha_past.reserve(l + 1);
    for (const auto& a : s.alpha_current_exact)
        s.alpha_current.push_back(a.convert_to<double>());
    for (const auto& a : s.alpha_past_exact)
        s.alpha_past.push_back(a.convert_to<double>());
    return s;
}

Rational truncation_residual(const ObreshkovScheme& scheme, int poly_degree,
                             const Rational& h) {
    if (poly_degree < 0)
        throw std::invalid_argument("truncation_residual: poly_degree must be >= 0");
    const int p = poly_degree;

    // z(t) = t^p, so h^i z^(i)(h) = p!/(p-i)! h^p and h^i z^(i)(0) is zero
    // except at i = p where it equals p! h^p. The functional is c_p * h^p.
    Rational coeff = 0;
    BigInt falling = 1;  // p!/(p-i)!
    for (int i = 0; i <= scheme.m && i <= p; ++i) {
        if (i > 0) falling *= p - i + 1;
        Rational term = scheme.alpha_current_exact[i] * Rational(falling);
        if (i % 2 != 0) term = -term;
        coeff += term;
    }
    if (p <= scheme.l) coeff -= scheme.alpha_past_exact[p] * Rational(factorial(p));

    Rational hp = 1;
    for (int j = 0; j < p; ++j) hp *= h;
    return coeff * hp;
}

std::complex<double> amplification(const ObreshkovScheme& scheme,
                                   std::complex<double> z) {
    std::complex<double> num = 0.0, den = 0.0;
    double magnitude = 0.0;
    // Horner from the top degree.
    for (int i = scheme.l; i >= 0; --i) num = num * z + scheme.alpha_past[i];
    for (int i = scheme.m; i >= 0; --i) {
        const double c = (i % 2 == 0) ? scheme.alpha_current[i] : -scheme.alpha_current[i];
        den = den * z + c;
        magnitude = magnitude * std::abs(z) + std::abs(c);
    }
    if (std::abs(den) <= 64.0 * std::numeric_limits<double>::epsilon() * magnitude)
        throw PoleError("amplification: denominator is zero at the requested z");
    return num / den;
}

}  // namespace obx
