#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <vector>

namespace obx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// One-step multi-derivative integration rule with parameters (l, m):
/// derivatives up to order m at the new point and up to order l at the
/// previous point, coupled by
///
///   sum_{i=0..m} (-1)^i a_i h^i x_n^(i)  =  sum_{i=0..l} b_i h^i x_{n-1}^(i)
///
/// where a_i = alpha(i, l, m) and b_i = alpha(i, m, l). The coefficients are
/// exact rationals; the double tables are converted once at construction.
struct ObreshkovScheme {
    int l = 0;
    int m = 1;
    std::vector<Rational> alpha_current_exact;  // alpha(i, l, m), i = 0..m
    std::vector<Rational> alpha_past_exact;     // alpha(i, m, l), i = 0..l
    std::vector<double> alpha_current;
    std::vector<double> alpha_past;
};

/// alpha(i, l, m) = (m+l-i)!/(m+l)! * binom(m, i), exactly.
Rational obreshkov_alpha(int i, int l, int m);

/// Builds the coefficient tables. Requires l >= 0, m >= 1 (the rule is
/// implicit by construction) and l + m <= 20.
ObreshkovScheme make_scheme(int l, int m);

/// Applies the rule's linear functional to z(t) = t^p with t_{n-1} = 0 and
/// t_n = h, in exact arithmetic:
///
///   sum_i (-1)^i a_i h^i z^(i)(h) - sum_i b_i h^i z^(i)(0)
///
/// Zero exactly for every p <= l + m; first nonzero at p = l + m + 1.
Rational truncation_residual(const ObreshkovScheme& scheme, int poly_degree,
                             const Rational& h);

/// One-step multiplier R(z) for x' = lambda*x with z = h*lambda:
/// R(z) = [sum_{i<=l} b_i z^i] / [sum_{i<=m} (-1)^i a_i z^i].
/// Throws PoleError when the denominator is numerically zero.
std::complex<double> amplification(const ObreshkovScheme& scheme,
                                   std::complex<double> z);

}  // namespace obx
