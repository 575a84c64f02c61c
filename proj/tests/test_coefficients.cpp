#include <doctest.h>

#include <cmath>
#include <complex>

#include "obx/coefficients.hpp"
#include "obx/errors.hpp"

using namespace obx;

namespace {

// Independent oracle: the raw factorial-ratio definition, with factorials
// expanded the long way.
BigInt fact(int n) {
    BigInt f = 1;
    for (int j = 2; j <= n; ++j) f *= j;
    return f;
}

Rational oracle_alpha(int i, int l, int m) {
    const Rational binom(fact(m), fact(i) * fact(m - i));
    return Rational(fact(m + l - i), fact(m + l)) * binom;
}

// e^z as an exact truncated Taylor series; the tail at |z| <= 1/16 is far
// below anything the ratio test can see.
Rational exp_taylor(const Rational& z, int terms) {
    Rational sum = 0, term = 1;
    for (int q = 0; q < terms; ++q) {
        sum += term;
        term = term * z / (q + 1);
    }
    return sum;
}

Rational amplification_exact(const ObreshkovScheme& s, const Rational& z) {
    Rational num = 0, den = 0, zp = 1;
    for (int i = 0; i <= std::max(s.l, s.m); ++i) {
        if (i <= s.l) num += s.alpha_past_exact[i] * zp;
        if (i <= s.m) {
            Rational t = s.alpha_current_exact[i] * zp;
            den += (i % 2 == 0) ? t : -t;
        }
        zp *= z;
    }
    return num / den;
}

double rational_abs_to_double(Rational r) {
    if (r < 0) r = -r;
    return r.convert_to<double>();
}

}  // namespace

TEST_CASE("alpha tables match the factorial oracle for all l+m <= 8") {
    for (int l = 0; l <= 7; ++l)
        for (int m = 1; l + m <= 8; ++m) {
            const ObreshkovScheme s = make_scheme(l, m);
            REQUIRE(s.alpha_current_exact.size() == std::size_t(m) + 1);
            REQUIRE(s.alpha_past_exact.size() == std::size_t(l) + 1);
            for (int i = 0; i <= m; ++i)
                CHECK(s.alpha_current_exact[i] == oracle_alpha(i, l, m));
            for (int i = 0; i <= l; ++i)
                CHECK(s.alpha_past_exact[i] == oracle_alpha(i, m, l));
        }
}

TEST_CASE("known coefficient tables") {
    const ObreshkovScheme be = make_scheme(0, 1);
    CHECK(be.alpha_current_exact[0] == 1);
    CHECK(be.alpha_current_exact[1] == 1);
    CHECK(be.alpha_past_exact[0] == 1);

    const ObreshkovScheme tr = make_scheme(1, 1);
    CHECK(tr.alpha_current_exact[0] == 1);
    CHECK(tr.alpha_current_exact[1] == Rational(1, 2));
    CHECK(tr.alpha_past_exact[0] == 1);
    CHECK(tr.alpha_past_exact[1] == Rational(1, 2));
}

TEST_CASE("leading coefficient is always 1") {
    for (int l = 0; l <= 7; ++l)
        for (int m = 1; l + m <= 8; ++m) {
            const ObreshkovScheme s = make_scheme(l, m);
            CHECK(s.alpha_current_exact[0] == 1);
            CHECK(s.alpha_past_exact[0] == 1);
        }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)make_scheme(-1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)make_scheme(0, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_scheme(2, -1), std::invalid_argument);
    CHECK_THROWS_AS((void)make_scheme(10, 11), std::invalid_argument);
    CHECK_NOTHROW((void)make_scheme(10, 10));
}

TEST_CASE("truncation functional annihilates polynomials up to degree l+m") {
    const Rational h_values[] = {Rational(1), Rational(1, 3), Rational(7, 5)};
    for (int l = 0; l <= 7; ++l)
        for (int m = 1; l + m <= 8; ++m) {
            const ObreshkovScheme s = make_scheme(l, m);
            for (const Rational& h : h_values) {
                for (int p = 0; p <= l + m; ++p)
                    CHECK(truncation_residual(s, p, h) == 0);
                CHECK(truncation_residual(s, l + m + 1, h) != 0);
            }
        }
}

TEST_CASE("truncation residual frozen values for the trapezoidal rule") {
    const ObreshkovScheme tr = make_scheme(1, 1);
    CHECK(truncation_residual(tr, 0, Rational(1)) == 0);
    CHECK(truncation_residual(tr, 2, Rational(9, 2)) == 0);
    // t^3 with h=1: h^3 - (3/2)h^3 = -1/2; scales as h^3.
    CHECK(truncation_residual(tr, 3, Rational(1)) == Rational(-1, 2));
    CHECK(truncation_residual(tr, 3, Rational(2)) == Rational(-4));
}

TEST_CASE("amplification at z = 0 is exactly one") {
    for (int l = 0; l <= 3; ++l)
        for (int m = 1; m <= 3; ++m) {
            const auto r = amplification(make_scheme(l, m), {0.0, 0.0});
            CHECK(r.real() == 1.0);
            CHECK(r.imag() == 0.0);
        }
}

TEST_CASE("trapezoidal amplification matches its closed form") {
    const ObreshkovScheme tr = make_scheme(1, 1);
    const std::complex<double> zs[] = {{0.3, 0.4}, {-1.5, 0.2}, {0.0, 2.0}};
    for (const auto z : zs) {
        const auto expected = (1.0 + z / 2.0) / (1.0 - z / 2.0);
        CHECK(std::abs(amplification(tr, z) - expected) < 1e-15);
    }
}

TEST_CASE("L-stable configuration decays along the negative real axis") {
    const ObreshkovScheme s = make_scheme(1, 2);
    CHECK(std::abs(amplification(s, {-1e6, 0.0})) < 1e-3);
    CHECK(std::abs(amplification(s, {-1e12, 0.0})) < 1e-9);
}

TEST_CASE("amplification pole is reported") {
    // (0,1): R(z) = 1/(1-z), pole at z = 1.
    CHECK_THROWS_AS((void)amplification(make_scheme(0, 1), {1.0, 0.0}), PoleError);
}

TEST_CASE("amplification approximates exp to order l+m+1 near zero") {
    for (const auto& [l, m] : {std::pair{0, 1}, {1, 1}, {1, 2}}) {
        const ObreshkovScheme s = make_scheme(l, m);
        const int order = l + m + 1;
        double last5_min = 1e300, last5_max = 0.0;
        for (int j = 4; j <= 20; ++j) {
            const Rational z(1, BigInt(1) << j);
            const Rational diff = amplification_exact(s, z) - exp_taylor(z, 60);
            Rational zp = 1;
            for (int q = 0; q < order; ++q) zp *= z;
            const double ratio = rational_abs_to_double(diff) / zp.convert_to<double>();
            if (j > 15) {
                last5_min = std::min(last5_min, ratio);
                last5_max = std::max(last5_max, ratio);
            }
        }
        CHECK(last5_max / last5_min < 1.10);
    }
}

TEST_CASE("exact amplification agrees with the double evaluation") {
    const ObreshkovScheme s = make_scheme(2, 2);
    for (const double z : {0.25, -0.5, 0.0625}) {
        const double exact =
            amplification_exact(s, Rational(z)).convert_to<double>();
        CHECK(std::abs(amplification(s, {z, 0.0}).real() - exact) < 1e-13);
    }
}

TEST_CASE("past coefficients equal the current coefficients of the swapped scheme") {
    for (int l = 1; l <= 7; ++l)
        for (int m = 1; l + m <= 8; ++m) {
            const ObreshkovScheme s = make_scheme(l, m);
            const ObreshkovScheme swapped = make_scheme(m, l);
            for (int i = 0; i <= l; ++i)
                CHECK(s.alpha_past_exact[i] == swapped.alpha_current_exact[i]);
        }
}
