#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "obx/coefficients.hpp"
#include "obx/dae.hpp"
#include "obx/errors.hpp"
#include "obx/order_lab.hpp"

using namespace obx;

namespace {

std::vector<OrderSample> synthetic_power_law(double coeff, double exponent) {
    std::vector<OrderSample> samples;
    for (int j = 0; j < 10; ++j) {
        OrderSample s;
        s.h = 1e-2 * std::pow(10.0, -double(j) / 9.0);
        s.i = 0;
        s.error = coeff * std::pow(s.h, exponent);
        samples.push_back(s);
    }
    return samples;
}

}  // namespace

TEST_CASE("predicted order covers both regimes") {
    CHECK(predicted_order(1, 2, 3, 0) == 2);   // m - i < k
    CHECK(predicted_order(1, 3, 3, 0) == 5);   // m - i >= k
    CHECK(predicted_order(0, 2, 2, 0) == 3);
    CHECK(predicted_order(0, 2, 2, 1) == 2);
    CHECK(predicted_order(1, 3, 1, 0) == 5);
    CHECK(predicted_order(1, 3, 3, 1) == 3);
    // k = 0 is always the ODE branch
    for (int i = 0; i <= 2; ++i) CHECK(predicted_order(1, 2, 0, i) == 4 + i);
    CHECK_THROWS_AS((void)predicted_order(1, 2, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)predicted_order(1, 2, -1, 0), std::invalid_argument);
}

TEST_CASE("slope fitter recovers synthetic exponents") {
    CHECK(fit_slope(synthetic_power_law(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit_slope(synthetic_power_law(2.0, 2.5)) == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(fit_slope(synthetic_power_law(0.3, 3.0)) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("slope fitter needs four usable points") {
    std::vector<OrderSample> samples = synthetic_power_law(1.0, 2.0);
    samples.resize(3);
    CHECK_THROWS_AS((void)fit_slope(samples), TooFewSamplesError);

    samples = synthetic_power_law(1.0, 2.0);
    for (std::size_t j = 3; j < samples.size(); ++j) samples[j].below_floor = true;
    CHECK_THROWS_AS((void)fit_slope(samples), TooFewSamplesError);
}

TEST_CASE("one_step_errors validates its grid") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Ode, 42);
    const ObreshkovScheme s = make_scheme(1, 1);
    CHECK_THROWS_AS((void)one_step_errors(b.dae, s, {1e-3, 1e-2}), std::invalid_argument);
    CHECK_THROWS_AS((void)one_step_errors(b.dae, s, {1e-2, -1e-3}), std::invalid_argument);
}

TEST_CASE("constant source at DC is reproduced to roundoff") {
    // the steady state is constant, and any consistent rule is exact on
    // constants, so every error sample sits at machine level
    Matrix c(2, 2), g(2, 2);
    c(0, 0) = 1.0;
    g(0, 0) = 2.0; g(0, 1) = 1.0; g(1, 0) = -1.0; g(1, 1) = 3.0;
    const LinearDae dc(c, g, SinusoidalSource{{1.0, -2.0}, {0.0, 0.0}, 0.0});
    const std::vector<OrderSample> samples =
        one_step_errors(dc, make_scheme(1, 2), {0.1, 0.05, 0.025});
    for (const OrderSample& s : samples)
        if (s.i == 0) CHECK(s.error <= 1e-13);
}

TEST_CASE("halving h scales the ODE error by 2^3") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Ode, 42);
    const ObreshkovScheme s = make_scheme(1, 1);
    const std::vector<OrderSample> samples = one_step_errors(b.dae, s, {2e-3, 1e-3});
    const double ratio = samples[0].error / samples[2].error;  // i=0 entries
    CHECK(ratio == doctest::Approx(8.0).epsilon(0.1));
}

TEST_CASE("default study window spans one decade with ten points") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Index2, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(0, 2));
    REQUIRE(rep.h_values.size() == 10);
    const double period = 2.0 * std::acos(-1.0) / b.dae.source.omega;
    CHECK(rep.h_values.front() == doctest::Approx(1e-2 * period));
    CHECK(rep.h_values.back() == doctest::Approx(1e-3 * period));
    CHECK(std::log10(rep.h_values.front() / rep.h_values.back()) ==
          doctest::Approx(1.0));
    CHECK(rep.samples.size() == 10 * 3);
}

TEST_CASE("study on the index-2 benchmark matches the theorem") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Index2, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(0, 2));
    REQUIRE(rep.index_k == 2);
    REQUIRE(rep.fits.size() == 3);
    CHECK(rep.fits[0].predicted == 3);
    CHECK(rep.fits[1].predicted == 2);
    CHECK(rep.fits[2].predicted == 2);
    for (const DerivativeFit& f : rep.fits) {
        CHECK_FALSE(f.floored);
        CHECK(std::abs(f.slope - f.predicted) <= 0.2);
        CHECK(f.pass);
    }
    CHECK(rep.all_pass);
}

TEST_CASE("study on the index-1 benchmark reaches order five") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Index1, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(1, 3));
    REQUIRE(rep.index_k == 1);
    CHECK(rep.fits[0].predicted == 5);
    CHECK_FALSE(rep.fits[0].floored);
    CHECK(std::abs(rep.fits[0].slope - 5.0) <= 0.2);
    CHECK(rep.all_pass);
}

TEST_CASE("ODE benchmark recovers the classical order") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Ode, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(1, 1));
    REQUIRE(rep.index_k == 0);
    CHECK(rep.fits[0].predicted == 3);
    CHECK(std::abs(rep.fits[0].slope - 3.0) <= 0.2);
    CHECK(rep.all_pass);
}

TEST_CASE("order reduction and recovery on the index-3 benchmark") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Index3, 42);

    const OrderStudyReport reduced = run_study(b.dae, make_scheme(1, 2));
    REQUIRE(reduced.index_k == 3);
    CHECK(reduced.fits[0].predicted == 2);
    CHECK(std::abs(reduced.fits[0].slope - 2.0) <= 0.2);

    const OrderStudyReport recovered = run_study(b.dae, make_scheme(1, 3));
    CHECK(recovered.fits[0].predicted == 5);
    CHECK_FALSE(recovered.fits[0].floored);
    CHECK(std::abs(recovered.fits[0].slope - 5.0) <= 0.2);

    // raising m from 2 to 3 buys back the order lost to the index
    CHECK(recovered.fits[0].slope - reduced.fits[0].slope >= 2.0 - 0.3);

    // compare against the index-1 system at the same (l, m)
    const BenchmarkSystem b1 = builtin_system(BuiltinKind::Index1, 42);
    const OrderStudyReport base = run_study(b1.dae, make_scheme(1, 2));
    CHECK(base.fits[0].predicted == 4);
    CHECK(base.fits[0].slope - reduced.fits[0].slope >= 2.0 - 0.3);
}

TEST_CASE("errors grow monotonically with h inside the window") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Index2, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(0, 2));
    for (int i = 0; i <= 2; ++i) {
        std::vector<double> errors;
        for (const OrderSample& s : rep.samples)
            if (s.i == i && !s.below_floor) errors.push_back(s.error);
        // samples are h-descending, so errors must descend too
        for (std::size_t j = 0; j + 1 < errors.size(); ++j)
            CHECK(errors[j] > errors[j + 1]);
    }
}

TEST_CASE("floored blocks are flagged and pass") {
    // pure algebraic system, m - i >= k for low i: error sits at roundoff
    const BenchmarkSystem b = builtin_system(BuiltinKind::Algebraic2, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(1, 3));
    REQUIRE(rep.index_k == 2);
    CHECK(rep.fits[0].floored);
    CHECK(rep.fits[0].pass);
    CHECK(std::isnan(rep.fits[0].slope));
    CHECK(rep.fits[1].floored);
    CHECK(rep.fits[1].pass);
}

TEST_CASE("study csv lists every sample") {
    const BenchmarkSystem b = builtin_system(BuiltinKind::Index1, 42);
    const OrderStudyReport rep = run_study(b.dae, make_scheme(1, 1));
    std::ostringstream os;
    write_study_csv(os, rep);
    const std::string text = os.str();
    CHECK(text.rfind("h,i,error,log10_h,log10_error\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 10 * 2);
}

TEST_CASE("default window requires a nonzero frequency") {
    Matrix c(1, 1), g(1, 1);
    c(0, 0) = 1.0;
    g(0, 0) = 1.0;
    const LinearDae dc(c, g, SinusoidalSource{{1.0}, {0.0}, 0.0});
    CHECK_THROWS_AS((void)run_study(dc, make_scheme(1, 1)), std::invalid_argument);
    StudyOptions opt;
    opt.h_min = 1e-4;
    opt.h_max = 1e-3;
    CHECK_NOTHROW((void)run_study(dc, make_scheme(1, 1), opt));
}
