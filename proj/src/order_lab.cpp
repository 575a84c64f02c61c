#include "obx/order_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "obx/errors.hpp"
#include "obx/format.hpp"
#include "obx/integrator.hpp"
#include "obx/steady_state.hpp"

namespace obx {

int predicted_order(int l, int m, int k, int i) {
    if (l < 0 || m < 1) throw std::invalid_argument("predicted_order: bad (l, m)");
    if (k < 0) throw std::invalid_argument("predicted_order: k must be >= 0");
    if (i < 0 || i > m) throw std::invalid_argument("predicted_order: i must be in [0, m]");
    if (m - i < k) return l + m + 2 - k;
    return l + m + 1 + i;
}

std::vector<OrderSample> one_step_errors(const LinearDae& dae,
                                         const ObreshkovScheme& scheme,
                                         const std::vector<double>& h_values) {
    for (std::size_t j = 0; j + 1 < h_values.size(); ++j)
        if (!(h_values[j] > h_values[j + 1]))
            throw std::invalid_argument("one_step_errors: h_values must be sorted descending");
    for (double h : h_values)
        if (!(h > 0.0)) throw std::invalid_argument("one_step_errors: h must be > 0");

    const PhasorSolution phasor = ac_solve(dae);
    const int m = scheme.m;
    const std::size_t count = h_values.size();
    std::vector<OrderSample> samples(count * (m + 1));
    std::vector<std::string> failures(count);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < count; ++j) {
        try {
            const double h = h_values[j];
            const StepState start =
                initial_state_from_steady_state(dae, phasor, scheme, h);
            const StepState next = step(dae, scheme, start, h);

            const double floor_scale =
                1e3 * std::numeric_limits<double>::epsilon() *
                linalg::norm2(steady_state_derivative(phasor, 0, h));

            double h_pow = 1.0;
            for (int i = 0; i <= m; ++i) {
                Vector exact = steady_state_derivative(phasor, i, h);
                for (double& v : exact) v *= h_pow;
                OrderSample& s = samples[j * (m + 1) + i];
                s.h = h;
                s.i = i;
                s.error = linalg::norm2(linalg::subtract(next.block(i), exact));
                s.below_floor = s.error < floor_scale;
                h_pow *= h;
            }
        } catch (const std::exception& e) {
            failures[j] = e.what();
        }
    }
    for (const std::string& msg : failures)
        if (!msg.empty()) throw Error("one_step_errors: " + msg);
    return samples;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares_slope: need >= 2 points");
    const double n = double(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sx += x[j];
        sy += y[j];
        sxx += x[j] * x[j];
        sxy += x[j] * y[j];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

double fit_slope(const std::vector<OrderSample>& samples_for_i) {
    std::vector<double> lx, ly;
    for (const OrderSample& s : samples_for_i) {
        if (s.below_floor || !(s.error > 0.0)) continue;
        lx.push_back(std::log10(s.h));
        ly.push_back(std::log10(s.error));
    }
    if (lx.size() < 4)
        throw TooFewSamplesError("fit_slope: only " + std::to_string(lx.size()) +
                                 " usable samples after floor filtering");
    return least_squares_slope(lx, ly);
}

OrderStudyReport run_study(const LinearDae& dae, const ObreshkovScheme& scheme,
                           const StudyOptions& options,
                           const PencilOptions& pencil_options) {
    OrderStudyReport report;
    report.l = scheme.l;
    report.m = scheme.m;
    report.omega = dae.source.omega;
    report.index_k = differentiation_index(dae.C, dae.G, pencil_options);

    double h_min = options.h_min, h_max = options.h_max;
    if (h_min <= 0.0 || h_max <= 0.0) {
        if (!(dae.source.omega > 0.0))
            throw std::invalid_argument(
                "run_study: default h window needs omega > 0; pass h_min/h_max");
        const double period = 2.0 * std::acos(-1.0) / dae.source.omega;
        h_min = 1e-3 * period;
        h_max = 1e-2 * period;
    }
    if (!(h_max > h_min)) throw std::invalid_argument("run_study: need h_max > h_min");
    const int points = options.points;
    if (points < 2) throw std::invalid_argument("run_study: need >= 2 points");

    report.h_values.resize(points);
    for (int j = 0; j < points; ++j) {
        const double f = double(j) / double(points - 1);
        report.h_values[j] = h_max * std::pow(h_min / h_max, f);
    }

    report.samples = one_step_errors(dae, scheme, report.h_values);

    report.all_pass = true;
    for (int i = 0; i <= scheme.m; ++i) {
        DerivativeFit fit;
        fit.i = i;
        fit.predicted = predicted_order(scheme.l, scheme.m, report.index_k, i);

        std::vector<OrderSample> column;
        for (const OrderSample& s : report.samples)
            if (s.i == i) column.push_back(s);
        fit.points_used = 0;
        for (const OrderSample& s : column)
            if (!s.below_floor && s.error > 0.0) ++fit.points_used;

        try {
            fit.slope = fit_slope(column);
            fit.pass = std::abs(fit.slope - fit.predicted) <= options.slope_tolerance;
        } catch (const TooFewSamplesError&) {
            // The error never rose above the roundoff floor: consistent with
            // any order, including the predicted one.
            fit.slope = std::numeric_limits<double>::quiet_NaN();
            fit.floored = true;
            fit.pass = true;
        }
        report.all_pass = report.all_pass && fit.pass;
        report.fits.push_back(fit);
    }
    return report;
}

void write_study_csv(std::ostream& os, const OrderStudyReport& report) {
    os << "h,i,error,log10_h,log10_error\n";
    for (const OrderSample& s : report.samples) {
        const double lh = std::log10(s.h);
        const double le = s.error > 0.0 ? std::log10(s.error)
                                        : -std::numeric_limits<double>::infinity();
        os << format_double(s.h) << ',' << s.i << ',' << format_double(s.error) << ','
           << format_double(lh) << ',' << format_double(le) << '\n';
    }
}

}  // namespace obx
