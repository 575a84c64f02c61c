#pragma once

#include <ostream>
#include <vector>

#include "obx/coefficients.hpp"
#include "obx/dae.hpp"
#include "obx/pencil.hpp"

namespace obx {

/// Expected log-log slope of the one-step error on the h-scaled derivative
/// block i, for a rule (l, m) applied to a system of differentiation
/// index k:
///   l+m+2-k  when m-i < k   (the algebraic part limits the order)
///   l+m+1+i  otherwise      (the pure-ODE order; always taken when k = 0)
int predicted_order(int l, int m, int k, int i);

/// One measured error sample: Euclidean norm of
/// h^i x_1^(i) - h^i x_ss^(i)(h) after a single step from an exact start.
struct OrderSample {
    double h = 0.0;
    int i = 0;
    double error = 0.0;
    bool below_floor = false;  // error under 1e3 * eps * |x_ss(h)|; kept out of fits
};

/// Takes one step from the exact steady-state start for each h and records
/// the per-block errors. h_values must be positive and sorted descending.
/// Samples are independent and evaluated in parallel; results are stored by
/// index so the output is deterministic.
std::vector<OrderSample> one_step_errors(const LinearDae& dae,
                                         const ObreshkovScheme& scheme,
                                         const std::vector<double>& h_values);

/// Least-squares slope of log10(error) vs log10(h) over the usable samples
/// of one derivative order. Throws TooFewSamplesError if fewer than 4
/// samples survive the floor filter.
double fit_slope(const std::vector<OrderSample>& samples_for_i);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

struct DerivativeFit {
    int i = 0;
    double slope = 0.0;     // NaN when every sample sat on the roundoff floor
    int predicted = 0;
    bool pass = false;
    bool floored = false;   // too few usable samples; error is at machine level
    std::size_t points_used = 0;
};

struct StudyOptions {
    double h_min = 0.0;  // 0 = default window [1e-3, 1e-2] * source period
    double h_max = 0.0;
    int points = 10;
    double slope_tolerance = 0.2;
};

struct OrderStudyReport {
    int l = 0;
    int m = 0;
    int index_k = 0;
    double omega = 0.0;
    std::vector<double> h_values;        // descending
    std::vector<OrderSample> samples;    // h-major, i-minor
    std::vector<DerivativeFit> fits;     // i = 0..m
    bool all_pass = false;
};

/// Full experiment: AC reference, pencil index, error sweep, slope fits,
/// pass flags |slope - predicted| <= tolerance. A block whose error sits on
/// the roundoff floor everywhere passes with floored = true.
OrderStudyReport run_study(const LinearDae& dae, const ObreshkovScheme& scheme,
                           const StudyOptions& options = {},
                           const PencilOptions& pencil_options = {});

/// CSV columns: h, i, error, log10_h, log10_error.
void write_study_csv(std::ostream& os, const OrderStudyReport& report);

}  // namespace obx
