// Timing comparison of the OpenMP kernels against the serial reference,
// plus one end-to-end order study. Build with -DOBX_ENABLE_OPENMP=OFF to
// see the no-OpenMP baseline.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "obx/coefficients.hpp"
#include "obx/dae.hpp"
#include "obx/linalg.hpp"
#include "obx/order_lab.hpp"

namespace {

using obx::Matrix;

Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) + (i == j ? 2.0 : 0.0);
    return a;
}

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report(const char* kernel, std::size_t n, double serial_ms, double parallel_ms) {
    std::printf("%-8s %5zu %12.3f %12.3f %9.2fx\n", kernel, n, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serial code\n");
#endif
    std::printf("%-8s %5s %12s %12s %9s\n", "kernel", "n", "serial_ms", "omp_ms", "speedup");

    std::mt19937_64 rng(12345);
    for (std::size_t n : {128, 256, 512}) {
        const Matrix a = random_matrix(n, rng);
        const Matrix b = random_matrix(n, rng);
        const int reps = n >= 512 ? 3 : 10;
        const double s = time_ms([&] { (void)obx::linalg::serial::matmul(a, b); }, reps);
        const double p = time_ms([&] { (void)obx::linalg::matmul(a, b); }, reps);
        report("matmul", n, s, p);
    }
    for (std::size_t n : {256, 512, 768}) {
        const Matrix a = random_matrix(n, rng);
        const int reps = n >= 768 ? 3 : 10;
        const double s = time_ms([&] { (void)obx::linalg::serial::lu_factor(a); }, reps);
        const double p = time_ms([&] { (void)obx::linalg::lu_factor(a); }, reps);
        report("lu", n, s, p);
    }

    // End-to-end: the h samples of a study are independent and run in
    // parallel. Results are identical either way; only the wall time moves.
    const auto bench = obx::builtin_system(obx::BuiltinKind::Index3, 42);
    const auto scheme = obx::make_scheme(1, 3);
    obx::StudyOptions options;
    options.points = 64;
    const auto study = [&] { (void)obx::run_study(bench.dae, scheme, options); };
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double study_serial = time_ms(study, 5);
    omp_set_num_threads(max_threads);
    const double study_parallel = time_ms(study, 5);
    report("study", options.points, study_serial, study_parallel);
#else
    std::printf("order study (64 points): %.3f ms\n", time_ms(study, 5));
#endif
    return 0;
}
