#include "obx/dae.hpp"

#include <cmath>
#include <stdexcept>

#include "obx/errors.hpp"

namespace obx {

Vector SinusoidalSource::value(double t) const {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    Vector v(b_c.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = b_c[i] * c + b_s[i] * s;
    return v;
}

SinusoidalSource SinusoidalSource::derivative_source(int order) const {
    if (order < 0) throw std::invalid_argument("derivative_source: order must be >= 0");
    const double scale = std::pow(omega, order);
    SinusoidalSource d;
    d.omega = omega;
    const std::size_t n = b_c.size();
    d.b_c.resize(n);
    d.b_s.resize(n);
    // d/dt maps (c, s) -> (omega*s, -omega*c); apply order times.
    switch (order % 4) {
        case 0:
            for (std::size_t i = 0; i < n; ++i) { d.b_c[i] = scale * b_c[i]; d.b_s[i] = scale * b_s[i]; }
            break;
        case 1:
            for (std::size_t i = 0; i < n; ++i) { d.b_c[i] = scale * b_s[i]; d.b_s[i] = -scale * b_c[i]; }
            break;
        case 2:
            for (std::size_t i = 0; i < n; ++i) { d.b_c[i] = -scale * b_c[i]; d.b_s[i] = -scale * b_s[i]; }
            break;
        default:
            for (std::size_t i = 0; i < n; ++i) { d.b_c[i] = -scale * b_s[i]; d.b_s[i] = scale * b_c[i]; }
            break;
    }
    return d;
}

Vector SinusoidalSource::derivative(int order, double t) const {
    return derivative_source(order).value(t);
}

LinearDae::LinearDae(Matrix c, Matrix g, SinusoidalSource src)
    : C(std::move(c)), G(std::move(g)), source(std::move(src)) {
    if (C.rows() != C.cols() || G.rows() != G.cols() || C.rows() != G.rows())
        throw std::invalid_argument("LinearDae: C and G must be square and equal-sized");
    if (source.b_c.size() != C.rows() || source.b_s.size() != C.rows())
        throw std::invalid_argument("LinearDae: source dimension mismatch");
    if (source.omega < 0.0)
        throw std::invalid_argument("LinearDae: omega must be >= 0");
}

BuiltinKind builtin_kind_from_string(const std::string& name) {
    if (name == "ode") return BuiltinKind::Ode;
    if (name == "index1") return BuiltinKind::Index1;
    if (name == "index2") return BuiltinKind::Index2;
    if (name == "index3") return BuiltinKind::Index3;
    if (name == "algebraic1") return BuiltinKind::Algebraic1;
    if (name == "algebraic2") return BuiltinKind::Algebraic2;
    if (name == "algebraic3") return BuiltinKind::Algebraic3;
    throw std::invalid_argument("unknown builtin kind '" + name + "'");
}

std::string to_string(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::Ode: return "ode";
        case BuiltinKind::Index1: return "index1";
        case BuiltinKind::Index2: return "index2";
        case BuiltinKind::Index3: return "index3";
        case BuiltinKind::Algebraic1: return "algebraic1";
        case BuiltinKind::Algebraic2: return "algebraic2";
        case BuiltinKind::Algebraic3: return "algebraic3";
    }
    throw std::invalid_argument("unknown builtin kind");
}

namespace {

struct KindShape {
    std::size_t r;  // differential block size
    std::size_t s;  // algebraic block size (= nilpotency index here)
    int index;
};

KindShape shape_of(BuiltinKind kind) {
    switch (kind) {
        case BuiltinKind::Ode: return {4, 0, 0};
        case BuiltinKind::Index1: return {3, 1, 1};
        case BuiltinKind::Index2: return {3, 2, 2};
        case BuiltinKind::Index3: return {3, 3, 3};
        case BuiltinKind::Algebraic1: return {0, 1, 1};
        case BuiltinKind::Algebraic2: return {0, 2, 2};
        case BuiltinKind::Algebraic3: return {0, 3, 3};
    }
    throw std::invalid_argument("unknown builtin kind");
}

// T = O1 * diag(d) * O2 with orthogonal O1, O2; condition number equals
// max(d)/min(d), and the inverse is available in closed form.
struct Conjugator {
    Matrix t;
    Matrix t_inv;
};

Conjugator make_conjugator(std::size_t n, std::mt19937_64& rng) {
    Matrix o1 = linalg::random_orthogonal(n, rng);
    Matrix o2 = linalg::random_orthogonal(n, rng);
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = std::pow(3.0, n > 1 ? double(i) / double(n - 1) : 0.0);  // in [1, 3]

    Matrix dm(n, n), dinv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        dm(i, i) = d[i];
        dinv(i, i) = 1.0 / d[i];
    }
    Conjugator c;
    c.t = linalg::matmul(linalg::matmul(o1, dm), o2);
    c.t_inv = linalg::matmul(linalg::matmul(linalg::transpose(o2), dinv),
                             linalg::transpose(o1));
    return c;
}

// Amplitude bounded away from zero so every decoupled component is excited.
double draw_amplitude(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.3, 1.0);
    std::uniform_int_distribution<int> sign(0, 1);
    const double v = mag(rng);
    return sign(rng) ? v : -v;
}

}  // namespace

BenchmarkSystem builtin_system(BuiltinKind kind, std::uint64_t seed) {
    const KindShape shape = shape_of(kind);
    const std::size_t r = shape.r, s = shape.s, n = r + s;

    // Decoupled form: z_D' = -J z_D + u_D (J stable diagonal) and
    // N z_A' = -z_A + u_A (N a single shift block, nilpotency index s).
    Matrix c0(n, n), g0(n, n);
    const double j_values[] = {1.0, 2.0, 0.5, 4.0};
    for (std::size_t i = 0; i < r; ++i) {
        c0(i, i) = 1.0;
        g0(i, i) = j_values[i % 4];
    }
    for (std::size_t i = 0; i < s; ++i) {
        g0(r + i, r + i) = 1.0;
        if (i + 1 < s) c0(r + i, r + i + 1) = 1.0;
    }

    // Stream-splitting salt so each kind gets its own draw sequence.
    constexpr std::uint64_t salt = 0xa195a45c672ef6dfULL;
    std::mt19937_64 rng(seed ^ (salt * (1 + std::uint64_t(shape.index)) ^
                                (std::uint64_t(r) << 32)));
    const Conjugator left = make_conjugator(n, rng);
    const Conjugator right = make_conjugator(n, rng);

    Vector u_c(n), u_s(n);
    for (std::size_t i = 0; i < n; ++i) {
        u_c[i] = draw_amplitude(rng);
        u_s[i] = draw_amplitude(rng);
    }

    SinusoidalSource src;
    src.omega = 2.0 * std::acos(-1.0);  // 1 Hz
    src.b_c = linalg::matvec(left.t, u_c);
    src.b_s = linalg::matvec(left.t, u_s);

    BenchmarkSystem bench;
    bench.dae = LinearDae(linalg::matmul(linalg::matmul(left.t, c0), right.t_inv),
                          linalg::matmul(linalg::matmul(left.t, g0), right.t_inv),
                          std::move(src));
    bench.declared_index = shape.index;
    bench.construction_seed = seed;
    bench.conj_left = left.t;
    bench.conj_right = right.t;
    return bench;
}

}  // namespace obx
