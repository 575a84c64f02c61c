#include "obx/json_io.hpp"

#include <cmath>

#include "obx/errors.hpp"
#include "obx/steady_state.hpp"

namespace obx {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw Error("matrix: expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows > 0 ? j.at(0).size() : 0;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j.at(i).is_array() || j.at(i).size() != cols)
            throw Error("matrix: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    }
    return m;
}

LinearDae dae_from_json(const json& j) {
    for (const char* key : {"N", "C", "G", "b_c", "b_s", "omega"})
        if (!j.contains(key)) throw Error(std::string("system json: missing field '") + key + "'");

    const std::size_t n = j.at("N").get<std::size_t>();
    Matrix c = matrix_from_json(j.at("C"));
    Matrix g = matrix_from_json(j.at("G"));
    if (c.rows() != n || c.cols() != n || g.rows() != n || g.cols() != n)
        throw Error("system json: matrix sizes do not match N");

    SinusoidalSource src;
    src.b_c = j.at("b_c").get<Vector>();
    src.b_s = j.at("b_s").get<Vector>();
    src.omega = j.at("omega").get<double>();
    if (src.b_c.size() != n || src.b_s.size() != n)
        throw Error("system json: source sizes do not match N");
    if (!(src.omega >= 0.0)) throw Error("system json: omega must be >= 0");
    return LinearDae(std::move(c), std::move(g), std::move(src));
}

json dae_to_json(const LinearDae& dae) {
    return json{{"N", dae.dim()},
                {"C", matrix_to_json(dae.C)},
                {"G", matrix_to_json(dae.G)},
                {"b_c", dae.source.b_c},
                {"b_s", dae.source.b_s},
                {"omega", dae.source.omega}};
}

json decomposition_to_json(const WeierstrassDecomposition& w) {
    return json{{"r", w.r},
                {"s", w.s},
                {"k", w.index_k},
                {"P", matrix_to_json(w.P)},
                {"Q", matrix_to_json(w.Q)},
                {"J", matrix_to_json(w.J)},
                {"N", matrix_to_json(w.Nnil)}};
}

json phasor_to_json(const LinearDae& dae, const PhasorSolution& phasor) {
    return json{{"X_c", phasor.X_c},
                {"X_s", phasor.X_s},
                {"residual", phasor_residual(dae, phasor)}};
}

json study_to_json(const OrderStudyReport& report) {
    json fits = json::array();
    for (const DerivativeFit& f : report.fits) {
        json entry{{"i", f.i},
                   {"predicted", f.predicted},
                   {"pass", f.pass},
                   {"floored", f.floored},
                   {"points_used", f.points_used}};
        if (std::isnan(f.slope))
            entry["slope"] = nullptr;
        else
            entry["slope"] = f.slope;
        fits.push_back(std::move(entry));
    }
    return json{{"scheme", json{{"l", report.l}, {"m", report.m}}},
                {"index_k", report.index_k},
                {"omega", report.omega},
                {"h_values", report.h_values},
                {"per_derivative", fits},
                {"pass", report.all_pass}};
}

}  // namespace obx
