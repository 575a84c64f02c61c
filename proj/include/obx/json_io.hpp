#pragma once

#include <json.hpp>

#include "obx/dae.hpp"
#include "obx/order_lab.hpp"
#include "obx/pencil.hpp"
#include "obx/steady_state.hpp"

namespace obx {

/// System file format:
/// { "N": int, "C": [[...]], "G": [[...]], "b_c": [...], "b_s": [...],
///   "omega": real } with row-major nested arrays.
LinearDae dae_from_json(const nlohmann::json& j);
nlohmann::json dae_to_json(const LinearDae& dae);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// { "r", "s", "k", "P", "Q", "J", "N" }
nlohmann::json decomposition_to_json(const WeierstrassDecomposition& w);

/// { "X_c", "X_s", "residual" }
nlohmann::json phasor_to_json(const LinearDae& dae, const PhasorSolution& phasor);

nlohmann::json study_to_json(const OrderStudyReport& report);

}  // namespace obx
