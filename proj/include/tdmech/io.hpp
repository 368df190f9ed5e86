#pragma once

#include <string>

#include <json.hpp>

#include "tdmech/model.hpp"

namespace tdmech {

// Polynomial literal: [{"coeff": "p/q", "exps": [int, ...]}, ...] with
// exponent vectors of length 1 + num_q + num_p in the (t, q.., p..) order.
nlohmann::json poly_to_json(const Poly& f);
Poly poly_from_json(const nlohmann::json& j, int num_q, int num_p);

nlohmann::json matrix_to_json(const PolyMatrix& m);
PolyMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols, int num_q, int num_p);

// Model config:
// {"m": int, "a": [[literal, ...], ...], "b": [literal, ...], "c": literal,
//  "domain": {"t": [lo, hi], "q": [[lo, hi], ...]}}
QuadraticModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const QuadraticModel& model);

QuadraticModel load_model(const std::string& path);

}  // namespace tdmech
