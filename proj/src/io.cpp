#include "tdmech/io.hpp"

#include <fstream>

#include "tdmech/errors.hpp"

namespace tdmech {

using nlohmann::json;

json poly_to_json(const Poly& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) {
        json term;
        term["coeff"] = rat_to_string(c);
        term["exps"] = e;
        terms.push_back(std::move(term));
    }
    return terms;
}

Poly poly_from_json(const json& j, int num_q, int num_p) {
    if (!j.is_array()) throw DimensionError("polynomial literal must be a list of terms");
    Poly f(num_q, num_p);
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("coeff") || !term.contains("exps"))
            throw DimensionError("polynomial term needs 'coeff' and 'exps'");
        Poly::Exps e = term.at("exps").get<Poly::Exps>();
        if (static_cast<int>(e.size()) != 1 + num_q + num_p)
            throw DimensionError("exponent vector length must be " + std::to_string(1 + num_q + num_p));
        for (int x : e)
            if (x < 0) throw DimensionError("exponents must be nonnegative");
        f.add_term(e, rat_from_string(term.at("coeff").get<std::string>()));
    }
    return f;
}

json matrix_to_json(const PolyMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(poly_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

PolyMatrix matrix_from_json(const json& j, int rows, int cols, int num_q, int num_p) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw DimensionError("matrix literal must have " + std::to_string(rows) + " rows");
    PolyMatrix m(rows, cols, num_q, num_p);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw DimensionError("matrix row must have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) m.at(i, c) = poly_from_json(row.at(static_cast<size_t>(c)), num_q, num_p);
    }
    return m;
}

QuadraticModel model_from_json(const json& j) {
    if (!j.is_object()) throw DimensionError("model config must be an object");
    QuadraticModel model;
    model.m = j.at("m").get<int>();
    if (model.m <= 0) throw DimensionError("model dimension must be positive");
    model.a = matrix_from_json(j.at("a"), model.m, model.m, model.m, 0);
    const auto& b = j.at("b");
    if (!b.is_array() || static_cast<int>(b.size()) != model.m) throw DimensionError("b must list m literals");
    for (const auto& bi : b) model.b.push_back(poly_from_json(bi, model.m, 0));
    model.c = poly_from_json(j.at("c"), model.m, 0);
    const auto& dom = j.at("domain");
    auto box = [](const json& v) {
        if (!v.is_array() || v.size() != 2) throw DimensionError("box must be [lo, hi]");
        std::array<double, 2> b{v.at(0).get<double>(), v.at(1).get<double>()};
        if (!(b[0] <= b[1])) throw DimensionError("box must satisfy lo <= hi");
        return b;
    };
    model.t_box = box(dom.at("t"));
    const auto& qb = dom.at("q");
    if (!qb.is_array() || static_cast<int>(qb.size()) != model.m)
        throw DimensionError("domain must box all m coordinates");
    for (const auto& v : qb) model.q_box.push_back(box(v));
    check_model_shapes(model);
    return model;
}

json model_to_json(const QuadraticModel& model) {
    json j;
    j["m"] = model.m;
    j["a"] = matrix_to_json(model.a);
    json b = json::array();
    for (const auto& bi : model.b) b.push_back(poly_to_json(bi));
    j["b"] = std::move(b);
    j["c"] = poly_to_json(model.c);
    j["domain"]["t"] = model.t_box;
    json qb = json::array();
    for (const auto& box : model.q_box) qb.push_back(box);
    j["domain"]["q"] = std::move(qb);
    return j;
}

QuadraticModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DimensionError("cannot open model file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DimensionError("malformed model JSON in " + path + ": " + e.what());
    }
    return model_from_json(j);
}

}  // namespace tdmech
