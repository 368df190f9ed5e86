#include "tdmech/poly_matrix.hpp"

#include "tdmech/errors.hpp"

namespace tdmech {

PolyMatrix PolyMatrix::identity(int n, int num_q, int num_p) {
    PolyMatrix r(n, n, num_q, num_p);
    for (int i = 0; i < n; ++i) r.at(i, i) = Poly::constant(num_q, num_p, 1);
    return r;
}

PolyMatrix PolyMatrix::from_rmat(const RMat& m, int num_q, int num_p) {
    PolyMatrix r(m.rows, m.cols, num_q, num_p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(i, j) = Poly::constant(num_q, num_p, m.at(i, j));
    return r;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix r(cols, rows, num_q(), num_p());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool PolyMatrix::is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : e)
        if (!p.is_zero()) return false;
    return true;
}

bool PolyMatrix::is_constant() const {
    for (const auto& p : e)
        if (!p.is_constant()) return false;
    return true;
}

RMat PolyMatrix::to_rmat() const {
    RMat r(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j).constant_value();
    return r;
}

DMat PolyMatrix::eval(const std::vector<double>& vals) const {
    DMat r(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j).eval(vals);
    return r;
}

PolyMatrix PolyMatrix::with_num_p(int new_np) const {
    PolyMatrix r(rows, cols, num_q(), new_np);
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = e[i].with_num_p(new_np);
    return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const { return rows == o.rows && cols == o.cols && e == o.e; }

PolyMatrix pmul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols != b.rows) throw DimensionError("polynomial matrix product shape mismatch");
    PolyMatrix r(a.rows, b.cols, a.num_q(), a.num_p());
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

PolyMatrix padd(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("polynomial matrix sum shape mismatch");
    PolyMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

PolyMatrix psub(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("polynomial matrix difference shape mismatch");
    PolyMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
    return r;
}

std::vector<Poly> pmul_vec(const PolyMatrix& a, const std::vector<Poly>& v) {
    if (a.cols != static_cast<int>(v.size())) throw DimensionError("polynomial matrix-vector shape mismatch");
    std::vector<Poly> r(static_cast<size_t>(a.rows), Poly(a.num_q(), a.num_p()));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r[static_cast<size_t>(i)] += a.at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

}  // namespace tdmech
