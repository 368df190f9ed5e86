#pragma once

#include <vector>

#include "tdmech/linalg.hpp"
#include "tdmech/poly.hpp"

namespace tdmech {

// Matrix with polynomial entries sharing one variable signature, row-major.
struct PolyMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Poly> e;

    PolyMatrix() = default;
    PolyMatrix(int r, int c, int num_q, int num_p)
        : rows(r), cols(c), e(static_cast<size_t>(r) * c, Poly(num_q, num_p)) {}

    Poly& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const Poly& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    int num_q() const { return e.empty() ? 0 : e.front().num_q(); }
    int num_p() const { return e.empty() ? 0 : e.front().num_p(); }

    static PolyMatrix identity(int n, int num_q, int num_p);
    static PolyMatrix from_rmat(const RMat& m, int num_q, int num_p);

    PolyMatrix transpose() const;
    bool is_symmetric() const;
    bool is_zero() const;
    bool is_constant() const;
    RMat to_rmat() const;  // requires is_constant
    DMat eval(const std::vector<double>& vals) const;
    PolyMatrix with_num_p(int new_np) const;
    bool operator==(const PolyMatrix& o) const;
};

PolyMatrix pmul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix padd(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix psub(const PolyMatrix& a, const PolyMatrix& b);
std::vector<Poly> pmul_vec(const PolyMatrix& a, const std::vector<Poly>& v);

}  // namespace tdmech
