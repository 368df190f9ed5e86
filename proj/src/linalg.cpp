#include "tdmech/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>

#include "tdmech/errors.hpp"

namespace tdmech {

RMat RMat::identity(int n) {
    RMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

RMat RMat::transpose() const {
    RMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool RMat::is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool RMat::is_zero() const {
    for (const auto& x : e)
        if (x != 0) return false;
    return true;
}

RMat rmul(const RMat& a, const RMat& b) {
    if (a.cols != b.rows) throw DimensionError("rational matrix product shape mismatch");
    RMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

RMat radd(const RMat& a, const RMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("rational matrix sum shape mismatch");
    RMat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

RMat rsub(const RMat& a, const RMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("rational matrix difference shape mismatch");
    RMat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
    return r;
}

std::vector<Rational> rmul_vec(const RMat& a, const std::vector<Rational>& v) {
    if (a.cols != static_cast<int>(v.size())) throw DimensionError("rational matrix-vector shape mismatch");
    std::vector<Rational> r(static_cast<size_t>(a.rows), Rational(0));
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r[static_cast<size_t>(i)] += a.at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

int rref(RMat& m, std::vector<int>* pivot_cols) {
    if (pivot_cols) pivot_cols->clear();
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rational inv = 1 / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

int rank(RMat m) { return rref(m); }

std::vector<std::vector<Rational>> nullspace(const RMat& m) {
    RMat red = m;
    std::vector<int> piv;
    int r = rref(red, &piv);
    std::vector<bool> is_piv(static_cast<size_t>(m.cols), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_piv[static_cast<size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<size_t>(m.cols), Rational(0));
        v[static_cast<size_t>(free)] = 1;
        for (int i = 0; i < r; ++i) v[static_cast<size_t>(piv[static_cast<size_t>(i)])] = -red.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

RMat rinverse(const RMat& m) {
    if (m.rows != m.cols) throw DimensionError("inverse of non-square matrix");
    RMat aug(m.rows, 2 * m.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    std::vector<int> piv;
    rref(aug, &piv);
    // Invertible iff every pivot lands in the left block.
    if (static_cast<int>(piv.size()) < m.cols || piv[static_cast<size_t>(m.cols) - 1] != m.cols - 1)
        throw DimensionError("inverse of singular matrix");
    RMat inv(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) inv.at(i, j) = aug.at(i, m.cols + j);
    return inv;
}

RMat pinv_exact(const RMat& a) {
    // Rank factorization a = B*C with B the pivot columns of a and C the
    // nonzero rows of rref(a); then a+ = C^T (C C^T)^-1 (B^T B)^-1 B^T.
    RMat red = a;
    std::vector<int> piv;
    int r = rref(red, &piv);
    if (r == 0) return RMat(a.cols, a.rows);
    RMat B(a.rows, r), C(r, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < r; ++k) B.at(i, k) = a.at(i, piv[static_cast<size_t>(k)]);
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < a.cols; ++j) C.at(k, j) = red.at(k, j);
    RMat Bt = B.transpose(), Ct = C.transpose();
    return rmul(rmul(Ct, rinverse(rmul(C, Ct))), rmul(rinverse(rmul(Bt, B)), Bt));
}

DMat DMat::identity(int n) {
    DMat r(n, n);
    for (int i = 0; i < n; ++i) r.at(i, i) = 1.0;
    return r;
}

DMat dmul(const DMat& a, const DMat& b) {
    if (a.cols != b.rows) throw DimensionError("matrix product shape mismatch");
    DMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            for (int j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    return r;
}

DMat dsub(const DMat& a, const DMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("matrix difference shape mismatch");
    DMat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
    return r;
}

std::vector<double> dmul_vec(const DMat& a, const std::vector<double>& v) {
    if (a.cols != static_cast<int>(v.size())) throw DimensionError("matrix-vector shape mismatch");
    std::vector<double> r(static_cast<size_t>(a.rows), 0.0);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) r[static_cast<size_t>(i)] += a.at(i, j) * v[static_cast<size_t>(j)];
    return r;
}

double dmax_abs(const DMat& a) {
    double m = 0.0;
    for (double x : a.e) m = std::max(m, std::abs(x));
    return m;
}

SymEig sym_eig(const DMat& a, double sym_tol) {
    if (a.rows != a.cols) throw DimensionError("eigendecomposition of non-square matrix");
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j)
            if (std::abs(a.at(i, j) - a.at(j, i)) > sym_tol)
                throw DimensionError("matrix is not symmetric within tolerance");
    Eigen::MatrixXd m(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m(i, j) = 0.5 * (a.at(i, j) + a.at(j, i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    SymEig out;
    out.values.resize(static_cast<size_t>(a.rows));
    out.vectors = DMat(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i) {
        out.values[static_cast<size_t>(i)] = es.eigenvalues()(i);
        for (int j = 0; j < a.cols; ++j) out.vectors.at(i, j) = es.eigenvectors()(i, j);
    }
    return out;
}

DMat sym_pinv(const DMat& a, double tol, int* rank_out) {
    SymEig eig = sym_eig(a, tol);
    int n = a.rows;
    int r = 0;
    DMat out(n, n);
    for (int k = 0; k < n; ++k) {
        double lam = eig.values[static_cast<size_t>(k)];
        if (std::abs(lam) < tol) continue;
        ++r;
        double inv = 1.0 / lam;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i, j) += inv * eig.vectors.at(i, k) * eig.vectors.at(j, k);
    }
    if (rank_out) *rank_out = r;
    return out;
}

int sym_rank(const DMat& a, double tol) {
    SymEig eig = sym_eig(a, tol);
    int r = 0;
    for (double lam : eig.values)
        if (std::abs(lam) >= tol) ++r;
    return r;
}

}  // namespace tdmech
