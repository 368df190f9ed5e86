#pragma once

#include <vector>

#include "tdmech/rational.hpp"

namespace tdmech {

// Dense rational matrix, row-major.
struct RMat {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> e;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, Rational(0)) {}

    Rational& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    static RMat identity(int n);
    RMat transpose() const;
    bool is_symmetric() const;
    bool is_zero() const;
    bool operator==(const RMat& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
};

RMat rmul(const RMat& a, const RMat& b);
RMat radd(const RMat& a, const RMat& b);
RMat rsub(const RMat& a, const RMat& b);
std::vector<Rational> rmul_vec(const RMat& a, const std::vector<Rational>& v);

// Reduces M to reduced row echelon form in place; returns the rank and, if
// requested, the pivot column indices.
int rref(RMat& m, std::vector<int>* pivot_cols = nullptr);

int rank(RMat m);

// Basis of the right nullspace, one vector per column of the result.
std::vector<std::vector<Rational>> nullspace(const RMat& m);

// Inverse of a square nonsingular matrix; throws on singular input.
RMat rinverse(const RMat& m);

// Exact Moore-Penrose pseudoinverse via rank factorization. For symmetric
// input the result is symmetric, satisfies all four Penrose identities and
// vanishes on the kernel of the input.
RMat pinv_exact(const RMat& a);

// Dense double matrix, row-major.
struct DMat {
    int rows = 0;
    int cols = 0;
    std::vector<double> e;

    DMat() = default;
    DMat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    static DMat identity(int n);
};

DMat dmul(const DMat& a, const DMat& b);
DMat dsub(const DMat& a, const DMat& b);
std::vector<double> dmul_vec(const DMat& a, const std::vector<double>& v);
double dmax_abs(const DMat& a);

struct SymEig {
    std::vector<double> values;  // ascending
    DMat vectors;                // columns are eigenvectors
};

// Eigendecomposition of a symmetric matrix (symmetry enforced to sym_tol).
SymEig sym_eig(const DMat& a, double sym_tol = 1e-9);

// Numeric Moore-Penrose pseudoinverse of a symmetric matrix; eigenvalues with
// magnitude below tol are treated as exactly zero. rank_out receives the
// number of eigenvalues kept.
DMat sym_pinv(const DMat& a, double tol = 1e-9, int* rank_out = nullptr);

int sym_rank(const DMat& a, double tol = 1e-9);

}  // namespace tdmech
