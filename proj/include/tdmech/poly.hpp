#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdmech/rational.hpp"

namespace tdmech {

// Coordinate on the phase bundle: t, q^i or p_i (indices 1-based).
struct Var {
    enum class Kind { T, Q, P };
    Kind kind = Kind::T;
    int index = 0;

    static Var t() { return Var{Kind::T, 0}; }
    static Var q(int i) { return Var{Kind::Q, i}; }
    static Var p(int i) { return Var{Kind::P, i}; }

    bool operator==(const Var& o) const { return kind == o.kind && index == o.index; }
    bool operator<(const Var& o) const {
        if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
        return index < o.index;
    }
};

// Sparse polynomial over Q in the ordered variables (t, q^1..q^nq, p_1..p_np).
// Exponent vectors have fixed length 1 + nq + np; zero-coefficient terms are
// never stored, so the zero polynomial has an empty term map.
class Poly {
  public:
    using Exps = std::vector<int>;
    using TermMap = std::map<Exps, Rational>;

    Poly() = default;
    Poly(int num_q, int num_p) : nq_(num_q), np_(num_p) {}

    static Poly constant(int num_q, int num_p, const Rational& c);
    static Poly variable(int num_q, int num_p, Var v);

    int num_q() const { return nq_; }
    int num_p() const { return np_; }
    int num_vars() const { return 1 + nq_ + np_; }

    // Position of v in the exponent vector.
    int slot(Var v) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // 0 for the zero polynomial
    const TermMap& terms() const { return terms_; }

    int total_degree() const;
    int degree_in_p() const;
    int degree_in(Var v) const;
    bool depends_on(Var v) const { return degree_in(v) > 0; }

    void add_term(const Exps& e, const Rational& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const Rational& c) const;

    Poly derivative(Var v) const;

    // Plain double evaluation; vals has length num_vars() in variable order.
    double eval(const double* vals) const;
    double eval(const std::vector<double>& vals) const;

    // Exact evaluation at a rational point.
    Rational eval_exact(const std::vector<Rational>& vals) const;

    // Exact evaluation converted to double at the boundary.
    double evaluate(const std::vector<Rational>& vals) const { return rat_to_double(eval_exact(vals)); }

    // Replaces each listed variable by a polynomial of the same signature;
    // unlisted variables are left alone. Replacements see the original values
    // (simultaneous substitution).
    Poly substitute(const std::map<Var, Poly>& repl) const;

    // Same polynomial with the momentum block widened to new_np >= num_p slots.
    Poly with_num_p(int new_np) const;

    // Drops trailing momentum slots, which must be unused.
    Poly truncated_p(int new_np) const;

    // Divides by the coefficient of the lexicographically largest term.
    Poly normalized() const;
    Rational leading_coeff() const;

    std::string to_string() const;

  private:
    void check_same_signature(const Poly& o) const;

    int nq_ = 0;
    int np_ = 0;
    TermMap terms_;
};

std::string var_name(Var v);

}  // namespace tdmech
