#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tdmech/poly.hpp"

namespace tdmech {

// Ghost / antighost generator. Level k >= 1 fixes the Grassmann parity
// (k mod 2); index runs over 1..m. Ghosts sort before antighosts so products
// normal-order as ghost block then antighost block.
struct Generator {
    enum class Kind : std::uint8_t { Ghost = 0, Antighost = 1 };
    Kind kind = Kind::Antighost;
    int index = 1;
    int level = 1;

    bool odd() const { return level % 2 == 1; }
    auto operator<=>(const Generator&) const = default;
};

inline Generator antighost(int index, int level) { return Generator{Generator::Kind::Antighost, index, level}; }
inline Generator ghost(int index, int level) { return Generator{Generator::Kind::Ghost, index, level}; }

// Normal-ordered product of generators with multiplicities; odd generators
// carry multiplicity one (their square is zero).
struct GradedMonomial {
    std::vector<std::pair<Generator, int>> factors;  // sorted by generator

    bool empty() const { return factors.empty(); }
    int parity() const;            // Grassmann parity, 0 or 1
    int antighost_number() const;  // sum of level*mult over antighost factors
    auto operator<=>(const GradedMonomial&) const = default;
};

// Finite sum of monomials with polynomial phase-space coefficients sharing
// one signature.
struct GradedElement {
    int num_q = 0;
    int num_p = 0;
    std::map<GradedMonomial, Poly> terms;

    GradedElement() = default;
    GradedElement(int nq, int np) : num_q(nq), num_p(np) {}

    bool is_zero() const { return terms.empty(); }
    void add(const GradedMonomial& mono, const Poly& coeff);
    bool operator==(const GradedElement& o) const;
    GradedElement operator+(const GradedElement& o) const;
    GradedElement operator-(const GradedElement& o) const;
    GradedElement& operator+=(const GradedElement& o);
    GradedElement scaled(const Rational& c) const;
};

GradedElement element_from_poly(const Poly& coeff);
GradedElement element_from_generator(int num_q, int num_p, Generator g);

// Product with Koszul signs from reordering odd generators; squares of odd
// generators vanish.
GradedElement graded_mul(const GradedElement& a, const GradedElement& b);

// Left (interior-product style) derivative with respect to a generator:
// remove one factor g, signed by the odd factors standing to its left.
GradedElement left_derivative(const GradedElement& x, Generator g);

std::string render(const GradedElement& x);

}  // namespace tdmech
