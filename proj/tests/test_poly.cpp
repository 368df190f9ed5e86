#include <doctest.h>

#include <random>

#include "tdmech/errors.hpp"
#include "tdmech/poly.hpp"

using namespace tdmech;

namespace {

Poly random_poly(std::mt19937_64& rng, int nq, int np, int max_terms = 4, int max_deg = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Poly f(nq, np);
    int n = nterms(rng);
    for (int s = 0; s < n; ++s) {
        Poly::Exps e(static_cast<size_t>(1 + nq + np), 0);
        int budget = deg(rng);
        std::uniform_int_distribution<int> pick(0, nq + np);
        while (budget-- > 0) e[static_cast<size_t>(pick(rng))] += 1;
        int c = num(rng);
        if (c == 0) c = 1;
        f.add_term(e, rat(c, den(rng)));
    }
    return f;
}

}  // namespace

TEST_CASE("rational literals") {
    CHECK(rat(1, 2) == rat_from_string("1/2"));
    CHECK(rat_from_string("-3/6") == rat(-1, 2));
    CHECK(rat_from_string("7") == rat(7));
    CHECK(rat_to_string(rat(-1, 2)) == "-1/2");
    CHECK(rat_to_double(rat(1, 4)) == 0.25);
    CHECK(rat_from_double(0.5) == rat(1, 2));
    CHECK_THROWS_AS(rat_from_string("nope"), DimensionError);
    CHECK_THROWS_AS(rat_from_string("1/0"), DimensionError);
}

TEST_CASE("difference of squares") {
    Poly t = Poly::variable(1, 0, Var::t());
    Poly q = Poly::variable(1, 0, Var::q(1));
    CHECK((t + q) * (t - q) == t * t - q * q);
}

TEST_CASE("construction and term bookkeeping") {
    Poly f(2, 2);
    CHECK(f.is_zero());
    CHECK(f.is_constant());
    CHECK(f.constant_value() == 0);
    f.add_term({0, 1, 0, 0, 0}, rat(1, 2));
    f.add_term({0, 1, 0, 0, 0}, rat(-1, 2));
    CHECK(f.is_zero());

    Poly g = Poly::constant(2, 2, rat(3));
    CHECK(g.is_constant());
    CHECK(g.constant_value() == 3);
    Poly h = Poly::variable(2, 2, Var::p(2));
    CHECK_THROWS_AS(h.constant_value(), DimensionError);
    CHECK_THROWS_AS(Poly::variable(2, 2, Var::q(3)), DimensionError);
    CHECK_THROWS_AS(f.add_term({0, 0, 0}, rat(1)), DimensionError);
}

TEST_CASE("signature mismatch is rejected") {
    Poly f(1, 1), g(2, 1);
    CHECK_THROWS_AS(f + g, DimensionError);
    CHECK_THROWS_AS(f * g, DimensionError);
}

TEST_CASE("degrees and dependence") {
    // f = 1/2 t^2 q1 - p2 in the (2, 2) signature
    Poly f(2, 2);
    f.add_term({2, 1, 0, 0, 0}, rat(1, 2));
    f.add_term({0, 0, 0, 0, 1}, rat(-1));
    CHECK(f.total_degree() == 3);
    CHECK(f.degree_in_p() == 1);
    CHECK(f.degree_in(Var::t()) == 2);
    CHECK(f.depends_on(Var::p(2)));
    CHECK(!f.depends_on(Var::q(2)));
    CHECK(f.to_string() == "(1/2)*t^2*q1 + (-1)*p2");
}

TEST_CASE("evaluation") {
    Poly f(2, 2);
    f.add_term({2, 1, 0, 0, 0}, rat(1, 2));
    f.add_term({0, 0, 0, 0, 1}, rat(-1));
    // t=2, q=(3,0), p=(0,5): 1/2*4*3 - 5 = 1
    CHECK(f.eval({2.0, 3.0, 0.0, 0.0, 5.0}) == doctest::Approx(1.0));
    CHECK(f.eval_exact({rat(2), rat(3), rat(0), rat(0), rat(5)}) == rat(1));
    CHECK_THROWS_AS(f.eval({1.0, 2.0}), DimensionError);

    Poly sq = Poly::variable(1, 0, Var::q(1)) * Poly::variable(1, 0, Var::q(1));
    CHECK(sq.eval({0.0, 3.0}) == doctest::Approx(9.0));
    Poly tp = Poly::variable(1, 1, Var::t()) + Poly::variable(1, 1, Var::p(1));
    CHECK(tp.eval({1.0, 0.0, 2.0}) == doctest::Approx(3.0));
    // 1/2 p1^2 + 1/2 q1^2 at (q,p) = (1,0)
    Poly osc(1, 1);
    osc.add_term({0, 0, 2}, rat(1, 2));
    osc.add_term({0, 2, 0}, rat(1, 2));
    CHECK(osc.eval({0.0, 1.0, 0.0}) == doctest::Approx(0.5));
}

TEST_CASE("derivative oracles") {
    // d/dq1 (t q1^2) = 2 t q1
    Poly f(1, 0);
    f.add_term({1, 2}, rat(1));
    Poly expect(1, 0);
    expect.add_term({1, 1}, rat(2));
    CHECK(f.derivative(Var::q(1)) == expect);
    CHECK(f.derivative(Var::t()).derivative(Var::t()).is_zero());
}

TEST_CASE("derivative properties") {
    std::mt19937_64 rng(11);
    std::vector<Var> vars = {Var::t(), Var::q(1), Var::q(2), Var::p(1), Var::p(2)};
    for (int trial = 0; trial < 30; ++trial) {
        Poly f = random_poly(rng, 2, 2);
        Poly g = random_poly(rng, 2, 2);
        for (Var v : vars) {
            // product rule
            CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
        }
        // mixed partials commute
        CHECK(f.derivative(Var::q(1)).derivative(Var::p(2)) == f.derivative(Var::p(2)).derivative(Var::q(1)));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Poly f = random_poly(rng, 2, 2);
        Poly g = random_poly(rng, 2, 2);
        Poly h = random_poly(rng, 2, 2);
        CHECK(f + g == g + f);
        CHECK(f * g == g * f);
        CHECK((f + g) + h == f + (g + h));
        CHECK((f * g) * h == f * (g * h));
        CHECK((f + g) * h == f * h + g * h);
        CHECK((f - f).is_zero());
        CHECK((f + (-f)).is_zero());
        CHECK(f.scaled(rat(0)).is_zero());
        CHECK(f.scaled(rat(2, 3)) + f.scaled(rat(1, 3)) == f);
    }
}

TEST_CASE("substitution is simultaneous") {
    Poly q1 = Poly::variable(1, 1, Var::q(1));
    Poly p1 = Poly::variable(1, 1, Var::p(1));
    Poly f = q1 * q1 * p1;
    Poly swapped = f.substitute({{Var::q(1), p1}, {Var::p(1), q1}});
    CHECK(swapped == p1 * p1 * q1);
}

TEST_CASE("substitution oracles") {
    // p2 -> 0
    Poly p2 = Poly::variable(2, 2, Var::p(2));
    CHECK(p2.substitute({{Var::p(2), Poly(2, 2)}}).is_zero());
    // p1^2 with p1 -> 1/2 (p1 + p2) gives 1/4 (p1 + p2)^2
    Poly p1 = Poly::variable(2, 2, Var::p(1));
    Poly half_sum = (p1 + p2).scaled(rat(1, 2));
    CHECK((p1 * p1).substitute({{Var::p(1), half_sum}}) == half_sum * half_sum);
    // untouched variable
    Poly g = Poly::variable(2, 2, Var::q(1));
    CHECK(g.substitute({{Var::p(1), Poly(2, 2)}}) == g);
}

TEST_CASE("substitution commutes with evaluation") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Poly f = random_poly(rng, 1, 1, 3, 2);
        Poly g = random_poly(rng, 1, 1, 3, 2);
        std::vector<double> x = {coord(rng), coord(rng), coord(rng)};
        Poly composed = f.substitute({{Var::p(1), g}});
        std::vector<double> gx = {x[0], x[1], g.eval(x)};
        CHECK(composed.eval(x) == doctest::Approx(f.eval(gx)).epsilon(1e-12));
    }
}

TEST_CASE("momentum block resizing") {
    Poly f(2, 0);
    f.add_term({1, 2, 0}, rat(3, 2));
    Poly wide = f.with_num_p(2);
    CHECK(wide.num_p() == 2);
    CHECK(wide.truncated_p(0) == f);
    Poly uses_p = Poly::variable(2, 2, Var::p(2));
    CHECK_THROWS_AS(uses_p.truncated_p(1), DimensionError);
    CHECK_THROWS_AS(f.with_num_p(-1), DimensionError);
}

TEST_CASE("normalization") {
    // 2 q1 + 4 t: the lexicographically largest exponent vector is the t term
    Poly f(1, 0);
    f.add_term({0, 1}, rat(2));
    f.add_term({1, 0}, rat(4));
    CHECK(f.leading_coeff() == 4);
    Poly n = f.normalized();
    CHECK(n.leading_coeff() == 1);
    CHECK(n.scaled(rat(4)) == f);
    CHECK(Poly(1, 0).normalized().is_zero());
}

TEST_CASE("rendering") {
    CHECK(Poly(1, 1).to_string() == "0");
    Poly f = Poly::variable(2, 2, Var::p(2));
    CHECK(f.to_string() == "(1)*p2");
}
