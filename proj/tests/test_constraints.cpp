#include <doctest.h>

#include <vector>

#include "tdmech/errors.hpp"
#include "tdmech/hamiltonian.hpp"
#include "test_fixtures.hpp"

using namespace tdmech;

namespace {

Poly qv(int m, int i) { return Poly::variable(m, m, Var::q(i)); }
Poly pv(int m, int i) { return Poly::variable(m, m, Var::p(i)); }

HamiltonianForm standard_form(const QuadraticModel& model) {
    SigmaSplit split = build_sigma(model);
    return build_hamiltonian(model, split, solve_connection(model, split));
}

}  // namespace

TEST_CASE("canonical constraint sets") {
    SigmaSplit r1 = build_sigma(fixtures::rank1());
    ConstraintSet set = constraint_set_from_split(r1);
    CHECK(set.canonical);
    REQUIRE(set.gens.size() == 1);  // the zero component is dropped
    CHECK(set.gens[0] == pv(2, 2));
    CHECK(set.relations.empty());

    SigmaSplit sh = build_sigma(fixtures::shared_mode());
    set = constraint_set_from_split(sh);
    REQUIRE(set.gens.size() == 2);
    CHECK(set.gens[0] == -set.gens[1]);
    REQUIRE(set.relations.size() == 1);
    CHECK(set.relations[0] == std::vector<Rational>{rat(1), rat(1)});

    SigmaSplit osc = build_sigma(fixtures::harmonic());
    set = constraint_set_from_split(osc);
    CHECK(set.gens.empty());  // regular model: no constraints
}

TEST_CASE("restriction to the constraint space") {
    SigmaSplit r1 = build_sigma(fixtures::rank1());
    CHECK(restrict_to_constraint_space(pv(2, 2), r1).is_zero());
    CHECK(restrict_to_constraint_space(pv(2, 1), r1) == pv(2, 1));
    CHECK(restrict_to_constraint_space(qv(2, 2) * pv(2, 1), r1) == qv(2, 2) * pv(2, 1));

    SigmaSplit sh = build_sigma(fixtures::shared_mode());
    Poly half_sum = (pv(2, 1) + pv(2, 2)).scaled(rat(1, 2));
    CHECK(restrict_to_constraint_space(pv(2, 1), sh) == half_sum);
    CHECK(restrict_to_constraint_space(pv(2, 1) - pv(2, 2), sh).is_zero());

    CHECK_THROWS_AS(restrict_to_constraint_space(pv(1, 1), r1), DimensionError);
}

TEST_CASE("triangular ideal reduction") {
    int m = 2;
    IdealReducer red({pv(m, 2)});
    CHECK(red.reduce(pv(m, 2) * pv(m, 1)).is_zero());
    CHECK(red.reduce(pv(m, 1)) == pv(m, 1));
    CHECK(red.in_ideal(pv(m, 2) * qv(m, 1)));
    CHECK(!red.in_ideal(Poly::constant(m, m, rat(3))));
    CHECK(red.unsolved().empty());

    // affine generator: p2 = q1 on the surface
    IdealReducer aff({pv(m, 2) - qv(m, 1)});
    CHECK(aff.in_ideal(pv(m, 2) - qv(m, 1)));
    CHECK(aff.reduce(pv(m, 2) * pv(m, 1)) == qv(m, 1) * pv(m, 1));

    // quadratic generator: no usable pivot, reduction is the identity
    IdealReducer quad({pv(m, 1) * pv(m, 1)});
    REQUIRE(quad.unsolved().size() == 1);
    CHECK(quad.reduce(pv(m, 1) * pv(m, 1)) == pv(m, 1) * pv(m, 1));

    // dependent pair: second generator reduces to zero, no extra pivot
    IdealReducer dep({pv(m, 2), pv(m, 2).scaled(rat(-3))});
    CHECK(dep.unsolved().empty());
    CHECK(dep.reduce(pv(m, 2)).is_zero());
}

TEST_CASE("classification of the canonical sets") {
    QuadraticModel model = fixtures::rank1();
    SigmaSplit split = build_sigma(model);
    ConstraintSet set = constraint_set_from_split(split);
    ClassifyReport rep = classify_constraints(set, split, model);
    REQUIRE(rep.classes.size() == 1);
    CHECK(rep.classes[0] == ConstraintClass::First);
    CHECK(rep.bracket_table[0][0].is_zero());
    CHECK(!rep.sampled);

    QuadraticModel shared = fixtures::shared_mode();
    SigmaSplit ssplit = build_sigma(shared);
    ConstraintSet sset = constraint_set_from_split(ssplit);
    ClassifyReport srep = classify_constraints(sset, ssplit, shared);
    REQUIRE(srep.classes.size() == 2);
    CHECK(srep.classes[0] == ConstraintClass::First);
    CHECK(srep.classes[1] == ConstraintClass::First);
    for (const auto& row : srep.bracket_table)
        for (const auto& entry : row) CHECK(entry.is_zero());
}

TEST_CASE("classification of a user-supplied set") {
    QuadraticModel model = fixtures::rank1();
    SigmaSplit split = build_sigma(model);
    ConstraintSet set;
    set.gens = {pv(2, 2), qv(2, 2)};
    ClassifyReport rep = classify_constraints(set, split, model);
    REQUIRE(rep.classes.size() == 2);
    // {p2, q2} is a nonzero constant: conjugate pair, both second class
    CHECK(rep.classes[0] == ConstraintClass::Second);
    CHECK(rep.classes[1] == ConstraintClass::Second);
    CHECK(rep.bracket_table[0][1] == poisson_v(pv(2, 2), qv(2, 2)));
    CHECK(rep.bracket_table[0][1].is_constant());
    CHECK(!rep.bracket_table[0][1].is_zero());
}

TEST_CASE("sampled classification agrees with the symbolic one") {
    for (const auto& model : {fixtures::rank1(), fixtures::shared_mode()}) {
        SigmaSplit split = build_sigma(model);
        ConstraintSet set = constraint_set_from_split(split);
        ClassifyReport sym = classify_constraints(set, split, model);
        ClassifyReport num = classify_constraints(set, split, model, true);
        CHECK(num.sampled);
        REQUIRE(num.classes.size() == sym.classes.size());
        for (size_t i = 0; i < sym.classes.size(); ++i) CHECK(num.classes[i] == sym.classes[i]);
    }

    QuadraticModel model = fixtures::rank1();
    SigmaSplit split = build_sigma(model);
    ConstraintSet pair;
    pair.gens = {pv(2, 2), qv(2, 2)};
    ClassifyReport num = classify_constraints(pair, split, model, true);
    CHECK(num.classes[0] == ConstraintClass::Second);
    CHECK(num.classes[1] == ConstraintClass::Second);
}

TEST_CASE("degenerate constraint inputs are rejected") {
    QuadraticModel model = fixtures::rank1();
    SigmaSplit split = build_sigma(model);
    ConstraintSet empty;
    CHECK_THROWS_AS(classify_constraints(empty, split, model), ConstraintError);

    ConstraintSet contradictory;
    contradictory.gens = {pv(2, 2), pv(2, 2) + Poly::constant(2, 2, rat(1))};
    CHECK_THROWS_AS(classify_constraints(contradictory, split, model), ConstraintError);

    ConstraintSet wrong_dim;
    wrong_dim.gens = {pv(1, 1)};
    CHECK_THROWS_AS(classify_constraints(wrong_dim, split, model), DimensionError);
}

TEST_CASE("constraint algorithm closes immediately for the free degenerate model") {
    HamiltonianForm H = standard_form(fixtures::rank1());
    ConstraintSet initial = constraint_set_from_split(H.split);
    AlgorithmResult res = constraint_algorithm(H, initial);
    CHECK(res.closed);
    CHECK(!res.inconsistent);
    CHECK(res.adjoined_per_round.empty());
    REQUIRE(res.final_set.gens.size() == 1);
    CHECK(res.final_set.gens[0] == pv(2, 2));
}

TEST_CASE("constraint algorithm adjoins a secondary constraint") {
    HamiltonianForm H = standard_form(fixtures::rank1_forced());
    ConstraintSet initial = constraint_set_from_split(H.split);
    AlgorithmResult res = constraint_algorithm(H, initial);
    CHECK(res.closed);
    CHECK(!res.inconsistent);
    REQUIRE(res.adjoined_per_round.size() == 1);
    REQUIRE(res.adjoined_per_round[0].size() == 1);
    CHECK(res.adjoined_per_round[0][0] == qv(2, 2));
    REQUIRE(res.final_set.gens.size() == 2);
    CHECK(res.final_set.gens[0] == pv(2, 2));
    CHECK(res.final_set.gens[1] == qv(2, 2));
}

TEST_CASE("constraint algorithm flags inconsistency") {
    HamiltonianForm H = standard_form(fixtures::harmonic());
    ConstraintSet initial;
    initial.gens = {pv(1, 1), qv(1, 1) + Poly::constant(1, 1, rat(1))};
    AlgorithmResult res = constraint_algorithm(H, initial);
    CHECK(res.inconsistent);
    CHECK(!res.closed);
}

TEST_CASE("constraint algorithm on an empty set") {
    HamiltonianForm H = standard_form(fixtures::harmonic());
    ConstraintSet initial = constraint_set_from_split(H.split);
    CHECK(initial.gens.empty());
    AlgorithmResult res = constraint_algorithm(H, initial);
    CHECK(res.closed);
    CHECK(res.final_set.gens.empty());
}

TEST_CASE("constraint algorithm respects dependent generators") {
    // duplicated generator up to scale: still closes without growth
    HamiltonianForm H = standard_form(fixtures::shared_mode());
    ConstraintSet initial = constraint_set_from_split(H.split);
    AlgorithmResult res = constraint_algorithm(H, initial);
    CHECK(res.closed);
    CHECK(res.adjoined_per_round.empty());
    // both generators survive (normalized), they differ only by sign
    REQUIRE(res.final_set.gens.size() == 2);
    CHECK(res.final_set.gens[0] == res.final_set.gens[1]);
}
