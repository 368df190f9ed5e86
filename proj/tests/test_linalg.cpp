#include <doctest.h>

#include <random>

#include "tdmech/errors.hpp"
#include "tdmech/linalg.hpp"

using namespace tdmech;

namespace {

RMat rmat2(std::initializer_list<long> vals, int rows, int cols) {
    RMat m(rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rat(*it++);
    return m;
}

RMat random_symmetric(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    RMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rational v = rat(num(rng), den(rng));
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return m;
}

// Gram matrix of r random integer vectors: symmetric, positive semidefinite,
// rank <= r. Retries until the rank is exactly r.
RMat symmetric_of_rank(std::mt19937_64& rng, int n, int r) {
    std::uniform_int_distribution<int> num(-2, 2);
    while (true) {
        RMat b(r, n);
        for (auto& x : b.e) x = rat(num(rng));
        RMat a = rmul(b.transpose(), b);
        if (rank(a) == r) return a;
    }
}

DMat to_dmat(const RMat& m) {
    DMat d(m.rows, m.cols);
    for (size_t i = 0; i < m.e.size(); ++i) d.e[i] = rat_to_double(m.e[i]);
    return d;
}

bool penrose_ok(const RMat& a, const RMat& ap) {
    if (!(rmul(rmul(a, ap), a) == a)) return false;
    if (!(rmul(rmul(ap, a), ap) == ap)) return false;
    RMat aap = rmul(a, ap);
    RMat apa = rmul(ap, a);
    return aap == aap.transpose() && apa == apa.transpose();
}

}  // namespace

TEST_CASE("rref and rank") {
    RMat m = rmat2({1, 2, 2, 4}, 2, 2);
    CHECK(rank(m) == 1);
    CHECK(rank(RMat::identity(3)) == 3);
    CHECK(rank(RMat(2, 2)) == 0);
}

TEST_CASE("nullspace") {
    RMat m = rmat2({1, 1}, 1, 2);
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == rat(-1));
    CHECK(basis[0][1] == rat(1));
    CHECK(nullspace(RMat::identity(2)).empty());
}

TEST_CASE("inverse") {
    RMat m = rmat2({1, 1, 0, 1}, 2, 2);
    RMat inv = rinverse(m);
    CHECK(rmul(m, inv) == RMat::identity(2));
    CHECK(inv == rmat2({1, -1, 0, 1}, 2, 2));
    CHECK_THROWS_AS(rinverse(rmat2({1, 2, 2, 4}, 2, 2)), DimensionError);
}

TEST_CASE("exact pseudoinverse oracles") {
    RMat ones = rmat2({1, 1, 1, 1}, 2, 2);
    RMat quarter(2, 2);
    for (auto& x : quarter.e) x = rat(1, 4);
    CHECK(pinv_exact(ones) == quarter);

    RMat diag = rmat2({1, 0, 0, 0}, 2, 2);
    CHECK(pinv_exact(diag) == diag);
    CHECK(pinv_exact(RMat::identity(3)) == RMat::identity(3));
    CHECK(pinv_exact(RMat(2, 2)) == RMat(2, 2));
    RMat reg = rmat2({2, 1, 1, 1}, 2, 2);
    CHECK(pinv_exact(reg) == rinverse(reg));
}

TEST_CASE("exact pseudoinverse satisfies the Penrose identities") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            RMat a = random_symmetric(rng, n);
            RMat ap = pinv_exact(a);
            CHECK(penrose_ok(a, ap));
            CHECK(ap.is_symmetric());
            // the associated projector is idempotent
            RMat proj = rmul(a, ap);
            CHECK(rmul(proj, proj) == proj);
        }
    // non-symmetric and rectangular inputs
    std::uniform_int_distribution<int> num(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        RMat a(2, 3);
        for (auto& x : a.e) x = rat(num(rng));
        CHECK(penrose_ok(a, pinv_exact(a)));
    }
}

TEST_CASE("prescribed-rank construction round trip") {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 4; ++n)
        for (int r = 0; r <= n; ++r) {
            RMat a = symmetric_of_rank(rng, n, r);
            RMat ap = pinv_exact(a);
            CHECK(rank(ap) == r);
            CHECK(penrose_ok(a, ap));
        }
}

TEST_CASE("numeric pseudoinverse oracles") {
    DMat ones(2, 2);
    for (auto& x : ones.e) x = 1.0;
    int r = 0;
    DMat s = sym_pinv(ones, 1e-9, &r);
    CHECK(r == 1);
    for (double x : s.e) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(sym_rank(DMat::identity(2)) == 2);
    DMat zero(3, 3);
    CHECK(dmax_abs(sym_pinv(zero)) == 0.0);
    CHECK(sym_rank(zero) == 0);
    DMat id = sym_pinv(DMat::identity(2));
    CHECK(dmax_abs(dsub(id, DMat::identity(2))) < 1e-12);
}

TEST_CASE("numeric eigendecomposition") {
    DMat m(2, 2);
    m.at(0, 0) = 2.0;
    m.at(1, 1) = 1.0;
    SymEig eig = sym_eig(m);
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(2.0));

    DMat skew(2, 2);
    skew.at(0, 1) = 1.0;
    skew.at(1, 0) = -1.0;
    CHECK_THROWS_AS(sym_eig(skew), DimensionError);
}

TEST_CASE("numeric and exact pseudoinverse agree") {
    std::mt19937_64 rng(29);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 8; ++trial) {
            RMat a = random_symmetric(rng, n);
            DMat num_pinv = sym_pinv(to_dmat(a), 1e-9);
            DMat exact = to_dmat(pinv_exact(a));
            CHECK(dmax_abs(dsub(num_pinv, exact)) < 1e-10);
        }
}
