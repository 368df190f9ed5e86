#include "tdmech/koszul_tate.hpp"

#include <random>
#include <set>

#include "tdmech/errors.hpp"
#include "tdmech/linalg.hpp"

namespace tdmech {

namespace {

GradedElement scale_by_poly(const GradedElement& x, const Poly& f) {
    GradedElement r(x.num_q, x.num_p);
    for (const auto& [m, c] : x.terms) r.add(m, c * f);
    return r;
}

GradedElement element_of_monomial(int nq, int np, const GradedMonomial& mono) {
    GradedElement r(nq, np);
    r.add(mono, Poly::constant(nq, np, 1));
    return r;
}

GradedElement delta_of_generator(const KTComplex& cx, Generator g) {
    int m = cx.m;
    if (g.level == 1) return element_from_poly(cx.rconstr[static_cast<size_t>(g.index - 1)]);
    GradedElement out(m, m);
    bool even = g.level % 2 == 0;
    for (int k = 0; k < m; ++k) {
        Poly coeff = cx.proj.at(g.index - 1, k);
        if (!even) {
            coeff = -coeff;
            if (k == g.index - 1) coeff += Poly::constant(m, m, 1);
        }
        if (coeff.is_zero()) continue;
        out.add(GradedMonomial{{{antighost(k + 1, g.level - 1), 1}}}, coeff);
    }
    return out;
}

void check_kt_operand(const KTComplex& cx, const GradedElement& x) {
    if (x.num_q != cx.m || x.num_p != cx.m) throw DimensionError("graded element signature mismatch with complex");
    for (const auto& [mono, coeff] : x.terms)
        for (const auto& [g, mult] : mono.factors) {
            if (g.kind != Generator::Kind::Antighost)
                throw DimensionError("the differential is defined on the antighost algebra only");
            if (g.level > cx.K) throw DimensionError("generator level exceeds the truncation");
        }
}

}  // namespace

KTComplex make_kt(const QuadraticModel& model, const SigmaSplit& split, int K) {
    if (!split.symbolic) throw SigmaError("the antighost complex requires a symbolic split");
    if (K < 1) throw DimensionError("truncation level must be at least 1");
    KTComplex cx;
    cx.m = model.m;
    cx.K = K;
    cx.split = split;
    cx.proj = split.proj().with_num_p(split.m);
    cx.rconstr = constraint_polys(split);
    return cx;
}

GradedElement kt_delta(const KTComplex& cx, const GradedElement& x) {
    check_kt_operand(cx, x);
    GradedElement out(cx.m, cx.m);
    for (const auto& [mono, coeff] : x.terms) {
        int prefix_parity = 0;
        for (size_t j = 0; j < mono.factors.size(); ++j) {
            const auto& [g, mult] = mono.factors[j];
            GradedMonomial prefix;
            prefix.factors.assign(mono.factors.begin(), mono.factors.begin() + static_cast<long>(j));
            GradedMonomial rest;
            if (mult > 1) rest.factors.emplace_back(g, mult - 1);
            rest.factors.insert(rest.factors.end(), mono.factors.begin() + static_cast<long>(j) + 1,
                                mono.factors.end());
            GradedElement term = graded_mul(element_of_monomial(cx.m, cx.m, prefix),
                                            graded_mul(delta_of_generator(cx, g),
                                                       element_of_monomial(cx.m, cx.m, rest)));
            Poly factor = coeff.scaled(prefix_parity ? -mult : mult);
            out += scale_by_poly(term, factor);
            if (g.odd()) prefix_parity ^= 1;
        }
    }
    return out;
}

namespace {

// Random antighost-only element: a couple of monomials over levels <= K with
// small rational phase-space coefficients.
GradedElement random_antighost_element(const KTComplex& cx, std::mt19937_64& rng) {
    auto rand_int = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    auto rand_poly = [&]() {
        Poly f(cx.m, cx.m);
        int nterms = rand_int(1, 3);
        for (int s = 0; s < nterms; ++s) {
            Poly::Exps e(static_cast<size_t>(1 + 2 * cx.m), 0);
            for (auto& x : e) x = rand_int(0, 1);
            int num = rand_int(-3, 3);
            if (num == 0) num = 1;
            f.add_term(e, rat(num, rand_int(1, 3)));
        }
        return f;
    };
    GradedElement x(cx.m, cx.m);
    int nterms = rand_int(1, 2);
    for (int s = 0; s < nterms; ++s) {
        std::map<Generator, int> mults;
        int nfac = rand_int(1, 3);
        for (int f = 0; f < nfac; ++f) {
            Generator g = antighost(rand_int(1, cx.m), rand_int(1, cx.K));
            if (g.odd())
                mults[g] = 1;
            else
                mults[g] += rand_int(1, 2);
        }
        GradedMonomial mono;
        for (const auto& [g, mult] : mults) mono.factors.emplace_back(g, mult);
        x.add(mono, rand_poly());
    }
    return x;
}

}  // namespace

NilpotencyReport check_nilpotency(const KTComplex& cx, int random_trials, std::uint64_t seed) {
    NilpotencyReport report;
    report.seed = seed;
    report.ok = true;
    for (int level = 1; level <= cx.K; ++level)
        for (int i = 1; i <= cx.m; ++i) {
            GradedElement g = element_from_generator(cx.m, cx.m, antighost(i, level));
            if (!kt_delta(cx, kt_delta(cx, g)).is_zero()) report.ok = false;
            ++report.generators_checked;
        }

    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < random_trials; ++trial) {
        GradedElement x = random_antighost_element(cx, rng);
        if (!kt_delta(cx, kt_delta(cx, x)).is_zero()) report.ok = false;
        ++report.random_checked;
    }
    return report;
}

namespace {

// Antighost monomials with sum of level*mult equal to k, levels bounded by K,
// in a fixed deterministic order.
void enum_monomials(int m, int K, int k, int pos, GradedMonomial& current, std::vector<GradedMonomial>& out) {
    if (k == 0) {
        out.push_back(current);
        return;
    }
    if (pos >= m * K) return;
    // Walk generators in their normal order (index-major) so the collected
    // factor lists are valid GradedMonomial keys.
    int index = pos / K + 1;
    int level = pos % K + 1;
    int max_mult = level % 2 == 1 ? 1 : k / level;
    if (level > k) max_mult = 0;
    for (int mult = 0; mult <= max_mult; ++mult) {
        if (mult > 0) current.factors.emplace_back(antighost(index, level), mult);
        enum_monomials(m, K, k - mult * level, pos + 1, current, out);
        if (mult > 0) current.factors.pop_back();
    }
}

std::vector<GradedMonomial> antighost_monomials(int m, int K, int k) {
    std::vector<GradedMonomial> out;
    GradedMonomial current;
    enum_monomials(m, K, k, 0, current, out);
    return out;
}

void enum_pexps(int m, int D, int var, Poly::Exps& current, std::vector<Poly::Exps>& out) {
    if (var == m) {
        out.push_back(current);
        return;
    }
    for (int e = 0; e <= D; ++e) {
        current[static_cast<size_t>(1 + m + var)] = e;
        enum_pexps(m, D - e, var + 1, current, out);
    }
    current[static_cast<size_t>(1 + m + var)] = 0;
}

// Momentum monomial exponent vectors of total degree at most D in the (m, m)
// signature.
std::vector<Poly::Exps> momentum_exps(int m, int D) {
    std::vector<Poly::Exps> out;
    Poly::Exps current(static_cast<size_t>(1 + 2 * m), 0);
    enum_pexps(m, D, 0, current, out);
    return out;
}

struct Basis {
    std::vector<std::pair<Poly::Exps, GradedMonomial>> elems;
    std::map<std::pair<Poly::Exps, GradedMonomial>, int> index;
    std::vector<int> pdegree;

    void build(int m, int K, int k, int D) {
        for (const auto& mono : antighost_monomials(m, K, k))
            for (const auto& e : momentum_exps(m, D)) {
                int deg = 0;
                for (size_t s = static_cast<size_t>(1 + m); s < e.size(); ++s) deg += e[s];
                index.emplace(std::make_pair(e, mono), static_cast<int>(elems.size()));
                elems.emplace_back(e, mono);
                pdegree.push_back(deg);
            }
    }
};

RMat delta_matrix(const KTComplex& cx, const Basis& domain, const Basis& target) {
    RMat mat(static_cast<int>(target.elems.size()), static_cast<int>(domain.elems.size()));
    for (size_t col = 0; col < domain.elems.size(); ++col) {
        const auto& [exps, mono] = domain.elems[col];
        Poly coeff(cx.m, cx.m);
        coeff.add_term(exps, 1);
        GradedElement x(cx.m, cx.m);
        x.add(mono, coeff);
        GradedElement dx = kt_delta(cx, x);
        for (const auto& [tmono, tpoly] : dx.terms)
            for (const auto& [te, tc] : tpoly.terms()) {
                for (size_t s = 0; s < static_cast<size_t>(1 + cx.m); ++s)
                    if (te[s] != 0)
                        throw SigmaError("fiberwise homology requires a (t, q)-constant projector");
                auto it = target.index.find(std::make_pair(te, tmono));
                if (it == target.index.end()) throw DimensionError("homology target basis is incomplete");
                mat.at(it->second, static_cast<int>(col)) += tc;
            }
    }
    return mat;
}

}  // namespace

HomologyReport homology(const KTComplex& cx, int k, int D) {
    if (k < 0 || D < 0) throw DimensionError("homology degree bounds must be nonnegative");
    if (k + 1 > cx.K)
        throw DimensionError("witness space exceeds the truncation; raise K beyond " + std::to_string(k));
    if (!cx.proj.is_constant())
        throw SigmaError("fiberwise homology requires a (t, q)-constant projector");

    HomologyReport report;
    report.k = k;
    report.D = D;

    Basis domain;
    domain.build(cx.m, cx.K, k, D);
    Basis below;
    if (k > 0) below.build(cx.m, cx.K, k - 1, D + 1);
    Basis witness;
    witness.build(cx.m, cx.K, k + 1, D);
    Basis ambient;
    ambient.build(cx.m, cx.K, k, D + 1);

    long rank_down = k > 0 ? rank(delta_matrix(cx, domain, below)) : 0;
    report.cycles = static_cast<long>(domain.elems.size()) - rank_down;

    RMat w = delta_matrix(cx, witness, ambient);
    long rank_w = rank(w);
    // Intersect the boundary image with the degree-<=D coordinate subspace.
    std::vector<int> bounded;
    for (size_t i = 0; i < ambient.elems.size(); ++i)
        if (ambient.pdegree[i] <= D) bounded.push_back(static_cast<int>(i));
    RMat aug(w.rows, w.cols + static_cast<int>(bounded.size()));
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j) aug.at(i, j) = w.at(i, j);
    for (size_t j = 0; j < bounded.size(); ++j) aug.at(bounded[j], w.cols + static_cast<int>(j)) = 1;
    long rank_aug = rank(aug);
    report.boundaries = rank_w + static_cast<long>(bounded.size()) - rank_aug;

    report.h_dim = report.cycles - report.boundaries;
    // k = 0: the R_i are homogeneous linear forms, so degree-<=D witnesses
    // exhaust the ideal at degree <= D and the count is exact. k >= 1: a
    // vanishing result is its own certificate; a nonzero one may still die
    // against witnesses beyond the degree bound.
    report.complete = k == 0 || report.h_dim == 0;
    return report;
}

GradedElement brst_charge(const KTComplex& cx) {
    GradedElement q(cx.m, cx.m);
    for (int level = 1; level <= cx.K; ++level)
        for (int i = 1; i <= cx.m; ++i) {
            GradedElement dg = kt_delta(cx, element_from_generator(cx.m, cx.m, antighost(i, level)));
            q += graded_mul(element_from_generator(cx.m, cx.m, ghost(i, level)), dg);
        }
    return q;
}

GradedElement super_bracket(const GradedElement& x, const GradedElement& y) {
    if (x.num_q != y.num_q || x.num_p != y.num_p) throw DimensionError("graded element signature mismatch");
    GradedElement even_part(x.num_q, x.num_p), odd_part(x.num_q, x.num_p);
    for (const auto& [mono, coeff] : x.terms) (mono.parity() ? odd_part : even_part).add(mono, coeff);

    std::set<std::pair<int, int>> pairs;  // (index, level)
    for (const auto* el : {&x, &y})
        for (const auto& [mono, coeff] : el->terms)
            for (const auto& [g, mult] : mono.factors) pairs.emplace(g.index, g.level);

    GradedElement out(x.num_q, x.num_p);
    for (const auto& [index, level] : pairs) {
        Generator gam = ghost(index, level);
        Generator chi = antighost(index, level);
        int eps = level % 2;
        for (int parity = 0; parity <= 1; ++parity) {
            const GradedElement& xp = parity ? odd_part : even_part;
            if (xp.is_zero()) continue;
            GradedElement t1 = graded_mul(left_derivative(xp, gam), left_derivative(y, chi));
            if (eps * (parity + 1) % 2) t1 = t1.scaled(-1);
            out += t1;
            GradedElement t2 = graded_mul(left_derivative(xp, chi), left_derivative(y, gam));
            if ((1 + eps + eps * (parity + 1)) % 2) t2 = t2.scaled(-1);
            out += t2;
        }
    }
    return out;
}

ChargeReport verify_charge(const KTComplex& cx, int random_trials, std::uint64_t seed) {
    ChargeReport report;
    report.ok = true;
    GradedElement q = brst_charge(cx);
    for (int level = 1; level <= cx.K; ++level)
        for (int i = 1; i <= cx.m; ++i) {
            GradedElement g = element_from_generator(cx.m, cx.m, antighost(i, level));
            if (!(super_bracket(q, g) == kt_delta(cx, g))) report.ok = false;
            ++report.generators_checked;
        }
    for (int i = 1; i <= cx.m; ++i) {
        GradedElement f = element_from_poly(Poly::variable(cx.m, cx.m, Var::p(i)));
        if (!super_bracket(q, f).is_zero()) report.ok = false;
        ++report.generators_checked;
    }
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < random_trials; ++trial) {
        GradedElement x = random_antighost_element(cx, rng);
        if (!(super_bracket(q, x) == kt_delta(cx, x))) report.ok = false;
        ++report.random_checked;
    }
    return report;
}

}  // namespace tdmech
