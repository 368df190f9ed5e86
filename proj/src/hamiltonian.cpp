#include "tdmech/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tdmech/errors.hpp"

namespace tdmech {

namespace {

void check_phase_signature(const Poly& f) {
    if (f.num_q() != f.num_p()) throw DimensionError("phase-space polynomial must have num_q == num_p");
}

// All combinations of points_per_dim values per axis from [-range, range]^m.
std::vector<std::vector<double>> momentum_grid(int m, int points_per_dim, double range) {
    std::vector<std::vector<double>> grid;
    std::vector<int> idx(static_cast<size_t>(m), 0);
    while (true) {
        std::vector<double> pt(static_cast<size_t>(m));
        for (int d = 0; d < m; ++d)
            pt[static_cast<size_t>(d)] =
                points_per_dim == 1 ? 0.0 : -range + 2.0 * range * idx[static_cast<size_t>(d)] / (points_per_dim - 1);
        grid.push_back(std::move(pt));
        int d = m;
        while (d > 0) {
            --d;
            if (++idx[static_cast<size_t>(d)] < points_per_dim) break;
            idx[static_cast<size_t>(d)] = 0;
            if (d == 0) return grid;
        }
        if (m == 0) return grid;
    }
}

}  // namespace

Poly poisson_v(const Poly& f, const Poly& g) {
    check_phase_signature(f);
    check_phase_signature(g);
    if (f.num_q() != g.num_q()) throw DimensionError("bracket operands disagree on dimension");
    int m = f.num_q();
    Poly out(m, m);
    for (int i = 1; i <= m; ++i) {
        out += f.derivative(Var::p(i)) * g.derivative(Var::q(i));
        out -= g.derivative(Var::p(i)) * f.derivative(Var::q(i));
    }
    return out;
}

Poly poisson_extended(const Poly& f, const Poly& g) {
    if (f.num_p() != f.num_q() + 1 || g.num_p() != g.num_q() + 1 || f.num_q() != g.num_q())
        throw DimensionError("extended bracket needs the (m, m+1) signature");
    int m = f.num_q();
    Poly out(m, m + 1);
    for (int i = 1; i <= m; ++i) {
        out += f.derivative(Var::p(i)) * g.derivative(Var::q(i));
        out -= g.derivative(Var::p(i)) * f.derivative(Var::q(i));
    }
    out += f.derivative(Var::p(m + 1)) * g.derivative(Var::t());
    out -= g.derivative(Var::p(m + 1)) * f.derivative(Var::t());
    return out;
}

HamiltonianForm build_hamiltonian(const QuadraticModel& model, const SigmaSplit& split, const ReferenceFrame& frame) {
    check_model_shapes(model);
    if (!split.symbolic) throw SigmaError("building a Hamiltonian form requires a symbolic split");
    if (static_cast<int>(frame.gamma.size()) != model.m) throw DimensionError("frame must have m components");
    // Re-verify the frame equation against this model.
    auto residual = pmul_vec(model.a, frame.gamma);
    for (int i = 0; i < model.m; ++i)
        if (!(residual[static_cast<size_t>(i)] + model.b[static_cast<size_t>(i)]).is_zero())
            throw FrameError("frame fails a*gamma + b = 0 in component " + std::to_string(i + 1));

    int m = model.m;
    HamiltonianForm H;
    H.m = m;
    H.frame = frame;
    H.split = split;
    Poly h(m, m);
    for (int i = 1; i <= m; ++i)
        h += frame.gamma[static_cast<size_t>(i - 1)].with_num_p(m) * Poly::variable(m, m, Var::p(i));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Poly pp = Poly::variable(m, m, Var::p(i)) * Poly::variable(m, m, Var::p(j));
            h += split.sigma0->at(i - 1, j - 1).with_num_p(m).scaled(rat(1, 2)) * pp;
            h += split.sigma1.at(i - 1, j - 1).with_num_p(m) * pp;
        }
    h -= c_prime(model, split).with_num_p(m);
    H.hfun = std::move(h);
    return H;
}

std::vector<Poly> hamiltonian_vector_field(const HamiltonianForm& H) {
    std::vector<Poly> comps;
    for (int i = 1; i <= H.m; ++i) comps.push_back(H.hfun.derivative(Var::p(i)));
    for (int i = 1; i <= H.m; ++i) comps.push_back(-H.hfun.derivative(Var::q(i)));
    return comps;
}

Poly evolution(const Poly& f, const HamiltonianForm& H) { return f.derivative(Var::t()) + poisson_v(H.hfun, f); }

Poly extended_bracket(const Poly& f, const HamiltonianForm& H) {
    check_phase_signature(f);
    if (f.num_q() != H.m) throw DimensionError("extended_bracket operand dimension mismatch");
    Poly hstar = H.hfun.with_num_p(H.m + 1) + Poly::variable(H.m, H.m + 1, Var::p(H.m + 1));
    Poly r = poisson_extended(hstar, f.with_num_p(H.m + 1));
    return r.truncated_p(H.m);
}

Poly current(const VectorFieldTQ& u, const HamiltonianForm& H) {
    if (static_cast<int>(u.u.size()) != H.m) throw DimensionError("vector field dimension mismatch");
    int m = H.m;
    Poly j(m, m);
    for (int i = 1; i <= m; ++i)
        j += u.u[static_cast<size_t>(i - 1)].with_num_p(m) * Poly::variable(m, m, Var::p(i));
    j -= H.hfun.scaled(u.ut);
    return j;
}

VectorFieldTQ field_commutator(const VectorFieldTQ& u, const VectorFieldTQ& v) {
    if (u.u.size() != v.u.size()) throw DimensionError("vector field dimension mismatch");
    int m = static_cast<int>(u.u.size());
    VectorFieldTQ w;
    w.ut = 0;
    for (int i = 0; i < m; ++i) {
        Poly comp = v.u[static_cast<size_t>(i)].derivative(Var::t()).scaled(u.ut) -
                    u.u[static_cast<size_t>(i)].derivative(Var::t()).scaled(v.ut);
        for (int j = 1; j <= m; ++j) {
            comp += u.u[static_cast<size_t>(j - 1)] * v.u[static_cast<size_t>(i)].derivative(Var::q(j));
            comp -= v.u[static_cast<size_t>(j - 1)] * u.u[static_cast<size_t>(i)].derivative(Var::q(j));
        }
        w.u.push_back(std::move(comp));
    }
    return w;
}

Poly energy_function(const HamiltonianForm& H) {
    Poly e = H.hfun;
    for (int i = 1; i <= H.m; ++i)
        e -= H.frame.gamma[static_cast<size_t>(i - 1)].with_num_p(H.m) * Poly::variable(H.m, H.m, Var::p(i));
    return e;
}

AssociationReport check_association(const QuadraticModel& model, const SigmaSplit& split, const HamiltonianForm& H,
                                    bool weak, int points_per_dim, double p_range) {
    AssociationReport report;
    std::vector<Poly> dH;
    for (int i = 1; i <= H.m; ++i) dH.push_back(H.hfun.derivative(Var::p(i)));
    auto tq_grid = model_grid(model, points_per_dim);
    auto p_grid = momentum_grid(model.m, points_per_dim, p_range);
    for (const auto& tq : tq_grid) {
        double t = tq[0];
        std::vector<double> q(tq.begin() + 1, tq.end());
        for (const auto& ptilde : p_grid) {
            std::vector<double> p = ptilde;
            if (weak) p = dmul_vec(split.proj_at(t, q), ptilde);
            std::vector<double> x = tq;
            x.insert(x.end(), p.begin(), p.end());
            std::vector<double> v(static_cast<size_t>(model.m));
            for (int i = 0; i < model.m; ++i) v[static_cast<size_t>(i)] = dH[static_cast<size_t>(i)].eval(x);
            double pv = 0.0;
            for (int i = 0; i < model.m; ++i) pv += p[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
            double residual = H.hfun.eval(x) - (pv - lagrangian_eval(model, t, q, v));
            report.max_residual = std::max(report.max_residual, std::abs(residual));
            ++report.points;
        }
    }
    return report;
}

ConstraintSet constraint_set_from_split(const SigmaSplit& split) {
    ConstraintSet set;
    set.canonical = true;
    for (auto& r : constraint_polys(split))
        if (!r.is_zero()) set.gens.push_back(std::move(r));
    if (set.gens.empty()) return set;
    // Exact linear dependencies among the kept generators: nullspace of the
    // matrix whose columns are generator coefficient vectors.
    std::map<Poly::Exps, int> monomial_index;
    for (const auto& g : set.gens)
        for (const auto& [e, c] : g.terms())
            monomial_index.emplace(e, static_cast<int>(monomial_index.size()));
    RMat m(static_cast<int>(monomial_index.size()), static_cast<int>(set.gens.size()));
    for (size_t j = 0; j < set.gens.size(); ++j)
        for (const auto& [e, c] : set.gens[j].terms()) m.at(monomial_index.at(e), static_cast<int>(j)) = c;
    for (auto& v : nullspace(m)) set.relations.push_back(std::move(v));
    return set;
}

Poly restrict_to_constraint_space(const Poly& f, const SigmaSplit& split) {
    check_phase_signature(f);
    if (f.num_q() != split.m) throw DimensionError("restriction operand dimension mismatch");
    PolyMatrix proj = split.proj().with_num_p(split.m);
    std::map<Var, Poly> repl;
    for (int i = 1; i <= split.m; ++i) {
        Poly img(split.m, split.m);
        for (int k = 1; k <= split.m; ++k)
            img += proj.at(i - 1, k - 1) * Poly::variable(split.m, split.m, Var::p(k));
        repl.emplace(Var::p(i), std::move(img));
    }
    return f.substitute(repl);
}

IdealReducer::IdealReducer(const std::vector<Poly>& gens) {
    for (const auto& g : gens) {
        Poly f = reduce(g);
        if (f.is_zero()) continue;
        if (f.is_constant()) {
            unsolved_.push_back(f);
            continue;
        }
        // Look for a pivot variable v with f = c*v + rest, c a nonzero
        // rational, rest free of v. Prefer momenta, then coordinates, then t.
        bool solved = false;
        std::vector<Var> candidates;
        for (int i = f.num_p(); i >= 1; --i) candidates.push_back(Var::p(i));
        for (int i = f.num_q(); i >= 1; --i) candidates.push_back(Var::q(i));
        candidates.push_back(Var::t());
        for (Var v : candidates) {
            int s = f.slot(v);
            Rational coeff = 0;
            bool usable = true;
            for (const auto& [e, c] : f.terms()) {
                if (e[static_cast<size_t>(s)] == 0) continue;
                bool bare = e[static_cast<size_t>(s)] == 1;
                for (size_t k = 0; bare && k < e.size(); ++k)
                    if (k != static_cast<size_t>(s) && e[k] != 0) bare = false;
                if (!bare) {
                    usable = false;
                    break;
                }
                coeff = c;
            }
            if (!usable || coeff == 0) continue;
            Poly rest = f - Poly::variable(f.num_q(), f.num_p(), v).scaled(coeff);
            Poly image = rest.scaled(-1 / coeff);
            for (auto& [w, r] : subst_) r = r.substitute({{v, image}});
            subst_.emplace(v, std::move(image));
            solved = true;
            break;
        }
        if (!solved) unsolved_.push_back(f);
    }
}

Poly IdealReducer::reduce(const Poly& f) const {
    if (subst_.empty()) return f;
    return f.substitute(subst_);
}

namespace {

bool reduces_to_nonzero_constant(const IdealReducer& reducer) {
    for (const auto& g : reducer.unsolved())
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

}  // namespace

ClassifyReport classify_constraints(const ConstraintSet& set, const SigmaSplit& split, const QuadraticModel& model,
                                    bool sampled, int points_per_dim, double tol, double p_range) {
    if (set.gens.empty()) throw ConstraintError("empty constraint set");
    for (const auto& g : set.gens)
        if (g.num_q() != split.m || g.num_p() != split.m)
            throw DimensionError("constraint generators must use the (m, m) signature");

    ClassifyReport report;
    report.sampled = sampled;
    size_t n = set.gens.size();
    report.bracket_table.assign(n, std::vector<Poly>(n, Poly(split.m, split.m)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) report.bracket_table[i][j] = poisson_v(set.gens[i], set.gens[j]);

    std::function<bool(const Poly&)> vanishes;
    IdealReducer reducer(set.gens);
    if (sampled) {
        if (reduces_to_nonzero_constant(reducer))
            throw ConstraintError("constraint set is inconsistent (a generator reduces to a nonzero constant)");
        auto tq_grid = model_grid(model, points_per_dim);
        auto p_grid = momentum_grid(split.m, points_per_dim, p_range);
        vanishes = [&, tq_grid, p_grid](const Poly& f) {
            for (const auto& tq : tq_grid) {
                double t = tq[0];
                std::vector<double> q(tq.begin() + 1, tq.end());
                DMat proj = split.proj_at(t, q);
                for (const auto& ptilde : p_grid) {
                    std::vector<double> x = tq;
                    std::vector<double> p = dmul_vec(proj, ptilde);
                    x.insert(x.end(), p.begin(), p.end());
                    if (std::abs(f.eval(x)) > tol) return false;
                }
            }
            return true;
        };
    } else {
        if (!split.symbolic && set.canonical)
            throw SigmaError("symbolic classification of the canonical set requires a symbolic split");
        if (reduces_to_nonzero_constant(reducer))
            throw ConstraintError("constraint set is inconsistent (a generator reduces to a nonzero constant)");
        if (set.canonical) {
            vanishes = [&](const Poly& f) { return restrict_to_constraint_space(f, split).is_zero(); };
        } else {
            vanishes = [&](const Poly& f) { return reducer.in_ideal(f); };
        }
    }

    for (size_t i = 0; i < n; ++i) {
        bool first = true;
        for (size_t j = 0; j < n && first; ++j) first = vanishes(report.bracket_table[i][j]);
        report.classes.push_back(first ? ConstraintClass::First : ConstraintClass::Second);
    }
    return report;
}

AlgorithmResult constraint_algorithm(const HamiltonianForm& H, const ConstraintSet& initial, int max_rounds) {
    AlgorithmResult result;
    std::vector<Poly> current;
    for (const auto& g : initial.gens)
        if (!g.is_zero()) current.push_back(g.normalized());
    if (current.empty()) {
        result.closed = true;
        return result;
    }

    for (int round = 0; round < max_rounds; ++round) {
        IdealReducer reducer(current);
        if (reduces_to_nonzero_constant(reducer)) {
            result.inconsistent = true;
            break;
        }
        std::vector<Poly> added;
        for (const auto& f : current) {
            Poly g = reducer.reduce(evolution(f, H));
            if (g.is_zero()) continue;
            if (g.is_constant()) {
                result.inconsistent = true;
                break;
            }
            Poly gn = g.normalized();
            auto same = [&gn](const Poly& h) { return h == gn; };
            if (std::any_of(current.begin(), current.end(), same) || std::any_of(added.begin(), added.end(), same))
                continue;
            added.push_back(std::move(gn));
        }
        if (result.inconsistent) break;
        if (added.empty()) {
            result.closed = true;
            break;
        }
        current.insert(current.end(), added.begin(), added.end());
        result.adjoined_per_round.push_back(std::move(added));
    }
    result.final_set.gens = std::move(current);
    result.final_set.canonical = false;
    return result;
}

}  // namespace tdmech
