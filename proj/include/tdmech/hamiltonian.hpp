#pragma once

#include <string>
#include <vector>

#include "tdmech/split.hpp"

namespace tdmech {

// Vertical Poisson bracket {f, g} = d^i f d_i g - d^i g d_i f, where d^i is
// the p_i-derivative and d_i the q^i-derivative. Requires the square
// signature num_q == num_p.
Poly poisson_v(const Poly& f, const Poly& g);

// Canonical bracket on the extended signature (m, m+1) whose extra momentum
// slot p_{m+1} is conjugate to t.
Poly poisson_extended(const Poly& f, const Poly& g);

// H = p_i dq^i - hfun dt built from a frame and a splitting:
//   hfun = p_i Gamma^i + 1/2 sigma0^ij p_i p_j + sigma1^ij p_i p_j - c'.
struct HamiltonianForm {
    int m = 0;
    ReferenceFrame frame;
    SigmaSplit split;
    Poly hfun;  // (m, m) signature, degree <= 2 in p
};

HamiltonianForm build_hamiltonian(const QuadraticModel& model, const SigmaSplit& split, const ReferenceFrame& frame);

// Components of the Hamilton vector field: dq^i/dt then dp_i/dt, 2m entries.
std::vector<Poly> hamiltonian_vector_field(const HamiltonianForm& H);

// Evolution operator: df/dt along the Hamilton flow = d_t f + {hfun, f}.
Poly evolution(const Poly& f, const HamiltonianForm& H);

// Same operator realized through the extended bracket {p_{m+1} + hfun, f} on
// the extended signature; agrees with evolution identically.
Poly extended_bracket(const Poly& f, const HamiltonianForm& H);

// Projectable vector field u = ut d_t + u^i(t, q) d_i with constant ut.
struct VectorFieldTQ {
    Rational ut = 0;
    std::vector<Poly> u;  // (m, 0) signature
};

// Symmetry current J_u = p_i u^i - ut * hfun.
Poly current(const VectorFieldTQ& u, const HamiltonianForm& H);

// Commutator [u, u'] of two vertical/projectable fields (component-wise,
// time components constant so [u,u']^t = 0).
VectorFieldTQ field_commutator(const VectorFieldTQ& u, const VectorFieldTQ& v);

// Energy function relative to the frame of H: hfun - p_i Gamma^i.
Poly energy_function(const HamiltonianForm& H);

struct AssociationReport {
    double max_residual = 0.0;
    int points = 0;
};

// Checks hfun = p_i d^i hfun - L(t, q, d^j hfun) on sample points. In weak
// mode momenta are restricted to the constraint space via p -> (a sigma0) p;
// in full mode raw momentum grid points are used. Momenta are sampled from
// [-p_range, p_range]^m with points_per_dim values per axis.
AssociationReport check_association(const QuadraticModel& model, const SigmaSplit& split, const HamiltonianForm& H,
                                    bool weak, int points_per_dim = 3, double p_range = 1.0);

struct ConstraintSet {
    std::vector<Poly> gens;  // (m, m) signature
    bool canonical = false;  // built from a splitting's R functions
    // Exact linear dependencies among the generators (empty coefficients list
    // when none were searched for / found).
    std::vector<std::vector<Rational>> relations;
};

// The canonical set {R_i}, dropping identically zero components; records the
// discovered linear dependencies among the kept generators.
ConstraintSet constraint_set_from_split(const SigmaSplit& split);

// Restriction to the constraint space: substitute p -> (a sigma0) p.
// Requires a symbolic split. Vanishing of the result is membership in the
// ideal of functions vanishing on the constraint space.
Poly restrict_to_constraint_space(const Poly& f, const SigmaSplit& split);

// Reduction modulo the generators of a set by triangular linear elimination:
// generators linear in some variable with constant coefficient are solved and
// substituted. Exact for momentum/coordinate-linear generator sets.
class IdealReducer {
  public:
    explicit IdealReducer(const std::vector<Poly>& gens);
    Poly reduce(const Poly& f) const;
    bool in_ideal(const Poly& f) const { return reduce(f).is_zero(); }
    // Generators that could not be used as pivots (reduction is then only a
    // sufficient membership test).
    const std::vector<Poly>& unsolved() const { return unsolved_; }

  private:
    std::map<Var, Poly> subst_;
    std::vector<Poly> unsolved_;
};

enum class ConstraintClass { First, Second };

struct ClassifyReport {
    std::vector<ConstraintClass> classes;
    std::vector<std::vector<Poly>> bracket_table;
    bool sampled = false;
};

// Tags each generator first class iff its bracket with every generator lies
// in the set's ideal. Symbolic mode decides membership exactly (projector
// substitution for canonical sets, triangular reduction otherwise); sampled
// mode tests vanishing on constraint-space sample points against tol.
ClassifyReport classify_constraints(const ConstraintSet& set, const SigmaSplit& split, const QuadraticModel& model,
                                    bool sampled = false, int points_per_dim = 3, double tol = 1e-10,
                                    double p_range = 1.0);

struct AlgorithmResult {
    ConstraintSet final_set;
    bool closed = false;
    bool inconsistent = false;
    std::vector<std::vector<Poly>> adjoined_per_round;
};

// Adjoins evolution(f, H) for generators f whose flow leaves the current
// ideal, until closure or max_rounds.
AlgorithmResult constraint_algorithm(const HamiltonianForm& H, const ConstraintSet& initial, int max_rounds = 10);

}  // namespace tdmech
