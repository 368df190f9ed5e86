#pragma once

#include <cstdint>
#include <vector>

#include "tdmech/graded.hpp"
#include "tdmech/split.hpp"

namespace tdmech {

// Antighost tower over a symbolic splitting, truncated at level K. Writing
// P = a sigma0, the differential acts on generators as
//   delta(c_i^(1))    = R_i = ((1 - P) p)_i,
//   delta(c_i^(2r))   = P_i^k c_k^(2r-1),
//   delta(c_i^(2r+1)) = (1 - P)_i^k c_k^(2r),  r >= 1,
// extends as an odd antiderivation and annihilates phase-space functions.
struct KTComplex {
    int m = 0;
    int K = 4;
    SigmaSplit split;
    PolyMatrix proj;            // a sigma0 promoted to the (m, m) signature
    std::vector<Poly> rconstr;  // the R_i
};

KTComplex make_kt(const QuadraticModel& model, const SigmaSplit& split, int K = 4);

// x may use only antighost generators with level <= K.
GradedElement kt_delta(const KTComplex& cx, const GradedElement& x);

struct NilpotencyReport {
    bool ok = false;
    int generators_checked = 0;
    int random_checked = 0;
    std::uint64_t seed = 0;
};

// delta^2 = 0 exactly on every generator and on seeded random elements.
NilpotencyReport check_nilpotency(const KTComplex& cx, int random_trials = 25, std::uint64_t seed = 0);

struct HomologyReport {
    int k = 0;
    int D = 0;
    long cycles = 0;      // dim ker delta_k at coefficient degree <= D
    long boundaries = 0;  // dim of the boundary space meeting that degree bound
    long h_dim = 0;
    bool complete = false;  // the vanishing claim was certified within the bounds
};

// Fiberwise homology at antighost number k with momentum-degree bound D on
// coefficients; requires a sigma0 constant in (t, q) and k + 1 <= K so the
// witness space is available.
HomologyReport homology(const KTComplex& cx, int k, int D);

// Q = sum over levels l <= K and indices i of cb^i_(l) * delta(c_i^(l)).
GradedElement brst_charge(const KTComplex& cx);

// Even super-Poisson bracket pairing cb^i_(k) with c_i^(k); the vertical-
// extension part over dotted variables vanishes identically for the elements
// this library constructs and is therefore not represented.
GradedElement super_bracket(const GradedElement& x, const GradedElement& y);

struct ChargeReport {
    bool ok = false;
    int generators_checked = 0;
    int random_checked = 0;
};

// {Q, g} = delta(g) for every antighost generator with level <= K and for
// seeded random antighost products, and {Q, f} = 0 for phase-space functions.
ChargeReport verify_charge(const KTComplex& cx, int random_trials = 10, std::uint64_t seed = 0);

}  // namespace tdmech
