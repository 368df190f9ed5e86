#pragma once

#include <optional>
#include <vector>

#include "tdmech/model.hpp"

namespace tdmech {

// A splitting sigma = sigma0 + sigma1 for the degenerate fibre metric a:
//   a sigma0 a = a,   sigma0 a sigma0 = sigma0,   a sigma1 = 0 = sigma1 a.
// sigma0 is available symbolically (polynomial in (t, q)) whenever a is
// constant or a verified override was supplied; otherwise it is evaluated
// pointwise as the numeric Moore-Penrose pseudoinverse of a(t, q).
struct SigmaSplit {
    int m = 0;
    bool symbolic = false;
    PolyMatrix a;                        // copy of the model's a
    std::optional<PolyMatrix> sigma0;    // set iff symbolic
    PolyMatrix sigma1;
    double tol = 1e-9;                   // pointwise pseudoinverse tolerance

    DMat sigma0_at(double t, const std::vector<double>& q) const;
    DMat sigma_at(double t, const std::vector<double>& q) const;   // sigma0 + sigma1
    DMat proj_at(double t, const std::vector<double>& q) const;    // a sigma0

    // a sigma0 as a polynomial matrix; requires symbolic mode.
    PolyMatrix proj() const;
};

// Builds the splitting. sigma1 (optional) must satisfy a*sigma1 = sigma1*a = 0
// exactly; a sigma0 override must satisfy the splitting identities exactly.
// Both are polynomial matrices in the (m, 0) signature.
SigmaSplit build_sigma(const QuadraticModel& model, const PolyMatrix* sigma1 = nullptr,
                       const PolyMatrix* sigma0_override = nullptr, double tol = 1e-9);

// Gamma = -sigma0 * b + upsilon for a kernel offset upsilon (a*upsilon = 0,
// checked exactly); verifies a*Gamma + b = 0 exactly. Pointwise-mode splits
// are accepted only for b = 0.
ReferenceFrame solve_connection(const QuadraticModel& model, const SigmaSplit& split,
                                const std::vector<Poly>* upsilon = nullptr);

// Verifies a*gamma + b = 0 exactly for a user-supplied frame.
ReferenceFrame frame_from_gamma(const QuadraticModel& model, std::vector<Poly> gamma);

struct VelocitySplit {
    std::vector<double> S;  // kernel part
    std::vector<double> F;  // image part: sigma0 (a qdot + b)
};

VelocitySplit velocity_split(const SigmaSplit& split, const QuadraticModel& model, double t,
                             const std::vector<double>& q, const std::vector<double>& qdot);

struct MomentumSplit {
    std::vector<double> R;  // constraint part: (1 - a sigma0) p
    std::vector<double> P;  // projected part: (a sigma0) p
};

MomentumSplit momentum_split(const SigmaSplit& split, double t, const std::vector<double>& q,
                             const std::vector<double>& p);

// The constraint functions R_i evaluated at a phase point.
std::vector<double> constraint_values(const SigmaSplit& split, double t, const std::vector<double>& q,
                                      const std::vector<double>& p);

// R_i = p_i - (a sigma0)_i^k p_k as polynomials in the (m, m) signature;
// requires symbolic mode.
std::vector<Poly> constraint_polys(const SigmaSplit& split);

// c' = c - 1/2 b^T sigma0 b; requires symbolic mode.
Poly c_prime(const QuadraticModel& model, const SigmaSplit& split);

double c_prime_at(const QuadraticModel& model, const SigmaSplit& split, double t, const std::vector<double>& q);

}  // namespace tdmech
