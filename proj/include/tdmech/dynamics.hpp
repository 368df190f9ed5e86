#pragma once

#include <iosfwd>
#include <vector>

#include "tdmech/hamiltonian.hpp"

namespace tdmech {

// Uniformly sampled phase-space curve; sample k sits at t0 + k*step.
struct Trajectory {
    int m = 0;
    double t0 = 0.0;
    double step = 0.0;
    std::vector<std::vector<double>> q;  // one vector of length m per sample
    std::vector<std::vector<double>> p;

    size_t samples() const { return q.size(); }
    double t_at(size_t k) const { return t0 + static_cast<double>(k) * step; }
};

// Classic fixed-step fourth-order Runge-Kutta on the Hamilton equations
// dq^i/dt = d hfun/dp_i, dp_i/dt = -d hfun/dq^i. Throws DivergenceError when
// the state leaves the finite range.
Trajectory integrate_hamilton(const HamiltonianForm& H, double t0, const std::vector<double>& q0,
                              const std::vector<double>& p0, double step, double t_end);

// Max over samples of the sup norm of the constraint functions R.
double constraint_drift(const Trajectory& traj, const SigmaSplit& split);

// Max residual of the Lagrange equations d_i L - d_t(dL/dv^i) = 0 along the
// curve, with velocities and the total time derivative taken by central
// differences. Needs at least five samples.
double lagrange_residual(const Trajectory& traj, const QuadraticModel& model);

struct SplitResiduals {
    double gauge = 0.0;     // || S(qdot) - Gamma along the curve ||_inf
    double momentum = 0.0;  // || sigma0 (a qdot + b) - sigma0 p ||_inf
};

SplitResiduals split_residuals(const Trajectory& traj, const QuadraticModel& model, const SigmaSplit& split,
                               const ReferenceFrame& frame);

struct ConstrainedCheck {
    double drift = 0.0;
    double momentum_equation = 0.0;  // pdot_i + d_i hfun residual
    double projected_velocity = 0.0; // sigma0 (a qdot + b) - sigma0 p residual
    double combined = 0.0;
};

// Residuals of the constrained Hamilton equation pair along a curve lying on
// the constraint space; throws NotApplicableError when the drift exceeds
// drift_tol.
ConstrainedCheck constrained_equation_check(const Trajectory& traj, const QuadraticModel& model,
                                            const SigmaSplit& split, const HamiltonianForm& H,
                                            double drift_tol = 1e-8);

// Header t,q1..qm,p1..pm, one row per sample, full-precision decimal floats.
void write_csv(const Trajectory& traj, std::ostream& os);

}  // namespace tdmech
