#include "tdmech/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "tdmech/errors.hpp"

namespace tdmech {

namespace {

std::vector<double> phase_point(double t, const std::vector<double>& q, const std::vector<double>& p) {
    std::vector<double> x;
    x.reserve(1 + q.size() + p.size());
    x.push_back(t);
    x.insert(x.end(), q.begin(), q.end());
    x.insert(x.end(), p.begin(), p.end());
    return x;
}

bool finite_state(const std::vector<double>& q, const std::vector<double>& p) {
    for (double x : q)
        if (!std::isfinite(x)) return false;
    for (double x : p)
        if (!std::isfinite(x)) return false;
    return true;
}

// Central-difference velocities at the interior samples.
std::vector<double> central_diff(const std::vector<std::vector<double>>& y, size_t k, double step) {
    size_t m = y[k].size();
    std::vector<double> d(m);
    for (size_t i = 0; i < m; ++i) d[i] = (y[k + 1][i] - y[k - 1][i]) / (2.0 * step);
    return d;
}

}  // namespace

Trajectory integrate_hamilton(const HamiltonianForm& H, double t0, const std::vector<double>& q0,
                              const std::vector<double>& p0, double step, double t_end) {
    int m = H.m;
    if (static_cast<int>(q0.size()) != m || static_cast<int>(p0.size()) != m)
        throw DimensionError("initial state dimension mismatch");
    if (!(step > 0.0)) throw DimensionError("step must be positive");
    if (t_end < t0) throw DimensionError("t_end must not precede t0");

    std::vector<Poly> field = hamiltonian_vector_field(H);
    auto deriv = [&](double t, const std::vector<double>& q, const std::vector<double>& p) {
        std::vector<double> x = phase_point(t, q, p);
        std::vector<double> dq(static_cast<size_t>(m)), dp(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            dq[static_cast<size_t>(i)] = field[static_cast<size_t>(i)].eval(x);
            dp[static_cast<size_t>(i)] = field[static_cast<size_t>(m + i)].eval(x);
        }
        return std::pair(dq, dp);
    };

    Trajectory traj;
    traj.m = m;
    traj.t0 = t0;
    traj.step = step;
    traj.q.push_back(q0);
    traj.p.push_back(p0);
    long n = std::lround((t_end - t0) / step);
    std::vector<double> q = q0, p = p0;
    for (long k = 0; k < n; ++k) {
        double t = t0 + static_cast<double>(k) * step;
        auto [k1q, k1p] = deriv(t, q, p);
        std::vector<double> q2(q), p2(p);
        for (int i = 0; i < m; ++i) {
            q2[static_cast<size_t>(i)] += 0.5 * step * k1q[static_cast<size_t>(i)];
            p2[static_cast<size_t>(i)] += 0.5 * step * k1p[static_cast<size_t>(i)];
        }
        auto [k2q, k2p] = deriv(t + 0.5 * step, q2, p2);
        std::vector<double> q3(q), p3(p);
        for (int i = 0; i < m; ++i) {
            q3[static_cast<size_t>(i)] += 0.5 * step * k2q[static_cast<size_t>(i)];
            p3[static_cast<size_t>(i)] += 0.5 * step * k2p[static_cast<size_t>(i)];
        }
        auto [k3q, k3p] = deriv(t + 0.5 * step, q3, p3);
        std::vector<double> q4(q), p4(p);
        for (int i = 0; i < m; ++i) {
            q4[static_cast<size_t>(i)] += step * k3q[static_cast<size_t>(i)];
            p4[static_cast<size_t>(i)] += step * k3p[static_cast<size_t>(i)];
        }
        auto [k4q, k4p] = deriv(t + step, q4, p4);
        for (int i = 0; i < m; ++i) {
            size_t s = static_cast<size_t>(i);
            q[s] += step / 6.0 * (k1q[s] + 2.0 * k2q[s] + 2.0 * k3q[s] + k4q[s]);
            p[s] += step / 6.0 * (k1p[s] + 2.0 * k2p[s] + 2.0 * k3p[s] + k4p[s]);
        }
        if (!finite_state(q, p))
            throw DivergenceError("integration diverged at t = " + std::to_string(t + step), traj.t_at(k),
                                  traj.q.back(), traj.p.back());
        traj.q.push_back(q);
        traj.p.push_back(p);
    }
    return traj;
}

double constraint_drift(const Trajectory& traj, const SigmaSplit& split) {
    double drift = 0.0;
    for (size_t k = 0; k < traj.samples(); ++k) {
        auto r = constraint_values(split, traj.t_at(k), traj.q[k], traj.p[k]);
        for (double x : r) drift = std::max(drift, std::abs(x));
    }
    return drift;
}

double lagrange_residual(const Trajectory& traj, const QuadraticModel& model) {
    size_t n = traj.samples();
    if (n < 5) throw DimensionError("lagrange_residual needs at least five samples");
    int m = model.m;

    // dL/dq^i = 1/2 (d_i a_jk) v^j v^k + (d_i b_j) v^j + d_i c at (t, q, v).
    std::vector<PolyMatrix> da(static_cast<size_t>(m));
    std::vector<std::vector<Poly>> db(static_cast<size_t>(m));
    std::vector<Poly> dc(static_cast<size_t>(m));
    for (int i = 1; i <= m; ++i) {
        PolyMatrix d(m, m, m, 0);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) d.at(r, c) = model.a.at(r, c).derivative(Var::q(i));
        da[static_cast<size_t>(i - 1)] = std::move(d);
        std::vector<Poly> dbi;
        for (int j = 0; j < m; ++j) dbi.push_back(model.b[static_cast<size_t>(j)].derivative(Var::q(i)));
        db[static_cast<size_t>(i - 1)] = std::move(dbi);
        dc[static_cast<size_t>(i - 1)] = model.c.derivative(Var::q(i));
    }

    // Conjugate momenta pi_i = a_ij v^j + b_i at interior samples.
    std::vector<std::vector<double>> pi(n);
    for (size_t k = 1; k + 1 < n; ++k)
        pi[k] = legendre_map(model, traj.t_at(k), traj.q[k], central_diff(traj.q, k, traj.step));

    double residual = 0.0;
    for (size_t k = 2; k + 2 < n; ++k) {
        double t = traj.t_at(k);
        std::vector<double> v = central_diff(traj.q, k, traj.step);
        std::vector<double> pt;
        pt.push_back(t);
        pt.insert(pt.end(), traj.q[k].begin(), traj.q[k].end());
        for (int i = 0; i < m; ++i) {
            size_t si = static_cast<size_t>(i);
            DMat dA = da[si].eval(pt);
            double dl = dc[si].eval(pt);
            for (int j = 0; j < m; ++j) {
                dl += db[si][static_cast<size_t>(j)].eval(pt) * v[static_cast<size_t>(j)];
                for (int l = 0; l < m; ++l)
                    dl += 0.5 * dA.at(j, l) * v[static_cast<size_t>(j)] * v[static_cast<size_t>(l)];
            }
            double dpi = (pi[k + 1][si] - pi[k - 1][si]) / (2.0 * traj.step);
            residual = std::max(residual, std::abs(dl - dpi));
        }
    }
    return residual;
}

SplitResiduals split_residuals(const Trajectory& traj, const QuadraticModel& model, const SigmaSplit& split,
                               const ReferenceFrame& frame) {
    size_t n = traj.samples();
    if (n < 3) throw DimensionError("split_residuals needs at least three samples");
    SplitResiduals out;
    for (size_t k = 1; k + 1 < n; ++k) {
        double t = traj.t_at(k);
        std::vector<double> v = central_diff(traj.q, k, traj.step);
        VelocitySplit vs = velocity_split(split, model, t, traj.q[k], v);
        std::vector<double> pt;
        pt.push_back(t);
        pt.insert(pt.end(), traj.q[k].begin(), traj.q[k].end());
        std::vector<double> s0p = dmul_vec(split.sigma0_at(t, traj.q[k]), traj.p[k]);
        for (int i = 0; i < model.m; ++i) {
            size_t si = static_cast<size_t>(i);
            out.gauge = std::max(out.gauge, std::abs(vs.S[si] - frame.gamma[si].eval(pt)));
            out.momentum = std::max(out.momentum, std::abs(vs.F[si] - s0p[si]));
        }
    }
    return out;
}

ConstrainedCheck constrained_equation_check(const Trajectory& traj, const QuadraticModel& model,
                                            const SigmaSplit& split, const HamiltonianForm& H, double drift_tol) {
    size_t n = traj.samples();
    if (n < 3) throw DimensionError("constrained_equation_check needs at least three samples");
    ConstrainedCheck out;
    out.drift = constraint_drift(traj, split);
    if (out.drift > drift_tol)
        throw NotApplicableError("curve leaves the constraint space (drift " + std::to_string(out.drift) + ")");

    std::vector<Poly> dq_hfun;
    for (int i = 1; i <= model.m; ++i) dq_hfun.push_back(H.hfun.derivative(Var::q(i)));

    for (size_t k = 1; k + 1 < n; ++k) {
        double t = traj.t_at(k);
        std::vector<double> qdot = central_diff(traj.q, k, traj.step);
        std::vector<double> pdot = central_diff(traj.p, k, traj.step);
        std::vector<double> x = phase_point(t, traj.q[k], traj.p[k]);
        VelocitySplit vs = velocity_split(split, model, t, traj.q[k], qdot);
        std::vector<double> s0p = dmul_vec(split.sigma0_at(t, traj.q[k]), traj.p[k]);
        for (int i = 0; i < model.m; ++i) {
            size_t si = static_cast<size_t>(i);
            out.momentum_equation =
                std::max(out.momentum_equation, std::abs(pdot[si] + dq_hfun[si].eval(x)));
            out.projected_velocity = std::max(out.projected_velocity, std::abs(vs.F[si] - s0p[si]));
        }
    }
    out.combined = std::max(out.momentum_equation, out.projected_velocity);
    return out;
}

void write_csv(const Trajectory& traj, std::ostream& os) {
    os << "t";
    for (int i = 1; i <= traj.m; ++i) os << ",q" << i;
    for (int i = 1; i <= traj.m; ++i) os << ",p" << i;
    os << "\n";
    char buf[64];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
    };
    for (size_t k = 0; k < traj.samples(); ++k) {
        put(traj.t_at(k));
        for (int i = 0; i < traj.m; ++i) {
            os << ",";
            put(traj.q[k][static_cast<size_t>(i)]);
        }
        for (int i = 0; i < traj.m; ++i) {
            os << ",";
            put(traj.p[k][static_cast<size_t>(i)]);
        }
        os << "\n";
    }
}

}  // namespace tdmech
