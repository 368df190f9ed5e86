#include "tdmech/split.hpp"

#include "tdmech/errors.hpp"

namespace tdmech {

namespace {

std::vector<double> tq_point(double t, const std::vector<double>& q) {
    std::vector<double> pt;
    pt.reserve(q.size() + 1);
    pt.push_back(t);
    pt.insert(pt.end(), q.begin(), q.end());
    return pt;
}

void check_tq_matrix(const PolyMatrix& mtx, int m, const char* what) {
    if (mtx.rows != m || mtx.cols != m) throw DimensionError(std::string(what) + " must be m x m");
    for (const auto& p : mtx.e)
        if (p.num_q() != m || p.num_p() != 0)
            throw DimensionError(std::string(what) + " entries must use the (t, q) signature");
}

}  // namespace

DMat SigmaSplit::sigma0_at(double t, const std::vector<double>& q) const {
    auto pt = tq_point(t, q);
    if (symbolic) return sigma0->eval(pt);
    return sym_pinv(a.eval(pt), tol);
}

DMat SigmaSplit::sigma_at(double t, const std::vector<double>& q) const {
    DMat s = sigma0_at(t, q);
    DMat s1 = sigma1.eval(tq_point(t, q));
    for (size_t i = 0; i < s.e.size(); ++i) s.e[i] += s1.e[i];
    return s;
}

DMat SigmaSplit::proj_at(double t, const std::vector<double>& q) const {
    auto pt = tq_point(t, q);
    return dmul(a.eval(pt), sigma0_at(t, q));
}

PolyMatrix SigmaSplit::proj() const {
    if (!symbolic) throw SigmaError("projector a*sigma0 is only polynomial for symbolic splits");
    return pmul(a, *sigma0);
}

SigmaSplit build_sigma(const QuadraticModel& model, const PolyMatrix* sigma1, const PolyMatrix* sigma0_override,
                       double tol) {
    check_model_shapes(model);
    SigmaSplit split;
    split.m = model.m;
    split.a = model.a;
    split.tol = tol;

    if (sigma1) {
        check_tq_matrix(*sigma1, model.m, "sigma1");
        if (!pmul(model.a, *sigma1).is_zero() || !pmul(*sigma1, model.a).is_zero())
            throw SigmaError("sigma1 must satisfy a*sigma1 = 0 = sigma1*a identically");
        split.sigma1 = *sigma1;
    } else {
        split.sigma1 = PolyMatrix(model.m, model.m, model.m, 0);
    }

    if (sigma0_override) {
        check_tq_matrix(*sigma0_override, model.m, "sigma0 override");
        const PolyMatrix& s0 = *sigma0_override;
        if (!(pmul(pmul(model.a, s0), model.a) == model.a))
            throw SigmaError("sigma0 override fails a*sigma0*a = a");
        if (!(pmul(pmul(s0, model.a), s0) == s0))
            throw SigmaError("sigma0 override fails sigma0*a*sigma0 = sigma0");
        split.sigma0 = s0;
        split.symbolic = true;
    } else if (model.a.is_constant()) {
        RMat A = model.a.to_rmat();
        RMat s0 = pinv_exact(A);
        // pinv_exact of a symmetric matrix satisfies these by construction;
        // keep the checks as a guard on the exact route.
        if (!(rmul(rmul(A, s0), A) == A) || !(rmul(rmul(s0, A), s0) == s0) || !s0.is_symmetric())
            throw SigmaError("exact pseudoinverse failed its defining identities");
        split.sigma0 = PolyMatrix::from_rmat(s0, model.m, 0);
        split.symbolic = true;
    }
    return split;
}

ReferenceFrame solve_connection(const QuadraticModel& model, const SigmaSplit& split,
                                const std::vector<Poly>* upsilon) {
    std::vector<Poly> ups(static_cast<size_t>(model.m), Poly(model.m, 0));
    if (upsilon) {
        if (static_cast<int>(upsilon->size()) != model.m) throw DimensionError("upsilon must have m components");
        for (const auto& p : *upsilon)
            if (p.num_q() != model.m || p.num_p() != 0)
                throw DimensionError("upsilon entries must use the (t, q) signature");
        ups = *upsilon;
        for (const auto& comp : pmul_vec(model.a, ups))
            if (!comp.is_zero()) throw OffsetError("upsilon must satisfy a*upsilon = 0 identically");
    }
    std::vector<Poly> gamma;
    if (split.symbolic) {
        gamma = pmul_vec(*split.sigma0, model.b);
        for (int i = 0; i < model.m; ++i)
            gamma[static_cast<size_t>(i)] = -gamma[static_cast<size_t>(i)] + ups[static_cast<size_t>(i)];
    } else {
        for (const auto& bi : model.b)
            if (!bi.is_zero())
                throw FrameError("pointwise splits admit solve_connection only for b = 0; "
                                 "supply the frame directly via frame_from_gamma");
        gamma = ups;
    }
    return frame_from_gamma(model, std::move(gamma));
}

ReferenceFrame frame_from_gamma(const QuadraticModel& model, std::vector<Poly> gamma) {
    if (static_cast<int>(gamma.size()) != model.m) throw DimensionError("gamma must have m components");
    for (const auto& p : gamma)
        if (p.num_q() != model.m || p.num_p() != 0)
            throw DimensionError("gamma entries must use the (t, q) signature");
    auto residual = pmul_vec(model.a, gamma);
    for (int i = 0; i < model.m; ++i) {
        residual[static_cast<size_t>(i)] += model.b[static_cast<size_t>(i)];
        if (!residual[static_cast<size_t>(i)].is_zero())
            throw FrameError("frame fails a*gamma + b = 0 in component " + std::to_string(i + 1));
    }
    return ReferenceFrame{std::move(gamma)};
}

VelocitySplit velocity_split(const SigmaSplit& split, const QuadraticModel& model, double t,
                             const std::vector<double>& q, const std::vector<double>& qdot) {
    std::vector<double> p = legendre_map(model, t, q, qdot);
    VelocitySplit out;
    out.F = dmul_vec(split.sigma0_at(t, q), p);
    out.S.resize(qdot.size());
    for (size_t i = 0; i < qdot.size(); ++i) out.S[i] = qdot[i] - out.F[i];
    return out;
}

MomentumSplit momentum_split(const SigmaSplit& split, double t, const std::vector<double>& q,
                             const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != split.m) throw DimensionError("momentum dimension mismatch");
    MomentumSplit out;
    out.P = dmul_vec(split.proj_at(t, q), p);
    out.R.resize(p.size());
    for (size_t i = 0; i < p.size(); ++i) out.R[i] = p[i] - out.P[i];
    return out;
}

std::vector<double> constraint_values(const SigmaSplit& split, double t, const std::vector<double>& q,
                                      const std::vector<double>& p) {
    return momentum_split(split, t, q, p).R;
}

std::vector<Poly> constraint_polys(const SigmaSplit& split) {
    if (!split.symbolic) throw SigmaError("constraint polynomials require a symbolic split");
    PolyMatrix proj = split.proj().with_num_p(split.m);
    std::vector<Poly> out;
    for (int i = 0; i < split.m; ++i) {
        Poly r = Poly::variable(split.m, split.m, Var::p(i + 1));
        for (int k = 0; k < split.m; ++k)
            r -= proj.at(i, k) * Poly::variable(split.m, split.m, Var::p(k + 1));
        out.push_back(std::move(r));
    }
    return out;
}

Poly c_prime(const QuadraticModel& model, const SigmaSplit& split) {
    if (!split.symbolic) throw SigmaError("symbolic c' requires a symbolic split");
    Poly quad(model.m, 0);
    for (int i = 0; i < model.m; ++i)
        for (int j = 0; j < model.m; ++j)
            quad += model.b[static_cast<size_t>(i)] * split.sigma0->at(i, j) * model.b[static_cast<size_t>(j)];
    return model.c - quad.scaled(rat(1, 2));
}

double c_prime_at(const QuadraticModel& model, const SigmaSplit& split, double t, const std::vector<double>& q) {
    std::vector<double> pt;
    pt.push_back(t);
    pt.insert(pt.end(), q.begin(), q.end());
    std::vector<double> bv(static_cast<size_t>(model.m));
    for (int i = 0; i < model.m; ++i) bv[static_cast<size_t>(i)] = model.b[static_cast<size_t>(i)].eval(pt);
    std::vector<double> s0b = dmul_vec(split.sigma0_at(t, q), bv);
    double quad = 0.0;
    for (int i = 0; i < model.m; ++i) quad += bv[static_cast<size_t>(i)] * s0b[static_cast<size_t>(i)];
    return model.c.eval(pt) - 0.5 * quad;
}

}  // namespace tdmech
