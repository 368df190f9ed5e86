#include "tdmech/model.hpp"

#include <cmath>
#include <sstream>

#include "tdmech/errors.hpp"

namespace tdmech {

void check_model_shapes(const QuadraticModel& model) {
    if (model.m <= 0) throw DimensionError("model dimension must be positive");
    if (model.a.rows != model.m || model.a.cols != model.m) throw DimensionError("a must be m x m");
    if (static_cast<int>(model.b.size()) != model.m) throw DimensionError("b must have m components");
    if (static_cast<int>(model.q_box.size()) != model.m) throw DimensionError("domain must box all m coordinates");
    auto check_sig = [&](const Poly& p, const char* what) {
        if (p.num_q() != model.m || p.num_p() != 0)
            throw DimensionError(std::string(what) + " must use the (t, q) signature");
    };
    for (const auto& p : model.a.e) check_sig(p, "a entry");
    for (const auto& p : model.b) check_sig(p, "b entry");
    check_sig(model.c, "c");
    if (!model.a.is_symmetric()) throw DimensionError("a must be symmetric");
}

std::vector<std::vector<double>> model_grid(const QuadraticModel& model, int points_per_dim) {
    if (points_per_dim < 1) throw DimensionError("grid needs at least one point per dimension");
    std::vector<std::array<double, 2>> boxes;
    boxes.push_back(model.t_box);
    for (const auto& b : model.q_box) boxes.push_back(b);
    std::vector<std::vector<double>> axes;
    for (const auto& [lo, hi] : boxes) {
        std::vector<double> axis;
        if (points_per_dim == 1) {
            axis.push_back(0.5 * (lo + hi));
        } else {
            for (int k = 0; k < points_per_dim; ++k)
                axis.push_back(lo + (hi - lo) * k / (points_per_dim - 1));
        }
        axes.push_back(std::move(axis));
    }
    std::vector<std::vector<double>> grid;
    std::vector<size_t> idx(axes.size(), 0);
    while (true) {
        std::vector<double> pt(axes.size());
        for (size_t d = 0; d < axes.size(); ++d) pt[d] = axes[d][idx[d]];
        grid.push_back(std::move(pt));
        size_t d = axes.size();
        while (d > 0) {
            --d;
            if (++idx[d] < axes[d].size()) break;
            idx[d] = 0;
            if (d == 0) return grid;
        }
    }
}

ValidationReport validate_model(const QuadraticModel& model, int points_per_dim, double tol) {
    check_model_shapes(model);
    ValidationReport report;
    auto grid = model_grid(model, points_per_dim);
    report.grid_points = static_cast<int>(grid.size());
    bool first = true;
    for (const auto& pt : grid) {
        DMat A = model.a.eval(pt);
        int r;
        DMat s0 = sym_pinv(A, tol, &r);
        if (first) {
            report.rank = r;
            first = false;
        } else if (r != report.rank) {
            std::ostringstream os;
            os << "rank of a varies over the domain grid: " << report.rank << " vs " << r << " at (t=" << pt[0];
            for (int i = 0; i < model.m; ++i) os << ", q" << i + 1 << "=" << pt[static_cast<size_t>(i) + 1];
            os << ")";
            throw RankVariationError(os.str());
        }
        std::vector<double> bv(static_cast<size_t>(model.m));
        for (int i = 0; i < model.m; ++i) bv[static_cast<size_t>(i)] = model.b[static_cast<size_t>(i)].eval(pt);
        // Residual of b against Im a: (1 - a sigma0) b.
        std::vector<double> proj_b = dmul_vec(A, dmul_vec(s0, bv));
        for (int i = 0; i < model.m; ++i)
            report.max_b_residual =
                std::max(report.max_b_residual, std::abs(bv[static_cast<size_t>(i)] - proj_b[static_cast<size_t>(i)]));
    }
    if (report.max_b_residual > tol)
        throw ZeroSectionError("b leaves the image of a on the grid (max residual " +
                               std::to_string(report.max_b_residual) + ")");
    return report;
}

double lagrangian_eval(const QuadraticModel& model, double t, const std::vector<double>& q,
                       const std::vector<double>& qdot) {
    if (static_cast<int>(q.size()) != model.m || static_cast<int>(qdot.size()) != model.m)
        throw DimensionError("lagrangian_eval point dimension mismatch");
    std::vector<double> pt;
    pt.push_back(t);
    pt.insert(pt.end(), q.begin(), q.end());
    DMat A = model.a.eval(pt);
    double acc = model.c.eval(pt);
    for (int i = 0; i < model.m; ++i) {
        acc += model.b[static_cast<size_t>(i)].eval(pt) * qdot[static_cast<size_t>(i)];
        for (int j = 0; j < model.m; ++j)
            acc += 0.5 * A.at(i, j) * qdot[static_cast<size_t>(i)] * qdot[static_cast<size_t>(j)];
    }
    return acc;
}

std::vector<double> legendre_map(const QuadraticModel& model, double t, const std::vector<double>& q,
                                 const std::vector<double>& qdot) {
    if (static_cast<int>(q.size()) != model.m || static_cast<int>(qdot.size()) != model.m)
        throw DimensionError("legendre_map point dimension mismatch");
    std::vector<double> pt;
    pt.push_back(t);
    pt.insert(pt.end(), q.begin(), q.end());
    DMat A = model.a.eval(pt);
    std::vector<double> p = dmul_vec(A, qdot);
    for (int i = 0; i < model.m; ++i) p[static_cast<size_t>(i)] += model.b[static_cast<size_t>(i)].eval(pt);
    return p;
}

}  // namespace tdmech
