#pragma once

#include <array>
#include <string>
#include <vector>

#include "tdmech/poly_matrix.hpp"

namespace tdmech {

// Data of a quadratic Lagrangian L = 1/2 a_ij v^i v^j + b_i v^i + c, where
// a, b, c are polynomials in (t, q^1..q^m). Entries use the (m, 0) variable
// signature. The domain boxes bound the validation and sampling grids.
struct QuadraticModel {
    int m = 0;
    PolyMatrix a;
    std::vector<Poly> b;
    Poly c;
    std::array<double, 2> t_box{0.0, 1.0};
    std::vector<std::array<double, 2>> q_box;
};

// Checks internal shape/signature consistency; throws DimensionError.
void check_model_shapes(const QuadraticModel& model);

// A connection Gamma^i(t, q) solving a*Gamma + b = 0 (components in the
// (m, 0) signature).
struct ReferenceFrame {
    std::vector<Poly> gamma;
};

struct ValidationReport {
    int rank = 0;
    double max_b_residual = 0.0;
    int grid_points = 0;
};

// Evaluates a on a lattice over the declared (t, q) boxes (points_per_dim
// samples per dimension), requiring constant rank and b within the image of a
// everywhere on the grid. Throws RankVariationError / ZeroSectionError.
ValidationReport validate_model(const QuadraticModel& model, int points_per_dim = 3, double tol = 1e-9);

double lagrangian_eval(const QuadraticModel& model, double t, const std::vector<double>& q,
                       const std::vector<double>& qdot);

// p_i = a_ij(t,q) qdot^j + b_i(t,q).
std::vector<double> legendre_map(const QuadraticModel& model, double t, const std::vector<double>& q,
                                 const std::vector<double>& qdot);

// The lattice used by validate_model and the sampled checks: all combinations
// of points_per_dim equally spaced values per box dimension, each point given
// as (t, q^1..q^m).
std::vector<std::vector<double>> model_grid(const QuadraticModel& model, int points_per_dim = 3);

}  // namespace tdmech
