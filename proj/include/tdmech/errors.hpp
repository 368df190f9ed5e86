#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tdmech {

// Thrown when operands disagree on variable signature or matrix shape.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient matrix rank changes across the validation grid.
struct RankVariationError : ModelError {
    using ModelError::ModelError;
};

// b leaves the image of a somewhere on the validation grid.
struct ZeroSectionError : ModelError {
    using ModelError::ModelError;
};

// A proposed sigma0/sigma1 fails its defining identities.
struct SigmaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A reference frame violates a*Gamma + b = 0.
struct FrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A kernel offset violates a*upsilon = 0.
struct OffsetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A constraint set is inconsistent (a generator reduces to a nonzero constant).
struct ConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric integration left the finite range; carries the last good sample.
struct DivergenceError : std::runtime_error {
    DivergenceError(std::string msg, double t, std::vector<double> q, std::vector<double> p)
        : std::runtime_error(std::move(msg)), t_last(t), q_last(std::move(q)), p_last(std::move(p)) {}
    double t_last;
    std::vector<double> q_last;
    std::vector<double> p_last;
};

// A check was requested outside its domain of validity (e.g. off the constraint space).
struct NotApplicableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tdmech
