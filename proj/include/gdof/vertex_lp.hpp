#pragma once

#include <array>
#include <span>

namespace gdof {

/// weights . x <= bound with nonnegative weights.
struct LinearConstraint {
    std::array<double, 3> weights{};
    double bound = 0.0;
};

struct LpVertex {
    std::array<double, 3> x{};
    double objective = 0.0;
};

inline constexpr double kFeasibilitySlack = 1e-9;

/// Maximizes x0 + x1 + x2 over {x >= 0, every constraint} by enumerating the
/// vertices of the polytope. Ties in the objective (within the slack) go to the
/// lexicographically largest vertex. Throws NumericalError if a coordinate is
/// not bounded by any constraint.
LpVertex maximize_sum(std::span<const LinearConstraint> constraints);

}  // namespace gdof
