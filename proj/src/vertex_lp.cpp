#include "gdof/vertex_lp.hpp"

#include "gdof/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gdof {

LpVertex maximize_sum(std::span<const LinearConstraint> constraints) {
    std::array<bool, 3> bounded{false, false, false};
    for (const auto& c : constraints) {
        for (int i = 0; i < 3; ++i) {
            if (c.weights[i] < 0.0) throw NumericalError("constraint weights must be >= 0");
            if (c.weights[i] > 0.0) bounded[i] = true;
        }
    }
    for (int i = 0; i < 3; ++i) {
        if (!bounded[i]) {
            throw NumericalError("objective unbounded: no constraint limits coordinate " +
                                 std::to_string(i));
        }
    }

    // Axis planes -x_i <= 0 close the polytope from below.
    std::vector<LinearConstraint> all(constraints.begin(), constraints.end());
    for (int i = 0; i < 3; ++i) {
        LinearConstraint axis;
        axis.weights[i] = -1.0;
        all.push_back(axis);
    }

    auto feasible = [&](const Eigen::Vector3d& x) {
        for (const auto& c : all) {
            const double lhs = c.weights[0] * x(0) + c.weights[1] * x(1) + c.weights[2] * x(2);
            if (lhs > c.bound + kFeasibilitySlack * std::max(1.0, std::abs(c.bound))) return false;
        }
        return true;
    };

    bool found = false;
    LpVertex best;
    const std::size_t n = all.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                Eigen::Matrix3d A;
                Eigen::Vector3d rhs;
                for (int col = 0; col < 3; ++col) {
                    A(0, col) = all[a].weights[col];
                    A(1, col) = all[b].weights[col];
                    A(2, col) = all[c].weights[col];
                }
                rhs << all[a].bound, all[b].bound, all[c].bound;
                Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
                if (lu.rank() < 3) continue;
                const Eigen::Vector3d x = lu.solve(rhs);
                if (!x.allFinite() || !feasible(x)) continue;
                LpVertex v;
                for (int i = 0; i < 3; ++i) v.x[i] = std::max(0.0, x(i));
                v.objective = v.x[0] + v.x[1] + v.x[2];
                const double tol = kFeasibilitySlack * std::max(1.0, std::abs(best.objective));
                if (!found || v.objective > best.objective + tol ||
                    (v.objective > best.objective - tol && v.x > best.x)) {
                    best = v;
                    found = true;
                }
            }
        }
    }
    if (!found) throw NumericalError("no feasible vertex found");
    return best;
}

}  // namespace gdof
