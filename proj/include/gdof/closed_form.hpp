#pragma once

#include "gdof/channel_model.hpp"

#include <string>

namespace gdof {

/// Per-user GDOF with the face of the region that attains it.
///
/// Faces are numbered by order of appearance of the min/max terms: 1-6 for the
/// weak regime, 7-10 for the mixed regime and 11-12 for the strong regime.
struct GdofResult {
    double value = 0.0;
    Regime regime = Regime::Weak;
    std::string active_term;  // e.g. "T1.b2": second branch of the first min-term
    int face_id = 0;
    int piecewise_case = 0;   // 1..4 for gdof_piecewise_weak, 0 otherwise
    bool boundary_fallback = false;
};

/// Tolerance under which two terms are considered tied; the lower index wins.
inline constexpr double kTieTolerance = 1e-12;

/// Min of the three max-terms, valid for 0 < alpha2 < alpha1 < 1.
GdofResult gdof_weak(const SystemConfig& config);

/// Four-case closed form of the weak regime. Points where no case (or more than
/// one) holds strictly fall back to gdof_weak with boundary_fallback set.
GdofResult gdof_piecewise_weak(const SystemConfig& config);

/// Valid for 0 < alpha2 < 1 < alpha1.
GdofResult gdof_mixed(const SystemConfig& config);

/// Valid for 1 < alpha2 < alpha1.
GdofResult gdof_strong(const SystemConfig& config);

/// Dispatches on the regime. Throws BoundaryError when alpha1 or alpha2 equals 1.
GdofResult gdof(const SystemConfig& config);

/// Value of the single branch expression behind `face_id` (1..12).
double face_value(const SystemConfig& config, int face_id);

/// Which of the four weak-regime piecewise cases hold strictly at this point (bit k-1 for case k).
unsigned piecewise_case_mask(const SystemConfig& config);

}  // namespace gdof
