#include "gdof/closed_form.hpp"

#include "gdof/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <vector>

namespace gdof {

double face_value(const SystemConfig& c, int face_id) {
    const double M = c.M;
    const double N = c.N;
    const double a1 = c.alpha1;
    const double a2 = c.alpha2;
    switch (face_id) {
        case 1: return M + (N - 3 * M) * a2;
        case 2: return M + (N - 3 * M) * a1 + (3 * M - N) * a2;
        case 3: return (3 * M - N) * a1 + N - 2 * M;
        case 4: return M + 0.5 * (N - 3 * M) * a2;
        case 5: return 0.5 * (N - M) + 0.5 * (3 * M - N) * a2;
        case 6: return M + (N - 3 * M) * a2 / 3.0;
        case 7: return M;
        case 8: return (2 * M + M * a1 + (N - 3 * M) * a2) / 3.0;
        case 9: return (M + M * a1 + (N - 3 * M) * a2) / 2.0;
        case 10: return (M + (N - 2 * M) * a1 + (3 * M - N) * a2) / 2.0;
        case 11: return M;
        case 12: return (N - 2 * M + M * a1 + M * a2) / 3.0;
        default: throw DomainError("face id must be in 1..12");
    }
}

namespace {

// A min-term is a max over one or more faces.
using Term = std::vector<int>;

GdofResult min_of_max(const SystemConfig& c, Regime regime, const std::vector<Term>& terms) {
    struct Pick {
        double value;
        int face;
        int branch;
    };
    std::vector<Pick> per_term;
    per_term.reserve(terms.size());
    for (const auto& term : terms) {
        std::vector<double> values;
        for (int face : term) values.push_back(face_value(c, face));
        const double best = *std::max_element(values.begin(), values.end());
        int branch = 0;
        while (values[branch] < best - kTieTolerance) ++branch;
        per_term.push_back({values[branch], term[branch], branch});
    }
    double lowest = per_term.front().value;
    for (const auto& p : per_term) lowest = std::min(lowest, p.value);
    std::size_t idx = 0;
    while (per_term[idx].value > lowest + kTieTolerance) ++idx;

    GdofResult r;
    r.value = per_term[idx].value;
    r.regime = regime;
    r.face_id = per_term[idx].face;
    r.active_term = "T" + std::to_string(idx + 1);
    if (terms[idx].size() > 1) r.active_term += ".b" + std::to_string(per_term[idx].branch + 1);
    return r;
}

void require_regime(const SystemConfig& c, Regime expected) {
    c.validate_gdof_dims();
    if (c.regime() != expected) {
        throw DomainError(std::string("exponents (") + std::to_string(c.alpha1) + ", " +
                          std::to_string(c.alpha2) + ") are not in the " +
                          std::string(to_string(expected)) + " regime");
    }
}

}  // namespace

GdofResult gdof_weak(const SystemConfig& c) {
    require_regime(c, Regime::Weak);
    return min_of_max(c, Regime::Weak, {{1, 2, 3}, {4, 5}, {6}});
}

GdofResult gdof_mixed(const SystemConfig& c) {
    require_regime(c, Regime::Mixed);
    return min_of_max(c, Regime::Mixed, {{7}, {8}, {9, 10}});
}

GdofResult gdof_strong(const SystemConfig& c) {
    require_regime(c, Regime::Strong);
    return min_of_max(c, Regime::Strong, {{11}, {12}});
}

unsigned piecewise_case_mask(const SystemConfig& c) {
    const double a1 = c.alpha1;
    const double a2 = c.alpha2;
    unsigned mask = 0;
    if (a1 + a2 < 1 && 2 * a2 < a1) mask |= 1u;
    if (2 * a1 - a2 < 1 && 2 * a2 > a1 && a2 < 0.5) mask |= 2u;
    if (a1 + a2 > 1 && 2 * a1 - a2 > 1 && a2 < 0.5) mask |= 4u;
    if (a1 + a2 > 1 && a2 > 0.5) mask |= 8u;
    return mask;
}

GdofResult gdof_piecewise_weak(const SystemConfig& c) {
    require_regime(c, Regime::Weak);
    const unsigned mask = piecewise_case_mask(c);
    if (std::popcount(mask) != 1) {
        GdofResult r = gdof_weak(c);
        r.boundary_fallback = true;
        return r;
    }
    const int which = std::countr_zero(mask) + 1;
    // Each case is a min over at most two faces.
    static constexpr std::array<std::array<int, 2>, 4> kCaseFaces{{{1, 0}, {2, 4}, {3, 4}, {5, 6}}};
    const auto& faces = kCaseFaces[which - 1];
    int face = faces[0];
    double value = face_value(c, face);
    if (faces[1] != 0) {
        const double other = face_value(c, faces[1]);
        if (other < value - kTieTolerance) {
            face = faces[1];
            value = other;
        }
    }
    GdofResult r;
    r.value = value;
    r.regime = Regime::Weak;
    r.face_id = face;
    r.piecewise_case = which;
    r.active_term = "case" + std::to_string(which) + ".face" + std::to_string(face);
    return r;
}

GdofResult gdof(const SystemConfig& c) {
    c.validate_gdof_dims();
    switch (c.regime()) {
        case Regime::Weak: return gdof_weak(c);
        case Regime::Mixed: return gdof_mixed(c);
        case Regime::Strong: return gdof_strong(c);
    }
    throw DomainError("unreachable regime");
}

}  // namespace gdof
