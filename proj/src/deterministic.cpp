#include "gdof/deterministic.hpp"

#include "gdof/errors.hpp"
#include "gdof/vertex_lp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

namespace gdof {

namespace {

int link_index(int tx, int rx) { return (tx - 1) * 3 + (rx - 1); }

int floor_levels(double exponent, int L) {
    return static_cast<int>(std::floor(exponent * L + 1e-9));
}

double exponent_of(const SystemConfig& c, int tx, int rx) {
    return tx == rx ? 1.0 : link_exponent(c, tx, rx);
}

std::string join_labels(const std::vector<DetVar>& vars) {
    std::string s;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (k) s += ",";
        s += vars[k].label();
    }
    return s;
}

std::vector<DetVar> concat(std::vector<DetVar> a, const std::vector<DetVar>& b) {
    for (const auto& v : b) {
        if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
    }
    return a;
}

std::vector<DetVar> intersect(const std::vector<DetVar>& a, const std::vector<DetVar>& b) {
    std::vector<DetVar> out;
    for (const auto& v : a) {
        if (std::find(b.begin(), b.end(), v) != b.end()) out.push_back(v);
    }
    return out;
}

bool contains_all(const std::vector<DetVar>& set, const std::vector<DetVar>& part) {
    return std::all_of(part.begin(), part.end(), [&](const DetVar& v) {
        return std::find(set.begin(), set.end(), v) != set.end();
    });
}

TermSpec mi(std::vector<DetVar> a, int rx, std::vector<DetVar> given) {
    TermSpec t;
    t.a = std::move(a);
    t.b = {DetVar::Y(rx)};
    t.given = std::move(given);
    t.label = "I(" + join_labels(t.a) + ";Y" + std::to_string(rx);
    if (!t.given.empty()) t.label += "|" + join_labels(t.given);
    t.label += ")";
    return t;
}

// H(Y_rx | direct image) equals the sum of the two interference image entropies.
bool decodable_at(const DetChannel& m, int rx) {
    const int j = next_user(rx);
    const int k = prev_user(rx);
    const DetVar own = DetVar::V(rx, rx);
    const int lhs = uniform_entropy(m, {DetVar::Y(rx), own}) - uniform_entropy(m, {own});
    const int rhs = uniform_entropy(m, {DetVar::V(j, rx)}) + uniform_entropy(m, {DetVar::V(k, rx)});
    return lhs == rhs;
}

bool generic_mixing_at(const DetChannel& m, int rx) {
    const int M = m.config().M;
    const int N = m.config().N;
    const Gf2Matrix* g[3] = {&m.mixing(1, rx), &m.mixing(2, rx), &m.mixing(3, rx)};
    // Mixing maps act on bit columns; the rank of interest is over the column span.
    auto col_rank = [&](std::vector<const Gf2Matrix*> parts) {
        const int cols = static_cast<int>(parts.size()) * M;
        Gf2Matrix t(cols, N);
        int at = 0;
        for (const auto* p : parts) {
            for (int c = 0; c < M; ++c, ++at) {
                for (int r = 0; r < N; ++r) t.set(at, r, p->get(r, c));
            }
        }
        return t.rank();
    };
    for (int a = 0; a < 3; ++a) {
        if (col_rank({g[a]}) != std::min(N, M)) return false;
        for (int b = a + 1; b < 3; ++b) {
            if (col_rank({g[a], g[b]}) != std::min(N, 2 * M)) return false;
        }
    }
    return col_rank({g[0], g[1], g[2]}) == std::min(N, 3 * M);
}

// Message images of user j: the two cross images in the weak regime, the direct and
// weak-cross images otherwise.
std::vector<DetVar> images_of(const DetChannel& m, int j) {
    if (m.regime() == Regime::Weak) return {DetVar::V(j, strong_receiver(j)), DetVar::V(j, weak_receiver(j))};
    return {DetVar::V(j, j), DetVar::V(j, weak_receiver(j))};
}

std::vector<DetVar> message_set(const DetChannel& m) {
    std::vector<DetVar> out;
    for (int j = 1; j <= 3; ++j) {
        if (m.regime() != Regime::Weak) out.push_back(DetVar::X(j));
        for (const auto& v : images_of(m, j)) out.push_back(v);
    }
    return out;
}

// Messages of transmitter j that receiver i must decode.
std::vector<DetVar> decode_requirement(const DetChannel& m, int i, int j) {
    const int q = m.link_levels(j, i);
    int smallest = m.input_levels();
    for (const auto& v : images_of(m, j)) smallest = std::min(smallest, m.link_levels(j, v.b));
    if (q == m.input_levels()) {
        std::vector<DetVar> out{DetVar::X(j)};
        for (const auto& v : images_of(m, j)) out.push_back(v);
        return out;
    }
    if (q == smallest) return {DetVar::V(j, i)};
    return images_of(m, j);
}

int cond_entropy(const DetChannel& m, const std::vector<DetVar>& a, const std::vector<DetVar>& given) {
    return uniform_entropy(m, concat(a, given)) - uniform_entropy(m, given);
}

int cond_mi(const DetChannel& m, const std::vector<DetVar>& a, int rx, const std::vector<DetVar>& given) {
    return static_cast<int>(uniform_term(m, mi(a, rx, given)));
}

std::string set_label(const std::vector<DetVar>& vars) { return "{" + join_labels(vars) + "}"; }

void add_identity_check(const DetChannel& m, AssumptionReport& report, const std::string& name,
                        const DetVar& target, int rx, const std::vector<DetVar>& A,
                        const std::vector<DetVar>& middle_given, const std::vector<DetVar>& requirement) {
    const int lhs = cond_mi(m, {target}, rx, A);
    const int middle = cond_mi(m, {target}, rx, middle_given);
    const int rhs = cond_entropy(m, {target}, intersect(A, requirement));
    report.checks.push_back({name + " " + target.label() + " A=" + set_label(A),
                             lhs == middle && middle == rhs, static_cast<double>(lhs),
                             static_cast<double>(rhs)});
}

}  // namespace

std::string DetVar::label() const {
    switch (kind) {
        case Kind::X: return "X" + std::to_string(a);
        case Kind::V: return "V" + std::to_string(a) + std::to_string(b);
        case Kind::Y: return "Y" + std::to_string(a);
    }
    return "?";
}

DetChannel::DetChannel(SystemConfig config, int L, std::uint64_t seed, std::array<Gf2Matrix, 9> mixing)
    : config_(config), regime_(config.regime()), L_(L), seed_(seed), mixing_(std::move(mixing)) {
    config_.validate();
    if (L < 2) throw DomainError("levels must be >= 2");
    if (floor_levels(config_.alpha2, L) < 1) {
        throw DomainError("floor(alpha2 * levels) must be >= 1");
    }
    input_levels_ = 0;
    for (int tx = 1; tx <= 3; ++tx) {
        for (int rx = 1; rx <= 3; ++rx) {
            const int q = floor_levels(exponent_of(config_, tx, rx), L);
            levels_[link_index(tx, rx)] = q;
            input_levels_ = std::max(input_levels_, q);
        }
    }
    for (const auto& g : mixing_) {
        if (g.rows() != config_.N || g.cols() != config_.M) {
            throw DomainError("mixing matrices must be N x M");
        }
    }
}

int DetChannel::link_levels(int tx, int rx) const { return levels_[link_index(tx, rx)]; }

const Gf2Matrix& DetChannel::mixing(int tx, int rx) const { return mixing_[link_index(tx, rx)]; }

Gf2Matrix DetChannel::map(const DetVar& v) const {
    const int M = config_.M;
    const int N = config_.N;
    const int ib = input_bits();
    const int cols = 3 * ib;
    if (v.a < 1 || v.a > 3 || (v.kind == DetVar::Kind::V && (v.b < 1 || v.b > 3))) {
        throw DomainError("variable index out of range: " + v.label());
    }
    switch (v.kind) {
        case DetVar::Kind::X: {
            Gf2Matrix out(ib, cols);
            for (int r = 0; r < ib; ++r) out.set(r, (v.a - 1) * ib + r, true);
            return out;
        }
        case DetVar::Kind::V: {
            const int bits = link_levels(v.a, v.b) * M;
            Gf2Matrix out(bits, cols);
            for (int r = 0; r < bits; ++r) out.set(r, (v.a - 1) * ib + r, true);
            return out;
        }
        case DetVar::Kind::Y: {
            Gf2Matrix out(N * input_levels_, cols);
            for (int tx = 1; tx <= 3; ++tx) {
                const int q = link_levels(tx, v.a);
                const int offset = input_levels_ - q;
                const Gf2Matrix& g = mixing(tx, v.a);
                for (int level = 0; level < q; ++level) {
                    for (int n = 0; n < N; ++n) {
                        for (int mm = 0; mm < M; ++mm) {
                            if (g.get(n, mm)) {
                                out.flip((offset + level) * N + n, (tx - 1) * ib + level * M + mm);
                            }
                        }
                    }
                }
            }
            return out;
        }
    }
    return {};
}

std::string DetChannel::dump() const {
    std::ostringstream os;
    os << "L=" << L_ << " M=" << config_.M << " N=" << config_.N << " alpha1=" << config_.alpha1
       << " alpha2=" << config_.alpha2 << " seed=" << seed_ << "\n";
    for (int tx = 1; tx <= 3; ++tx) {
        for (int rx = 1; rx <= 3; ++rx) {
            os << "G" << tx << rx << " levels=" << link_levels(tx, rx) << "\n"
               << mixing(tx, rx).to_string();
        }
    }
    return os.str();
}

DetChannel make_det_channel(const SystemConfig& config, int L, std::uint64_t seed,
                            std::array<Gf2Matrix, 9> mixing) {
    return DetChannel(config, L, seed, std::move(mixing));
}

DetChannel build_shift_channel(const SystemConfig& config, int L, std::uint64_t seed) {
    config.validate();
    std::mt19937_64 rng(seed);
    auto draw = [&] {
        Gf2Matrix g(config.N, config.M);
        for (int r = 0; r < config.N; ++r) {
            for (int c = 0; c < config.M; ++c) g.set(r, c, rng() & 1u);
        }
        return g;
    };
    std::array<Gf2Matrix, 9> mixing;
    for (auto& g : mixing) g = Gf2Matrix(config.N, config.M);
    // The matrices into one receiver do not affect the others, so each receiver is
    // resampled on its own.
    for (int rx = 1; rx <= 3; ++rx) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxResampleAttempts && !ok; ++attempt) {
            for (int tx = 1; tx <= 3; ++tx) mixing[link_index(tx, rx)] = draw();
            const DetChannel trial(config, L, seed, mixing);
            ok = generic_mixing_at(trial, rx) && decodable_at(trial, rx);
        }
        if (!ok) {
            throw DomainError("interference decodability unattainable at receiver " +
                              std::to_string(rx) + " after " +
                              std::to_string(kMaxResampleAttempts) + " draws");
        }
    }
    return DetChannel(config, L, seed, std::move(mixing));
}

int uniform_entropy(const DetChannel& model, const std::vector<DetVar>& vars) {
    if (vars.empty()) return 0;
    Gf2Matrix all;
    for (const auto& v : vars) all.append_rows(model.map(v));
    return all.rank();
}

double uniform_term(const DetChannel& model, const TermSpec& term) {
    const auto bg = concat(term.b, term.given);
    const auto ag = concat(term.a, term.given);
    const auto abg = concat(term.a, bg);
    return static_cast<double>(uniform_entropy(model, bg) - uniform_entropy(model, term.given) -
                               uniform_entropy(model, abg) + uniform_entropy(model, ag));
}

bool AssumptionReport::all_pass() const { return failures() == 0; }

std::size_t AssumptionReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const AssumptionCheck& c) { return !c.pass; }));
}

AssumptionReport check_assumptions(const DetChannel& model) {
    AssumptionReport report;
    const auto all_messages = message_set(model);

    for (int i = 1; i <= 3; ++i) {
        // Side information ranges over the messages receiver i decodes.
        std::vector<DetVar> relevant;
        for (int j = 1; j <= 3; ++j) relevant = concat(relevant, decode_requirement(model, i, j));
        const auto messages = intersect(all_messages, relevant);
        const std::size_t count = messages.size();
        const int j_next = next_user(i);
        const int j_prev = prev_user(i);
        {
            const DetVar own = DetVar::V(i, i);
            const int lhs = cond_entropy(model, {DetVar::Y(i)}, {own});
            const int rhs = uniform_entropy(model, {DetVar::V(j_next, i)}) +
                            uniform_entropy(model, {DetVar::V(j_prev, i)});
            report.checks.push_back({"intdec rx" + std::to_string(i), lhs == rhs,
                                     static_cast<double>(lhs), static_cast<double>(rhs)});
        }

        for (unsigned mask = 0; mask < (1u << count); ++mask) {
            std::vector<DetVar> A;
            for (std::size_t k = 0; k < count; ++k) {
                if (mask & (1u << k)) A.push_back(messages[k]);
            }
            const std::string rx = " rx" + std::to_string(i);

            if (model.regime() == Regime::Weak) {
                // Own strong-cross image, once either interferer's messages are known.
                if (contains_all(A, decode_requirement(model, i, j_next)) ||
                    contains_all(A, decode_requirement(model, i, j_prev))) {
                    const DetVar target = DetVar::V(i, strong_receiver(i));
                    const auto req = decode_requirement(model, i, i);
                    add_identity_check(model, report, "self" + rx, target, i, A,
                                       concat({DetVar::V(j_next, i), DetVar::V(j_prev, i)}, intersect(A, req)),
                                       req);
                }
                for (int j : {j_next, j_prev}) {
                    const int k = j == j_next ? j_prev : j_next;
                    if (!contains_all(A, decode_requirement(model, i, k))) continue;
                    const DetVar target = DetVar::V(j, i);
                    const auto req = decode_requirement(model, i, j);
                    add_identity_check(model, report, "int" + rx, target, i, A,
                                       concat({DetVar::X(i), DetVar::V(k, i)}, intersect(A, req)), req);
                }
            } else {
                const int strong = strong_interferer(i);
                const int weak = weak_interferer(i);
                if (contains_all(A, decode_requirement(model, i, i)) ||
                    contains_all(A, decode_requirement(model, i, weak))) {
                    const auto req = decode_requirement(model, i, strong);
                    add_identity_check(model, report, "strong" + rx, DetVar::X(strong), i, A,
                                       concat({DetVar::V(i, i), DetVar::V(weak, i)}, intersect(A, req)),
                                       req);
                }
                for (int j : {i, weak}) {
                    const int l = j == i ? weak : i;
                    if (!contains_all(A, decode_requirement(model, i, strong)) &&
                        !contains_all(A, decode_requirement(model, i, l))) {
                        continue;
                    }
                    const auto req = decode_requirement(model, i, j);
                    add_identity_check(model, report, "weak" + rx, DetVar::V(j, i), i, A,
                                       concat({DetVar::V(l, i), DetVar::X(strong)}, intersect(A, req)),
                                       req);
                }
            }
        }
    }
    return report;
}

std::vector<DetMinTerm> capacity_terms(const DetChannel& model) {
    using V = DetVar;
    std::vector<DetMinTerm> terms;
    switch (model.regime()) {
        case Regime::Weak: {
            const TermSpec p = mi({V::X(1)}, 1, {V::V(1, 2), V::V(2, 1), V::V(3, 1)});
            const std::vector<V> all{V::V(1, 2), V::V(2, 1), V::V(3, 1)};
            const TermSpec c2 = mi({V::V(1, 2)}, 1, {V::V(1, 3), V::V(2, 1), V::V(3, 1)});
            terms.push_back({"term1", {{1.0, mi({V::V(3, 1), V::V(2, 1)}, 1, {V::V(1, 2), V::V(3, 2)})},
                                       {1.0, p}}});
            terms.push_back({"term2", {{0.5, mi({V::V(2, 1)}, 1, {V::V(1, 2), V::V(3, 1)})},
                                       {0.5, mi(all, 1, {V::V(1, 3), V::V(3, 2)})},
                                       {1.0, p}}});
            terms.push_back({"term3", {{0.5, mi({V::V(2, 1), V::V(3, 1)}, 1, {V::V(1, 2)})},
                                       {0.5, c2},
                                       {1.0, p}}});
            terms.push_back({"term4", {{0.5, mi(all, 1, {V::V(3, 2)})}, {1.0, p}}});
            terms.push_back({"term5", {{0.5, mi(all, 1, {V::V(1, 3)})}, {1.0, p}}});
            terms.push_back({"term6", {{1.0 / 3.0, mi(all, 1, {})}, {1.0 / 3.0, c2}, {1.0, p}}});
            break;
        }
        case Regime::Mixed: {
            const std::vector<V> all{V::V(1, 1), V::V(2, 1), V::X(3)};
            terms.push_back({"term1", {{1.0, mi({V::V(1, 1), V::V(2, 1)}, 1, {V::V(1, 3), V::X(3)})}}});
            terms.push_back({"term2", {{0.5, mi({V::V(2, 1)}, 1, {V::V(1, 1), V::X(3)})},
                                       {0.5, mi(all, 1, {V::V(1, 3), V::V(3, 2)})}}});
            terms.push_back({"term3", {{0.5, mi(all, 1, {V::V(3, 2)})}}});
            terms.push_back({"term4", {{0.5, mi(all, 1, {V::V(1, 3)})}}});
            terms.push_back({"term5", {{1.0 / 3.0, mi(all, 1, {})},
                                       {1.0 / 3.0, mi({V::V(1, 1)}, 1, {V::V(1, 3), V::V(2, 1), V::X(3)})}}});
            break;
        }
        case Regime::Strong:
            terms.push_back({"term1", {{1.0, mi({V::V(1, 1)}, 1, {V::V(2, 1), V::X(3)})}}});
            terms.push_back({"term2", {{1.0 / 3.0, mi({V::V(1, 1), V::V(2, 1), V::X(3)}, 1, {})}}});
            break;
    }
    return terms;
}

DetCapacity det_sym_capacity(const DetChannel& model) {
    const auto report = check_assumptions(model);
    for (const auto& c : report.checks) {
        if (!c.pass) throw DomainError("model assumption fails: " + c.name);
    }
    DetCapacity out;
    const auto terms = capacity_terms(model);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        double v = 0.0;
        for (const auto& [coef, t] : terms[k].parts) v += coef * uniform_term(model, t);
        out.labels.push_back(terms[k].label);
        out.term_values.push_back(v);
        if (k == 0 || v < out.value - 1e-12) {
            out.value = v;
            out.argmin = k;
        }
    }
    return out;
}

std::vector<DetRateBound> weak_error_bounds(const DetChannel& model) {
    if (model.regime() != Regime::Weak) throw DomainError("error-event list is for the weak regime");
    using V = DetVar;
    const V v12 = V::V(1, 2), v13 = V::V(1, 3), v21 = V::V(2, 1), v31 = V::V(3, 1), v32 = V::V(3, 2);
    return {
        {{0, 0, 1}, mi({V::X(1)}, 1, {v12, v21, v31})},
        {{0, 1, 0}, mi({v12}, 1, {v13, v21, v31})},
        {{1, 0, 0}, mi({v21}, 1, {v12, v31})},
        {{0, 1, 0}, mi({v31}, 1, {v12, v21, v32})},
        {{1, 1, 0}, mi({v12}, 1, {v21, v31})},
        {{1, 1, 0}, mi({v31}, 1, {v12, v21})},
        {{1, 1, 0}, mi({v12, v21}, 1, {v13, v31})},
        {{1, 1, 0}, mi({v31, v21}, 1, {v12, v32})},
        {{1, 1, 0}, mi({v12, v31}, 1, {v13, v21, v32})},
        {{2, 1, 0}, mi({v12, v21}, 1, {v31})},
        {{1, 2, 0}, mi({v12, v31}, 1, {v21, v32})},
        {{1, 2, 0}, mi({v12, v21, v31}, 1, {v13, v32})},
        {{1, 2, 0}, mi({v12, v31}, 1, {v13, v21})},
        {{2, 1, 0}, mi({v21, v31}, 1, {v12})},
        {{2, 2, 0}, mi({v12, v31}, 1, {v21})},
        {{2, 2, 0}, mi({v12, v21, v31}, 1, {v32})},
        {{2, 2, 0}, mi({v12, v21, v31}, 1, {v13})},
        {{3, 2, 0}, mi({v12, v21, v31}, 1, {})},
    };
}

std::vector<DetRateBound> weak_reduced_bounds(const DetChannel& model) {
    const auto all = weak_error_bounds(model);
    std::vector<DetRateBound> out;
    for (std::size_t idx : {0u, 1u, 2u, 7u, 11u, 13u, 15u, 16u, 17u}) out.push_back(all[idx]);
    return out;
}

double bound_lp_value(const DetChannel& model, const std::vector<DetRateBound>& bounds) {
    std::vector<LinearConstraint> constraints;
    for (const auto& b : bounds) {
        LinearConstraint c;
        for (int k = 0; k < 3; ++k) c.weights[k] = b.weights[k];
        c.bound = uniform_term(model, b.term);
        constraints.push_back(c);
    }
    return maximize_sum(constraints).objective;
}

InputPmfs uniform_pmfs(const DetChannel& model) {
    const std::size_t states = std::size_t{1} << model.input_bits();
    InputPmfs p;
    for (auto& v : p) v.assign(states, 1.0 / static_cast<double>(states));
    return p;
}

std::vector<std::pair<TermSpec, double>> brute_force_terms(const DetChannel& model,
                                                          const InputPmfs& pmfs,
                                                          const std::vector<TermSpec>& terms) {
    const int ib = model.input_bits();
    if (3 * ib > kMaxBruteForceBits) {
        throw DomainError("input state space 2^" + std::to_string(3 * ib) + " exceeds 2^" +
                          std::to_string(kMaxBruteForceBits));
    }
    const std::size_t per_user = std::size_t{1} << ib;
    for (const auto& p : pmfs) {
        if (p.size() != per_user) throw DomainError("pmf size must be 2^input_bits");
        double total = 0.0;
        for (double x : p) {
            if (x < 0.0) throw DomainError("pmf entries must be >= 0");
            total += x;
        }
        if (std::abs(total - 1.0) > 1e-9) throw DomainError("pmf must sum to 1");
    }

    // Joint support, shared by every entropy evaluation.
    std::vector<std::uint64_t> support;
    std::vector<double> prob;
    const std::uint64_t mask = per_user - 1;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << (3 * ib)); ++x) {
        const double p = pmfs[0][x & mask] * pmfs[1][(x >> ib) & mask] * pmfs[2][(x >> (2 * ib)) & mask];
        if (p > 0.0) {
            support.push_back(x);
            prob.push_back(p);
        }
    }

    auto entropy = [&](const std::vector<DetVar>& vars) {
        if (vars.empty()) return 0.0;
        std::vector<std::uint64_t> rows;
        for (const auto& v : vars) {
            const Gf2Matrix m = model.map(v);
            for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r)[0]);
        }
        const std::size_t words = (rows.size() + 63) / 64;
        struct KeyHash {
            std::size_t operator()(const std::vector<std::uint64_t>& k) const {
                std::size_t h = 1469598103934665603ull;
                for (auto w : k) h = (h ^ w) * 1099511628211ull;
                return h;
            }
        };
        std::unordered_map<std::vector<std::uint64_t>, double, KeyHash> hist;
        std::vector<std::uint64_t> key(words);
        for (std::size_t s = 0; s < support.size(); ++s) {
            std::fill(key.begin(), key.end(), 0);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (std::popcount(rows[r] & support[s]) & 1) key[r / 64] |= std::uint64_t{1} << (r % 64);
            }
            hist[key] += prob[s];
        }
        double h = 0.0;
        for (const auto& [k, p] : hist) {
            if (p > 0.0) h -= p * std::log2(p);
        }
        return h;
    };

    std::vector<std::pair<TermSpec, double>> out;
    for (const auto& t : terms) {
        const auto bg = concat(t.b, t.given);
        const auto ag = concat(t.a, t.given);
        const auto abg = concat(t.a, bg);
        const double v = entropy(bg) - entropy(t.given) - entropy(abg) + entropy(ag);
        out.emplace_back(t, v);
    }
    return out;
}

}  // namespace gdof
