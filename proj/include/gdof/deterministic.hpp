#pragma once

#include "gdof/channel_model.hpp"
#include "gdof/gf2.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gdof {

/// A random variable of the deterministic model: X_j, the image V_ji of transmitter j
/// at receiver i, or the output Y_i.
struct DetVar {
    enum class Kind { X, V, Y };
    Kind kind = Kind::X;
    int a = 1;  // X_a, V_ab, Y_a
    int b = 0;

    static DetVar X(int j) { return {Kind::X, j, 0}; }
    static DetVar V(int j, int i) { return {Kind::V, j, i}; }
    static DetVar Y(int i) { return {Kind::Y, i, 0}; }

    std::string label() const;
    bool operator==(const DetVar&) const = default;
};

/// I(a; b | given).
struct TermSpec {
    std::string label;
    std::vector<DetVar> a;
    std::vector<DetVar> b;
    std::vector<DetVar> given;
};

/// Level model over GF(2). Every input carries `input_levels` levels of M bits, most
/// significant first. The link j -> i keeps the top floor(e L) levels and maps each level
/// through one N x M mixing matrix; images are aligned at the bottom of the output, which
/// has N bits on each of `input_levels` levels.
class DetChannel {
public:
    DetChannel(SystemConfig config, int L, std::uint64_t seed, std::array<Gf2Matrix, 9> mixing);

    const SystemConfig& config() const { return config_; }
    Regime regime() const { return regime_; }
    int L() const { return L_; }
    std::uint64_t seed() const { return seed_; }
    int input_levels() const { return input_levels_; }
    int input_bits() const { return input_levels_ * config_.M; }  // per user

    /// Levels of X_j that survive on the link j -> i.
    int link_levels(int tx, int rx) const;
    const Gf2Matrix& mixing(int tx, int rx) const;

    /// Linear map from the 3 * input_bits() stacked input bits to the variable.
    Gf2Matrix map(const DetVar& v) const;

    /// "L M N alpha1 alpha2 seed" header followed by every mixing matrix.
    std::string dump() const;

private:
    SystemConfig config_;
    Regime regime_;
    int L_;
    std::uint64_t seed_;
    int input_levels_;
    std::array<int, 9> levels_{};
    std::array<Gf2Matrix, 9> mixing_;
};

/// Draws the mixing matrices (seeded) and resamples, at most kMaxResampleAttempts times,
/// until every receiver sees generic mixing and each interference is decodable given the
/// intended input. Requires L >= 2 and floor(alpha2 L) >= 1.
DetChannel build_shift_channel(const SystemConfig& config, int L, std::uint64_t seed);

/// Same level structure with caller-supplied mixing matrices (no genericity check).
DetChannel make_det_channel(const SystemConfig& config, int L, std::uint64_t seed,
                            std::array<Gf2Matrix, 9> mixing);

/// Entropy in bits of the listed variables under independent uniform inputs.
int uniform_entropy(const DetChannel& model, const std::vector<DetVar>& vars);

/// Mutual information by entropy (rank) differences under uniform inputs.
double uniform_term(const DetChannel& model, const TermSpec& term);

struct AssumptionCheck {
    std::string name;  // e.g. "intdec rx1", "self V12 A={V21,V32}"
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AssumptionReport {
    std::vector<AssumptionCheck> checks;
    bool all_pass() const;
    std::size_t failures() const;
};

/// Decodability, self and cross-interference identities of the regime, per receiver.
AssumptionReport check_assumptions(const DetChannel& model);

/// A min-term of the symmetric capacity: sum of coef * term.
struct DetMinTerm {
    std::string label;
    std::vector<std::pair<double, TermSpec>> parts;
};

/// Min-terms at receiver 1: 6 for WEAK, 5 for MIXED, 2 for STRONG.
std::vector<DetMinTerm> capacity_terms(const DetChannel& model);

struct DetCapacity {
    double value = 0.0;
    std::size_t argmin = 0;
    std::vector<std::string> labels;
    std::vector<double> term_values;
};

/// Symmetric capacity under uniform inputs. Throws DomainError if an assumption fails.
DetCapacity det_sym_capacity(const DetChannel& model);

/// Weighted bound w . (Rc1, Rc2, Rp) < term, from the weak-regime error analysis.
struct DetRateBound {
    std::array<int, 3> weights{};
    TermSpec term;
};

/// All 18 error-event bounds of the weak regime at receiver 1.
std::vector<DetRateBound> weak_error_bounds(const DetChannel& model);

/// The 9 bounds that remain after applying the self/cross identities.
std::vector<DetRateBound> weak_reduced_bounds(const DetChannel& model);

/// Largest Rc1 + Rc2 + Rp under the given bounds with uniform-input term values.
double bound_lp_value(const DetChannel& model, const std::vector<DetRateBound>& bounds);

inline constexpr int kMaxBruteForceBits = 24;

/// Per-user input pmfs indexed by the input bit pattern (bit k = column k of the user block).
using InputPmfs = std::array<std::vector<double>, 3>;

InputPmfs uniform_pmfs(const DetChannel& model);

/// Evaluates each term by enumerating the joint pmf of all inputs.
/// Throws DomainError when the total input width exceeds kMaxBruteForceBits.
std::vector<std::pair<TermSpec, double>> brute_force_terms(const DetChannel& model,
                                                          const InputPmfs& pmfs,
                                                          const std::vector<TermSpec>& terms);

}  // namespace gdof
