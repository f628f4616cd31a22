#include "gdof/outer_bounds.hpp"

#include "gdof/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gdof {

namespace {

const double kLog2PiE = std::log2(std::numbers::pi * std::numbers::e);
constexpr double kJitter = 1e-12;

void check_descriptor(const SignalDescriptor& d) {
    if (d.rx < 1 || d.rx > 3) throw DomainError("descriptor receiver must be in 1..3");
    if (d.users.empty()) throw DomainError("descriptor user set is empty");
    for (std::size_t k = 0; k < d.users.size(); ++k) {
        if (d.users[k] < 1 || d.users[k] > 3) throw DomainError("descriptor user must be in 1..3");
        if (k > 0 && d.users[k] <= d.users[k - 1]) {
            throw DomainError("descriptor users must be sorted and distinct");
        }
    }
}

// N x 3M map from the stacked inputs (X1; X2; X3) to the noiseless part of the descriptor.
CMatrix descriptor_map(const ChannelInstance& channel, double rho, const SignalDescriptor& d) {
    check_descriptor(d);
    const int M = channel.config().M;
    const int N = channel.config().N;
    CMatrix map = CMatrix::Zero(N, 3 * M);
    for (int user : d.users) {
        map.middleCols((user - 1) * M, M) = arrival_factor(channel, user, d.rx, 1.0, rho);
    }
    return map;
}

CMatrix vstack_maps(const ChannelInstance& channel, double rho,
                    const std::vector<SignalDescriptor>& list) {
    const int M = channel.config().M;
    const int N = channel.config().N;
    CMatrix out(static_cast<Eigen::Index>(list.size()) * N, 3 * M);
    for (std::size_t k = 0; k < list.size(); ++k) {
        out.middleRows(static_cast<Eigen::Index>(k) * N, N) = descriptor_map(channel, rho, list[k]);
    }
    return out;
}

void check_disjoint(const std::vector<SignalDescriptor>& targets,
                    const std::vector<SignalDescriptor>& gift) {
    if (targets.empty()) throw DomainError("entropy term needs at least one target");
    for (const auto& t : targets) {
        if (std::find(gift.begin(), gift.end(), t) != gift.end()) {
            throw DomainError("descriptor " + t.label() + " is both target and gift");
        }
    }
}

Eigen::LLT<CMatrix> cholesky_with_jitter(const CMatrix& sigma, const char* what) {
    Eigen::LLT<CMatrix> llt(sigma);
    if (llt.info() == Eigen::Success) return llt;
    const CMatrix shifted = sigma + kJitter * CMatrix::Identity(sigma.rows(), sigma.cols());
    llt.compute(shifted);
    if (llt.info() != Eigen::Success) throw NumericalError(std::string(what) + " is singular");
    return llt;
}

SignalDescriptor rotate(const SignalDescriptor& d, int shift) {
    SignalDescriptor out;
    for (int u : d.users) out.users.push_back((u - 1 + shift) % 3 + 1);
    std::sort(out.users.begin(), out.users.end());
    out.rx = (d.rx - 1 + shift) % 3 + 1;
    return out;
}

EntropyTerm rotate(const EntropyTerm& t, int shift) {
    EntropyTerm out;
    for (const auto& d : t.targets) out.targets.push_back(rotate(d, shift));
    for (const auto& d : t.gift) out.gift.push_back(rotate(d, shift));
    return out;
}

SignalDescriptor S(std::vector<int> users, int rx) { return {std::move(users), rx}; }

EntropyTerm Y1_given(std::vector<SignalDescriptor> gift) {
    return {{SignalDescriptor::output(1)}, std::move(gift)};
}

// Recipe from the terms written for user 1; users 2 and 3 follow by rotation.
SideInfoRecipe cyclic(std::string label, std::string realizes, int k,
                      const std::vector<EntropyTerm>& user1_terms) {
    SideInfoRecipe r;
    r.label = std::move(label);
    r.realizes = std::move(realizes);
    r.k = k;
    for (int shift = 0; shift < 3; ++shift) {
        for (const auto& t : user1_terms) r.terms.push_back(rotate(t, shift));
    }
    return r;
}

SideInfoRecipe many_to_one_recipe(std::string label, std::string realizes) {
    SideInfoRecipe r;
    r.label = std::move(label);
    r.realizes = std::move(realizes);
    r.k = 1;
    r.many_to_one = true;
    r.terms.push_back(Y1_given({}));
    r.terms.push_back({{S({2}, 2), S({3}, 3)}, {S({2, 3}, 1)}});
    return r;
}

double raw_sum(const ChannelInstance& channel, double rho, const SideInfoRecipe& recipe) {
    double acc = 0.0;
    for (const auto& t : recipe.terms) acc += conditional_entropy(channel, rho, t.targets, t.gift);
    return acc;
}

}  // namespace

std::string SignalDescriptor::label() const {
    std::string s = "S";
    if (users.size() == 1) {
        s += std::to_string(users.front());
    } else {
        s += "{";
        for (std::size_t k = 0; k < users.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(users[k]);
        }
        s += "}";
    }
    return s + "," + std::to_string(rx);
}

std::string EntropyTerm::label() const {
    std::string s = "h(";
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (k) s += ";";
        const auto& t = targets[k];
        s += t.users.size() == 3 ? "Y" + std::to_string(t.rx) : t.label();
    }
    if (!gift.empty()) {
        s += "|";
        for (std::size_t k = 0; k < gift.size(); ++k) {
            if (k) s += ",";
            s += gift[k].label();
        }
    }
    return s + ")";
}

std::vector<int> SideInfoRecipe::user_coverage() const {
    std::vector<int> cover(3, 0);
    for (const auto& t : terms) {
        for (const auto& d : t.targets) ++cover[d.rx - 1];
    }
    return cover;
}

double conditional_entropy(const ChannelInstance& channel, double rho,
                           const std::vector<SignalDescriptor>& targets,
                           const std::vector<SignalDescriptor>& gift) {
    if (!(rho > 0.0)) throw DomainError("rho must be positive");
    check_disjoint(targets, gift);
    const CMatrix A = vstack_maps(channel, rho, targets);
    const CMatrix B = vstack_maps(channel, rho, gift);
    CMatrix joint(A.rows() + B.rows(), A.cols());
    joint << A, B;
    const double value =
        static_cast<double>(A.rows()) * kLog2PiE + logdet_gram(joint) - logdet_gram(B);
    if (!std::isfinite(value)) throw NumericalError("conditional entropy is not finite");
    return value;
}

double conditional_entropy(const ChannelInstance& channel, double rho, int rx,
                           const std::vector<SignalDescriptor>& gift) {
    return conditional_entropy(channel, rho, {SignalDescriptor::output(rx)}, gift);
}

CMatrix conditional_covariance(const ChannelInstance& channel, double rho,
                               const std::vector<SignalDescriptor>& targets,
                               const std::vector<SignalDescriptor>& gift) {
    if (!(rho > 0.0)) throw DomainError("rho must be positive");
    check_disjoint(targets, gift);
    const CMatrix A = vstack_maps(channel, rho, targets);
    CMatrix sigma = A * A.adjoint() + CMatrix::Identity(A.rows(), A.rows());
    if (gift.empty()) return sigma;
    const CMatrix B = vstack_maps(channel, rho, gift);
    const CMatrix sigma_gg = B * B.adjoint() + CMatrix::Identity(B.rows(), B.rows());
    const CMatrix sigma_gt = B * A.adjoint();
    const auto llt = cholesky_with_jitter(sigma_gg, "gift covariance");
    const CMatrix X = llt.matrixL().solve(sigma_gt);
    sigma -= X.adjoint() * X;
    return 0.5 * (sigma + sigma.adjoint());
}

double conditional_entropy_schur(const ChannelInstance& channel, double rho,
                                 const std::vector<SignalDescriptor>& targets,
                                 const std::vector<SignalDescriptor>& gift) {
    const CMatrix sigma = conditional_covariance(channel, rho, targets, gift);
    const auto llt = cholesky_with_jitter(sigma, "conditional covariance");
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
        logdet += 2.0 * std::log2(std::real(llt.matrixLLT()(i, i)));
    }
    return static_cast<double>(sigma.rows()) * kLog2PiE + logdet;
}

std::vector<SideInfoRecipe> recipe_catalog(const SystemConfig& config) {
    config.validate();
    std::vector<SideInfoRecipe> catalog;
    switch (config.regime()) {
        case Regime::Weak:
            catalog.push_back(cyclic("weak.term1", "face1", 1, {Y1_given({S({1, 3}, 2)})}));
            catalog.push_back(cyclic("weak.term2", "face2", 2,
                                     {Y1_given({S({1}, 2), S({3}, 1)}),
                                      Y1_given({S({1}, 3), S({3}, 2)})}));
            catalog.push_back(cyclic("weak.term3", "face3", 2,
                                     {Y1_given({S({1}, 2)}),
                                      Y1_given({S({1}, 3), S({2, 3}, 1)})}));
            catalog.push_back(cyclic("weak.term4", "face4", 2,
                                     {Y1_given({S({3}, 2)}),
                                      Y1_given({S({1}, 2), S({2, 3}, 1)})}));
            catalog.push_back(cyclic("weak.term5", "face5", 2,
                                     {Y1_given({S({1}, 3)}),
                                      Y1_given({S({1}, 2), S({2, 3}, 1)})}));
            catalog.push_back(many_to_one_recipe("weak.many-to-one", "face6"));
            break;
        case Regime::Mixed: {
            const EntropyTerm own_given_weak_image{{S({1}, 1)}, {S({1}, 2)}};
            catalog.push_back(cyclic("mixed.single-user", "face7", 1, {{{S({1}, 1)}, {}}}));
            catalog.push_back(many_to_one_recipe("mixed.many-to-one", "face8"));
            catalog.push_back(cyclic("mixed.term3", "face9", 2,
                                     {Y1_given({S({3}, 2)}), own_given_weak_image}));
            catalog.push_back(cyclic("mixed.term4", "face10", 2,
                                     {Y1_given({S({1}, 3)}), own_given_weak_image}));
            break;
        }
        case Regime::Strong:
            catalog.push_back(cyclic("strong.single-user", "face11", 1, {{{S({1}, 1)}, {}}}));
            catalog.push_back(cyclic("strong.term2", "face12", 3,
                                     {Y1_given({}), {{S({1}, 1)}, {S({1}, 2)}},
                                      {{S({1}, 1)}, {S({1}, 3)}}}));
            break;
    }
    return catalog;
}

double evaluate_recipe(const ChannelInstance& channel, double rho, const SideInfoRecipe& recipe) {
    if (recipe.k < 1) throw DomainError("recipe multiplier must be >= 1");
    return (raw_sum(channel, rho, recipe) - raw_sum(channel, 1.0, recipe)) / recipe.k;
}

double many_to_one_bound(const ChannelInstance& channel, double rho) {
    return evaluate_recipe(channel, rho, many_to_one_recipe("many-to-one", "many-to-one"));
}

OuterEvaluation min_outer_proxy(const ChannelInstance& channel, double rho) {
    const auto catalog = recipe_catalog(channel.config());
    OuterEvaluation out;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
        const double v = evaluate_recipe(channel, rho, catalog[k]);
        out.per_recipe.push_back(v);
        if (k == 0 || v < out.value) {
            out.value = v;
            out.argmin = k;
        }
    }
    return out;
}

}  // namespace gdof
