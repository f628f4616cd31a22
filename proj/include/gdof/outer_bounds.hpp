#pragma once

#include "gdof/channel_model.hpp"

#include <string>
#include <vector>

namespace gdof {

/// S_{B,i}: the sum of the signals of users B as received at receiver i, plus its
/// own unit-variance noise. The receiver output Y_i is S_{{1,2,3},i}.
struct SignalDescriptor {
    std::vector<int> users;  // sorted, nonempty subset of {1,2,3}
    int rx = 1;

    static SignalDescriptor output(int rx) { return {{1, 2, 3}, rx}; }

    std::string label() const;
    bool operator==(const SignalDescriptor&) const = default;
};

/// h(targets | gift), the targets stacked into one vector.
struct EntropyTerm {
    std::vector<SignalDescriptor> targets;
    std::vector<SignalDescriptor> gift;

    std::string label() const;
};

/// A side-information construction bounding k (R1 + R2 + R3) by a sum of entropies.
struct SideInfoRecipe {
    std::string label;
    std::string realizes;  // closed-form term it corresponds to
    int k = 1;
    std::vector<EntropyTerm> terms;
    bool many_to_one = false;

    /// How many target slots belong to each user (index 0..2); a valid recipe has k each.
    std::vector<int> user_coverage() const;
};

/// Gaussian entropy of the stacked targets given the gift signals, inputs i.i.d. CN(0, I).
/// Computed from the block determinant identity |Sigma_joint| = |Sigma_gift| |Sigma_cond|.
double conditional_entropy(const ChannelInstance& channel, double rho,
                           const std::vector<SignalDescriptor>& targets,
                           const std::vector<SignalDescriptor>& gift);

/// h(Y_rx | gift).
double conditional_entropy(const ChannelInstance& channel, double rho, int rx,
                           const std::vector<SignalDescriptor>& gift);

/// Sigma_cond = Sigma_TT - Sigma_TS Sigma_SS^{-1} Sigma_ST via a Cholesky factor of Sigma_SS.
CMatrix conditional_covariance(const ChannelInstance& channel, double rho,
                               const std::vector<SignalDescriptor>& targets,
                               const std::vector<SignalDescriptor>& gift);

/// log2 |pi e Sigma_cond| from conditional_covariance (covariance-domain route).
double conditional_entropy_schur(const ChannelInstance& channel, double rho,
                                 const std::vector<SignalDescriptor>& targets,
                                 const std::vector<SignalDescriptor>& gift);

/// Recipes for every min-term of the regime of `config`.
std::vector<SideInfoRecipe> recipe_catalog(const SystemConfig& config);

/// (sum of term entropies at rho - same sum at rho = 1) / k. Upper-bound proxy on R1+R2+R3
/// whose slope in log2(rho) is the meaningful quantity.
double evaluate_recipe(const ChannelInstance& channel, double rho, const SideInfoRecipe& recipe);

/// h(Y1) + h([Y2; Y3] | S) with receivers 2 and 3 interference-free and S the
/// interference seen at receiver 1, self-calibrated at rho = 1.
double many_to_one_bound(const ChannelInstance& channel, double rho);

struct OuterEvaluation {
    double value = 0.0;      // min over recipes
    std::size_t argmin = 0;  // index into recipe_catalog
    std::vector<double> per_recipe;
};

OuterEvaluation min_outer_proxy(const ChannelInstance& channel, double rho);

}  // namespace gdof
