#include "gdof/hk_achievable.hpp"

#include "gdof/errors.hpp"
#include "gdof/vertex_lp.hpp"

#include <algorithm>
#include <cmath>

namespace gdof {

std::string_view to_string(LayerClass cls) {
    switch (cls) {
        case LayerClass::C1: return "c1";
        case LayerClass::C2: return "c2";
        case LayerClass::P: return "p";
    }
    return "?";
}

std::string MessageLayer::label() const { return std::to_string(tx) + std::string(to_string(cls)); }

double LayerPlan::power(LayerClass cls, double rho) const {
    const double weak_cut = std::pow(rho, -config.alpha2);
    switch (regime) {
        case Regime::Weak: {
            const double strong_cut = std::pow(rho, -config.alpha1);
            if (cls == LayerClass::C1) return 1.0 - weak_cut;
            if (cls == LayerClass::C2) return weak_cut - strong_cut;
            return strong_cut;
        }
        case Regime::Mixed:
            if (cls == LayerClass::C1) return 1.0 - weak_cut;
            if (cls == LayerClass::C2) return weak_cut;
            return 0.0;
        case Regime::Strong:
            return cls == LayerClass::C1 ? 1.0 : 0.0;
    }
    return 0.0;
}

double LayerPlan::arrival_scale(const MessageLayer& layer, double rho) const {
    return power(layer.cls, rho) * std::pow(rho, link_exponent(config, layer.tx, 1));
}

bool LayerPlan::has_class(LayerClass cls) const {
    return std::find(classes.begin(), classes.end(), cls) != classes.end();
}

LayerPlan decode_catalog(const SystemConfig& config) {
    config.validate();
    LayerPlan plan;
    plan.config = config;
    plan.regime = config.regime();
    using enum LayerClass;
    switch (plan.regime) {
        case Regime::Weak:
            // User 2's c2 and p and user 3's p arrive at the noise level at receiver 1.
            plan.classes = {C1, C2, P};
            plan.decode_set = {{1, C1}, {1, C2}, {2, C1}, {3, C1}, {3, C2}};
            plan.treated_as_noise = {{2, C2}, {2, P}, {3, P}};
            plan.private_layer = MessageLayer{1, P};
            break;
        case Regime::Mixed:
            plan.classes = {C1, C2};
            plan.decode_set = {{1, C1}, {1, C2}, {2, C1}, {3, C1}, {3, C2}};
            plan.treated_as_noise = {{2, C2}};
            break;
        case Regime::Strong:
            plan.classes = {C1};
            plan.decode_set = {{1, C1}, {2, C1}, {3, C1}};
            break;
    }
    return plan;
}

std::vector<RateBound> generate_bounds(const ChannelInstance& channel, double rho) {
    if (!(rho > 1.0)) throw DomainError("rho must be > 1 for bound generation");
    const LayerPlan plan = decode_catalog(channel.config());
    const Eigen::Index n = channel.config().N;

    auto factor = [&](const MessageLayer& layer) {
        return arrival_factor(channel, layer.tx, 1, plan.power(layer.cls, rho), rho);
    };

    std::vector<CMatrix> noise_blocks;
    for (const auto& layer : plan.treated_as_noise) noise_blocks.push_back(factor(layer));
    const CMatrix floor_noise = hstack(noise_blocks, n);
    if (plan.private_layer) noise_blocks.push_back(factor(*plan.private_layer));
    const CMatrix common_noise = hstack(noise_blocks, n);

    std::vector<CMatrix> decoded;
    for (const auto& layer : plan.decode_set) decoded.push_back(factor(layer));

    std::vector<RateBound> bounds;
    const std::size_t count = plan.decode_set.size();
    for (unsigned mask = 1; mask < (1u << count); ++mask) {
        RateBound bound;
        std::vector<CMatrix> blocks;
        bound.label = "{";
        for (std::size_t k = 0; k < count; ++k) {
            if (!(mask & (1u << k))) continue;
            if (!blocks.empty()) bound.label += ",";
            bound.label += plan.decode_set[k].label();
            ++bound.weights[static_cast<int>(plan.decode_set[k].cls)];
            blocks.push_back(decoded[k]);
        }
        bound.label += "}";
        bound.value = logdet_rate_factored(hstack(blocks, n), common_noise);
        bounds.push_back(std::move(bound));
    }
    if (plan.private_layer) {
        RateBound bound;
        bound.label = "{" + plan.private_layer->label() + "}";
        bound.weights[static_cast<int>(LayerClass::P)] = 1;
        bound.value = logdet_rate_factored(factor(*plan.private_layer), floor_noise);
        bounds.push_back(std::move(bound));
    }
    return bounds;
}

RatePoint max_symmetric_rate(const std::vector<RateBound>& bounds, const LayerPlan& plan) {
    if (bounds.empty()) throw DomainError("bound list is empty");
    std::vector<LinearConstraint> constraints;
    constraints.reserve(bounds.size() + 3);
    for (const auto& b : bounds) {
        LinearConstraint c;
        for (int i = 0; i < 3; ++i) c.weights[i] = b.weights[i];
        c.bound = b.value;
        constraints.push_back(c);
    }
    for (LayerClass cls : {LayerClass::C1, LayerClass::C2, LayerClass::P}) {
        if (plan.has_class(cls)) continue;
        LinearConstraint pin;
        pin.weights[static_cast<int>(cls)] = 1.0;
        constraints.push_back(pin);
    }
    const LpVertex v = maximize_sum(constraints);
    return {v.x[0], v.x[1], v.x[2], v.objective};
}

double achievable_sym_rate(const ChannelInstance& channel, double rho) {
    const auto bounds = generate_bounds(channel, rho);
    return max_symmetric_rate(bounds, decode_catalog(channel.config())).R;
}

const RateBound* find_bound(const std::vector<RateBound>& bounds, const std::string& label) {
    auto it = std::find_if(bounds.begin(), bounds.end(),
                           [&](const RateBound& b) { return b.label == label; });
    return it == bounds.end() ? nullptr : &*it;
}

}  // namespace gdof
