#pragma once

#include "gdof/channel_model.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gdof {

/// Rate-splitting layer classes: c1 is decodable at both cross receivers, c2 only at the
/// strong-cross receiver, p is private. The strong regime sends one layer, labelled c1.
enum class LayerClass { C1 = 0, C2 = 1, P = 2 };

std::string_view to_string(LayerClass cls);

/// One message layer of one transmitter, e.g. {3, C2} is "3c2".
struct MessageLayer {
    int tx = 1;
    LayerClass cls = LayerClass::C1;

    std::string label() const;
    bool operator==(const MessageLayer&) const = default;
};

/// Layered power split and the decoding order used at receiver 1 (other receivers
/// follow by the cyclic symmetry of the channel).
struct LayerPlan {
    SystemConfig config;
    Regime regime = Regime::Weak;
    std::vector<LayerClass> classes;             // layers each transmitter sends
    std::vector<MessageLayer> decode_set;        // jointly decoded first
    std::vector<MessageLayer> treated_as_noise;  // arrive at (or below) the noise floor
    std::optional<MessageLayer> private_layer;   // decoded after the commons

    /// Transmit power of a layer class; the powers of `classes` sum to 1.
    double power(LayerClass cls, double rho) const;

    /// power * rho^e(tx -> 1): covariance scale of the layer at receiver 1.
    double arrival_scale(const MessageLayer& layer, double rho) const;

    bool has_class(LayerClass cls) const;
};

/// Power split and decode sets for the regime of `config`.
LayerPlan decode_catalog(const SystemConfig& config);

/// w . (Rc1, Rc2, Rp) <= value, one per error event.
struct RateBound {
    std::string label;
    std::array<int, 3> weights{};
    double value = 0.0;
};

struct RatePoint {
    double Rc1 = 0.0;
    double Rc2 = 0.0;
    double Rp = 0.0;
    double R = 0.0;
};

/// Every nonempty subset of the joint decode set at receiver 1, plus the private-stage
/// bound when the plan has one. Requires rho > 1.
std::vector<RateBound> generate_bounds(const ChannelInstance& channel, double rho);

/// Largest Rc1 + Rc2 + Rp meeting every bound; classes missing from the plan are pinned to 0.
RatePoint max_symmetric_rate(const std::vector<RateBound>& bounds, const LayerPlan& plan);

/// generate_bounds followed by max_symmetric_rate; returns R.
double achievable_sym_rate(const ChannelInstance& channel, double rho);

/// Bound with the given label (labels list layers in decode-set order, e.g. "{1c1,2c1}").
const RateBound* find_bound(const std::vector<RateBound>& bounds, const std::string& label);

}  // namespace gdof
