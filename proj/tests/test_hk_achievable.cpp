#include "gdof/closed_form.hpp"
#include "gdof/errors.hpp"
#include "gdof/high_snr.hpp"
#include "gdof/hk_achievable.hpp"
#include "gdof/vertex_lp.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

using namespace gdof;

namespace {

double averaged_slope(const SystemConfig& c, int trials) {
    const std::array<double, 2> rhos{1e6, 1e9};
    std::array<double, 2> avg{0.0, 0.0};
    for (int t = 0; t < trials; ++t) {
        const ChannelInstance ch = generate_channel(c, derive_seed(11, t, 0));
        for (int k = 0; k < 2; ++k) avg[k] += achievable_sym_rate(ch, rhos[k]) / trials;
    }
    return slope_from_samples(rhos, avg);
}

}  // namespace

TEST_CASE("vertex LP") {
    std::vector<LinearConstraint> cs{{{1, 0, 0}, 1.0}, {{0, 1, 0}, 2.0}, {{0, 0, 1}, 3.0}, {{1, 1, 1}, 4.0}};
    LpVertex v = maximize_sum(cs);
    CHECK(v.objective == doctest::Approx(4.0));

    cs = {{{2, 1, 0}, 2.0}, {{0, 1, 1}, 1.0}, {{1, 0, 0}, 5.0}};
    v = maximize_sum(cs);
    CHECK(v.objective == doctest::Approx(2.0));
    for (double x : v.x) CHECK(x >= -1e-12);

    cs = {{{1, 0, 0}, 1.0}, {{0, 1, 0}, 1.0}};
    CHECK_THROWS_AS(maximize_sum(cs), NumericalError);
    cs = {{{1, -1, 0}, 1.0}, {{0, 1, 0}, 1.0}, {{0, 0, 1}, 1.0}};
    CHECK_THROWS_AS(maximize_sum(cs), NumericalError);
}

TEST_CASE("decode catalog per regime") {
    const LayerPlan weak = decode_catalog({1, 2, 0.5, 0.2});
    CHECK(weak.classes.size() == 3);
    CHECK(weak.decode_set.size() == 5);
    CHECK(weak.private_layer.has_value());
    const double rho = 1e6;
    CHECK(weak.power(LayerClass::C1, rho) + weak.power(LayerClass::C2, rho) + weak.power(LayerClass::P, rho) ==
          doctest::Approx(1.0));
    // the private layer of user 3 lands at the noise floor of receiver 1
    CHECK(weak.arrival_scale({3, LayerClass::P}, rho) == doctest::Approx(1.0));

    const LayerPlan mixed = decode_catalog({1, 2, 1.5, 0.5});
    CHECK_FALSE(mixed.has_class(LayerClass::P));
    CHECK_FALSE(mixed.private_layer.has_value());
    CHECK(mixed.power(LayerClass::C1, rho) + mixed.power(LayerClass::C2, rho) == doctest::Approx(1.0));

    const LayerPlan strong = decode_catalog({1, 2, 1.4, 1.1});
    CHECK(strong.classes.size() == 1);
    CHECK(strong.decode_set.size() == 3);
    CHECK(strong.power(LayerClass::C1, rho) == 1.0);
}

TEST_CASE("bound generation") {
    const ChannelInstance ch = generate_channel({1, 2, 0.5, 0.2}, 0);
    const auto bounds = generate_bounds(ch, 1e6);
    CHECK(bounds.size() == 32);
    const RateBound* all = find_bound(bounds, "{1c1,1c2,2c1,3c1,3c2}");
    REQUIRE(all != nullptr);
    CHECK(all->weights == std::array<int, 3>{3, 2, 0});
    const RateBound* priv = find_bound(bounds, "{1p}");
    REQUIRE(priv != nullptr);
    CHECK(priv->weights == std::array<int, 3>{0, 0, 1});
    CHECK(find_bound(bounds, "{9x}") == nullptr);
    for (const auto& b : bounds) CHECK(b.value >= 0.0);
    CHECK_THROWS_AS(generate_bounds(ch, 1.0), DomainError);

    const ChannelInstance strong = generate_channel({1, 2, 1.4, 1.1}, 0);
    CHECK(generate_bounds(strong, 1e6).size() == 7);
}

TEST_CASE("bound slopes") {
    const SystemConfig c{1, 2, 0.5, 0.2};
    const std::array<double, 2> rhos{1e6, 1e9};
    const std::vector<std::pair<std::string, double>> expected{
        {"{1p}", 1 - 0.5}, {"{2c1}", 0.2}, {"{1c1,1c2,2c1,3c1,3c2}", 2 * 0.5}};
    for (const auto& [label, slope] : expected) {
        std::array<double, 2> avg{0.0, 0.0};
        for (int t = 0; t < 8; ++t) {
            const ChannelInstance ch = generate_channel(c, derive_seed(3, t, 0));
            for (int k = 0; k < 2; ++k) avg[k] += find_bound(generate_bounds(ch, rhos[k]), label)->value / 8;
        }
        CAPTURE(label);
        CHECK(std::abs(slope_from_samples(rhos, avg) - slope) <= 0.05);
    }
}

TEST_CASE("missing classes are pinned to zero") {
    const ChannelInstance ch = generate_channel({1, 2, 1.4, 1.1}, 0);
    const auto bounds = generate_bounds(ch, 1e6);
    const RatePoint p = max_symmetric_rate(bounds, decode_catalog(ch.config()));
    CHECK(p.Rc2 == 0.0);
    CHECK(p.Rp == 0.0);
    CHECK(p.R == doctest::Approx(p.Rc1));
    CHECK_THROWS_AS(max_symmetric_rate({}, decode_catalog(ch.config())), DomainError);
}

TEST_CASE("achievable rate grows with the closed-form slope") {
    // points where the finite-SNR slope has settled
    for (auto [a1, a2] : std::vector<std::pair<double, double>>{{1.5, 0.5}, {1.4, 1.1}, {1.2, 0.8}, {0.6, 0.45}}) {
        const SystemConfig c{1, 2, a1, a2};
        CAPTURE(a1);
        CAPTURE(a2);
        CHECK(std::abs(averaged_slope(c, 8) - gdof::gdof(c).value) <= 0.03);
    }
}

TEST_CASE("rates are monotone in rho") {
    const ChannelInstance ch = generate_channel({1, 2, 0.9, 0.7}, 5);
    double prev = 0.0;
    for (double rho : {1e2, 1e4, 1e6, 1e8}) {
        const double r = achievable_sym_rate(ch, rho);
        CHECK(r > prev);
        prev = r;
    }
}
