#include "gdof/channel_model.hpp"
#include "gdof/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gdof;

TEST_CASE("config validation") {
    CHECK_NOTHROW(SystemConfig{1, 2, 0.5, 0.2}.validate());
    CHECK_THROWS_AS(SystemConfig({0, 2, 0.5, 0.2}).validate(), DomainError);
    CHECK_THROWS_AS(SystemConfig({1, 2, 0.5, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(SystemConfig({1, 2, 0.3, 0.3}).validate(), DomainError);
    CHECK_THROWS_AS(SystemConfig({1, 2, 0.2, 0.3}).validate(), DomainError);

    CHECK_NOTHROW(SystemConfig{2, 5, 0.5, 0.2}.validate_gdof_dims());
    CHECK_THROWS_AS(SystemConfig({1, 3, 0.5, 0.2}).validate_gdof_dims(), DomainError);
    CHECK_THROWS_AS(SystemConfig({2, 3, 0.5, 0.2}).validate_gdof_dims(), DomainError);
}

TEST_CASE("regime classification") {
    CHECK(SystemConfig{1, 2, 0.5, 0.2}.regime() == Regime::Weak);
    CHECK(SystemConfig{1, 2, 1.5, 0.5}.regime() == Regime::Mixed);
    CHECK(SystemConfig{1, 2, 1.4, 1.1}.regime() == Regime::Strong);
    CHECK_THROWS_AS(SystemConfig({1, 2, 1.0, 0.5}).regime(), BoundaryError);
    CHECK_THROWS_AS(SystemConfig({1, 2, 1.5, 1.0}).regime(), BoundaryError);
    CHECK(to_string(Regime::Mixed) == "MIXED");
}

TEST_CASE("cyclic link exponents") {
    const SystemConfig c{1, 2, 0.7, 0.3};
    for (int u = 1; u <= 3; ++u) {
        CHECK(link_exponent(c, u, u) == 1.0);
        CHECK(link_exponent(c, u, strong_receiver(u)) == 0.7);
        CHECK(link_exponent(c, u, weak_receiver(u)) == 0.3);
        CHECK(strong_interferer(strong_receiver(u)) == u);
        CHECK(weak_interferer(weak_receiver(u)) == u);
        CHECK(next_user(prev_user(u)) == u);
    }
    CHECK(link_exponent(c, 1, 2) == 0.7);
    CHECK(link_exponent(c, 2, 3) == 0.7);
    CHECK(link_exponent(c, 3, 1) == 0.7);
    CHECK(link_exponent(c, 2, 1) == 0.3);
    CHECK_THROWS_AS(link_exponent(c, 0, 1), DomainError);
}

TEST_CASE("channel generation is seeded and well conditioned") {
    const SystemConfig c{2, 5, 0.5, 0.2};
    const auto a = generate_channel(c, 11);
    const auto b = generate_channel(c, 11);
    const auto d = generate_channel(c, 12);
    CHECK(a == b);
    CHECK_FALSE(a == d);
    for (int tx = 1; tx <= 3; ++tx) {
        for (int rx = 1; rx <= 3; ++rx) {
            const auto& H = a.h(tx, rx);
            REQUIRE(H.rows() == 5);
            REQUIRE(H.cols() == 2);
            Eigen::JacobiSVD<CMatrix> svd(H);
            const auto s = svd.singularValues();
            CHECK(s(0) / s(s.size() - 1) < kMaxConditionNumber);
        }
    }
}

TEST_CASE("derived seeds") {
    CHECK(derive_seed(0, 1, 2) == derive_seed(0, 1, 2));
    CHECK(derive_seed(0, 1, 2) != derive_seed(0, 2, 1));
    CHECK(derive_seed(0, 1, 2) != derive_seed(1, 1, 2));
}

TEST_CASE("received covariance sums scaled Gram matrices") {
    const SystemConfig c{1, 2, 0.5, 0.2};
    const auto ch = generate_channel(c, 3);
    const double rho = 100.0;
    const std::vector<TxLayer> layers{{1, 1.0}, {2, 0.5}};
    const CMatrix got = received_covariance(ch, 1, layers, rho);
    const CMatrix want = rho * ch.h(1, 1) * ch.h(1, 1).adjoint() +
                         0.5 * std::pow(rho, 0.2) * ch.h(2, 1) * ch.h(2, 1).adjoint();
    CHECK((got - want).norm() < 1e-9 * want.norm());
    const CMatrix f = arrival_factor(ch, 2, 1, 0.5, rho);
    CHECK((f * f.adjoint() - 0.5 * std::pow(rho, 0.2) * ch.h(2, 1) * ch.h(2, 1).adjoint()).norm() < 1e-9);
}

TEST_CASE("log-det routes agree") {
    const SystemConfig c{2, 5, 0.5, 0.2};
    const auto ch = generate_channel(c, 5);
    const CMatrix S = arrival_factor(ch, 1, 1, 1.0, 1e3);
    const CMatrix W = arrival_factor(ch, 2, 1, 1.0, 1e3);
    const CMatrix noise = CMatrix::Identity(5, 5) + W * W.adjoint();
    const double whitened = logdet_rate(S * S.adjoint(), noise);
    const double factored = logdet_rate_factored(S, W);
    CHECK(whitened == doctest::Approx(factored).epsilon(1e-9));

    // log2 |I + G G^H| against a direct Cholesky determinant.
    Eigen::LLT<CMatrix> llt(CMatrix::Identity(5, 5) + S * S.adjoint());
    double direct = 0.0;
    for (int k = 0; k < 5; ++k) direct += 2.0 * std::log2(llt.matrixLLT()(k, k).real());
    CHECK(logdet_gram(S) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(logdet_gram(CMatrix(5, 0)) == 0.0);
}

TEST_CASE("logdet_rate special cases") {
    const CMatrix I = CMatrix::Identity(2, 2);
    CHECK(logdet_rate(CMatrix::Zero(2, 2), I) == 0.0);
    // Scalar rate log2(1 + 3).
    CHECK(logdet_rate(3.0 * I, I) == doctest::Approx(4.0));
    CMatrix bad = I;
    bad(0, 0) = -1.0;
    CHECK_THROWS_AS(logdet_rate(I, bad), DomainError);
    CMatrix asym = I;
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(logdet_rate(asym, I), DomainError);
}
