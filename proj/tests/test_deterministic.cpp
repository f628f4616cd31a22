#include "gdof/closed_form.hpp"
#include "gdof/deterministic.hpp"
#include "gdof/errors.hpp"
#include "gdof/gf2.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace gdof;
using V = DetVar;

TEST_CASE("gf2 rank") {
    Gf2Matrix a(3, 70);
    a.set(0, 0, true);
    a.set(1, 69, true);
    a.set(2, 0, true);
    a.set(2, 69, true);
    CHECK(a.rank() == 2);
    a.flip(2, 5);
    CHECK(a.rank() == 3);
    CHECK(a.get(2, 5));

    Gf2Matrix b;
    b.append_rows(a);
    CHECK(b == a);
    CHECK(stacked_rank({&a, &a}) == 3);
    CHECK(Gf2Matrix(2, 2).rank() == 0);

    Gf2Matrix c(2, 3);
    c.set(0, 1, true);
    c.set(1, 2, true);
    CHECK(c.to_string() == "0 1 0\n0 0 1\n");
}

TEST_CASE("level structure of the weak example") {
    const DetChannel m = build_shift_channel({1, 2, 0.5, 0.2}, 10, 0);
    CHECK(m.input_bits() == 10);
    CHECK(m.link_levels(1, 1) == 10);
    CHECK(m.link_levels(1, 2) == 5);
    CHECK(m.link_levels(1, 3) == 2);
    CHECK(uniform_entropy(m, {V::X(1)}) == 10);
    CHECK(uniform_entropy(m, {V::V(1, 2)}) == 5);
    CHECK(uniform_entropy(m, {V::V(1, 3)}) == 2);
    // interference at receiver 1 is decodable given the intended input
    CHECK(uniform_entropy(m, {V::Y(1), V::X(1)}) - uniform_entropy(m, {V::X(1)}) == 7);
    const TermSpec p{"p", {V::X(1)}, {V::Y(1)}, {V::V(1, 2), V::V(2, 1), V::V(3, 1)}};
    CHECK(uniform_term(m, p) == 10 - 5);
}

TEST_CASE("construction limits") {
    CHECK_THROWS_AS(build_shift_channel({1, 2, 0.5, 0.2}, 1, 0), DomainError);
    CHECK_THROWS_AS(build_shift_channel({1, 2, 0.5, 0.05}, 10, 0), DomainError);
    CHECK_NOTHROW(build_shift_channel({1, 2, 0.9, 0.8}, 10, 0));
}

TEST_CASE("colliding mixing breaks decodability") {
    const SystemConfig c{1, 2, 0.5, 0.2};
    const DetChannel good = build_shift_channel(c, 10, 0);
    std::array<Gf2Matrix, 9> mixing;
    for (int tx = 1; tx <= 3; ++tx) {
        for (int rx = 1; rx <= 3; ++rx) mixing[(tx - 1) * 3 + rx - 1] = good.mixing(tx, rx);
    }
    mixing[(2 - 1) * 3 + 0] = good.mixing(3, 1);  // G21 = G31
    const DetChannel bad = make_det_channel(c, 10, 0, mixing);
    const AssumptionReport report = check_assumptions(bad);
    CHECK_FALSE(report.all_pass());
    bool intdec_failed = false;
    for (const auto& chk : report.checks) {
        if (chk.name == "intdec rx1") {
            intdec_failed = !chk.pass;
            CHECK(chk.lhs < 7);
        }
    }
    CHECK(intdec_failed);
    CHECK_THROWS_AS(det_sym_capacity(bad), DomainError);
}

TEST_CASE("capacity tracks the GDOF") {
    struct Case {
        SystemConfig c;
        int L;
        double expected;
    };
    const std::vector<Case> cases{
        {{1, 2, 0.5, 0.2}, 10, 8.0},
        {{1, 2, 1.4, 1.1}, 10, 25.0 / 3.0},
        {{1, 2, 0.9, 0.7}, 10, 23.0 / 3.0},
        {{1, 2, 1.2, 0.8}, 10, 8.0},
        {{1, 2, 1.5, 0.5}, 10, 10.0},
        {{1, 2, 0.6, 0.45}, 20, 15.5},
    };
    for (const auto& k : cases) {
        CAPTURE(k.c.alpha1);
        CAPTURE(k.c.alpha2);
        const DetChannel m = build_shift_channel(k.c, k.L, 1);
        CHECK(check_assumptions(m).all_pass());
        const DetCapacity cap = det_sym_capacity(m);
        CHECK(std::abs(cap.value - k.expected) <= 1.0);
        CHECK(std::abs(cap.value / k.L - gdof::gdof(k.c).value) <= 2.0 * k.c.M / k.L);
    }
    const DetCapacity weak = det_sym_capacity(build_shift_channel({1, 2, 0.5, 0.2}, 10, 0));
    CHECK(weak.value == doctest::Approx(8.0));
    CHECK(weak.labels.size() == 6);
    CHECK(weak.labels[weak.argmin] == "term1");
    CHECK(det_sym_capacity(build_shift_channel({1, 2, 1.5, 0.5}, 10, 0)).labels.size() == 5);
}

TEST_CASE("scaling law in L") {
    for (const SystemConfig& c : {SystemConfig{1, 2, 0.5, 0.2}, SystemConfig{1, 2, 0.9, 0.7},
                                  SystemConfig{2, 5, 0.8, 0.6}, SystemConfig{1, 2, 1.4, 1.1}}) {
        for (int L : {10, 20, 40}) {
            const DetChannel m = build_shift_channel(c, L, 3);
            CHECK(std::abs(det_sym_capacity(m).value / L - gdof::gdof(c).value) <= 2.0 * c.M / L);
        }
    }
}

TEST_CASE("assumptions hold on random seeds") {
    for (const SystemConfig& c : {SystemConfig{1, 2, 0.5, 0.2}, SystemConfig{1, 2, 1.2, 0.8},
                                  SystemConfig{1, 2, 1.4, 1.1}}) {
        int passed = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            if (check_assumptions(build_shift_channel(c, 10, seed)).all_pass()) ++passed;
        }
        CHECK(passed >= 99);
    }
}

TEST_CASE("enumeration agrees with ranks") {
    const DetChannel m = build_shift_channel({1, 2, 0.5, 0.25}, 4, 0);
    std::vector<TermSpec> terms;
    for (const auto& b : weak_error_bounds(m)) terms.push_back(b.term);
    for (const auto& t : capacity_terms(m)) {
        for (const auto& part : t.parts) terms.push_back(part.second);
    }
    const auto brute = brute_force_terms(m, uniform_pmfs(m), terms);
    REQUIRE(brute.size() == terms.size());
    for (const auto& [t, bits] : brute) CHECK(std::abs(bits - uniform_term(m, t)) <= 1e-9);

    InputPmfs point = uniform_pmfs(m);
    for (auto& p : point) {
        std::fill(p.begin(), p.end(), 0.0);
        p[3] = 1.0;
    }
    for (const auto& [t, bits] : brute_force_terms(m, point, terms)) CHECK(std::abs(bits) <= 1e-12);

    InputPmfs broken = uniform_pmfs(m);
    broken[0][0] += 0.5;
    CHECK_THROWS_AS(brute_force_terms(m, broken, terms), DomainError);
    CHECK_THROWS_AS(brute_force_terms(build_shift_channel({1, 2, 0.5, 0.2}, 10, 0),
                                      uniform_pmfs(build_shift_channel({1, 2, 0.5, 0.2}, 10, 0)), terms),
                    DomainError);
}

TEST_CASE("reduced bound list gives the same sum rate") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const DetChannel m = build_shift_channel({1, 2, 0.5, 0.25}, 4, seed);
        CHECK(weak_error_bounds(m).size() == 18);
        CHECK(weak_reduced_bounds(m).size() == 9);
        const double full = bound_lp_value(m, weak_error_bounds(m));
        CHECK(full == doctest::Approx(bound_lp_value(m, weak_reduced_bounds(m))));
        CHECK(full == doctest::Approx(det_sym_capacity(m).value));
    }
    CHECK_THROWS_AS(weak_error_bounds(build_shift_channel({1, 2, 1.5, 0.5}, 10, 0)), DomainError);
}

TEST_CASE("dump listing") {
    const DetChannel m = build_shift_channel({1, 2, 0.5, 0.2}, 10, 7);
    const std::string d = m.dump();
    std::istringstream is(d);
    std::string line;
    std::getline(is, line);
    CHECK(line == "L=10 M=1 N=2 alpha1=0.5 alpha2=0.2 seed=7");
    std::getline(is, line);
    CHECK(line == "G11 levels=10");
    int rows = 0;
    int headers = 1;
    while (std::getline(is, line)) {
        if (line.rfind("G", 0) == 0) {
            ++headers;
        } else {
            CHECK(line.find_first_not_of("01 ") == std::string::npos);
            ++rows;
        }
    }
    CHECK(headers == 9);
    CHECK(rows == 9 * 2);
    CHECK(d == build_shift_channel({1, 2, 0.5, 0.2}, 10, 7).dump());
}
