#include "gdof/closed_form.hpp"
#include "gdof/errors.hpp"
#include "gdof/sweep.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace gdof;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("grid values") {
    const auto g = grid_values(0.05, 2.0);
    CHECK(g.size() == 40);
    CHECK(g.front() == 0.05);
    CHECK(g.back() == 2.0);
    CHECK(g[19] == 1.0);
    CHECK(g[2] == 0.15);
    CHECK_THROWS_AS(grid_values(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(grid_values(0.1, -1.0), DomainError);
}

TEST_CASE("full grid") {
    SweepOptions opt;
    const SweepResult r = run_sweep(opt);
    CHECK(r.rows.size() == 741);
    CHECK(r.skipped_order == 820);
    CHECK(r.skipped_boundary == 39);
    double lowest = 10.0;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const auto& row = r.rows[k];
        lowest = std::min(lowest, row.gdof);
        CHECK(row.gdof <= 1.0 + 1e-12);
        CHECK(row.alpha1 > row.alpha2);
        if (k) {
            const auto& prev = r.rows[k - 1];
            CHECK((prev.alpha1 < row.alpha1 || (prev.alpha1 == row.alpha1 && prev.alpha2 < row.alpha2)));
        }
    }
    CHECK(lowest >= 2.0 / 3.0 - 1e-12);
}

TEST_CASE("thread count does not change the output") {
    SweepOptions a;
    a.step = 0.1;
    a.threads = 1;
    SweepOptions b = a;
    b.threads = 7;
    std::ostringstream sa, sb;
    write_csv(sa, run_sweep(a), true);
    write_csv(sb, run_sweep(b), true);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("alpha2 slice crosses the weak faces") {
    SweepOptions opt;
    opt.step = 0.01;
    opt.max = 0.99;
    opt.alpha2 = 0.2;
    const SweepResult r = run_sweep(opt);
    REQUIRE(!r.rows.empty());
    std::vector<int> faces;
    for (const auto& row : r.rows) {
        CHECK(row.alpha2 == 0.2);
        if (faces.empty() || faces.back() != row.face_id) faces.push_back(row.face_id);
    }
    // near the diagonal, then the IAN face, then back to face 4 near alpha1 = 1
    CHECK(faces == std::vector<int>{4, 2, 1, 3, 4});
}

TEST_CASE("csv rows re-parse to valid results") {
    SweepOptions opt;
    opt.step = 0.25;
    const SweepResult r = run_sweep(opt);
    std::ostringstream os;
    write_csv(os, r, true);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "alpha1,alpha2,regime,gdof,active_term,face_id");
    std::size_t count = 0;
    while (std::getline(is, line)) {
        const auto f = split(line, ',');
        REQUIRE(f.size() == 6);
        const SystemConfig c{1, 2, std::stod(f[0]), std::stod(f[1])};
        const GdofResult g = gdof::gdof(c);
        CHECK(f[2] == std::string(to_string(g.regime)));
        CHECK(std::stod(f[3]) == doctest::Approx(g.value).epsilon(1e-9));
        CHECK(std::stoi(f[5]) == g.face_id);
        CHECK(std::abs(face_value(c, std::stoi(f[5])) - std::stod(f[3])) < 1e-9);
        ++count;
    }
    CHECK(count == r.rows.size());

    std::ostringstream stamped;
    write_csv(stamped, r, false);
    CHECK(stamped.str().rfind("# generated ", 0) == 0);
}

TEST_CASE("verify columns") {
    SweepOptions opt;
    opt.alpha1 = 1.5;
    opt.alpha2 = 0.5;
    opt.verify = true;
    opt.trials = 2;
    const SweepResult r = run_sweep(opt);
    REQUIRE(r.rows.size() == 1);
    REQUIRE(r.rows[0].achievable_slope.has_value());
    CHECK(std::abs(*r.rows[0].achievable_slope - 1.0) < 0.05);
    std::ostringstream os;
    write_csv(os, r, true);
    CHECK(os.str().rfind("alpha1,alpha2,regime,gdof,active_term,face_id,achievable_slope,outer_slope\n", 0) == 0);
    CHECK_THROWS_AS(estimate_slopes({1, 2, 1.5, 0.5}, 0, {1e6}, 1), DomainError);
    CHECK_THROWS_AS(estimate_slopes({1, 2, 1.5, 0.5}, 0, {1e6, 1e9}, 0), DomainError);
}

TEST_CASE("gap stays bounded") {
    const GapStudy g = gap_study({1, 2, 0.9, 0.7}, 0, {1e4, 1e6, 1e8}, 4);
    REQUIRE(g.points.size() == 3);
    CHECK(std::abs(g.gap_slope) < 0.05);
    CHECK(trial_seed(5, 0) == 5);
    CHECK(trial_seed(5, 1) != 5);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.8) == "0.8");
    CHECK(format_number(2.0 / 3.0) == "0.6666666667");
    CHECK(format_number(1.0) == "1");
}
