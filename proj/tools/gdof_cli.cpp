#include "gdof/closed_form.hpp"
#include "gdof/deterministic.hpp"
#include "gdof/errors.hpp"
#include "gdof/high_snr.hpp"
#include "gdof/hk_achievable.hpp"
#include "gdof/outer_bounds.hpp"
#include "gdof/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gdof;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    std::vector<double> rhos;
    bool reproducible = false;
    int trials = 8;
    std::string out;
};

struct Point {
    int m = 1;
    int n = 2;
    double a1 = 0.5;
    double a2 = 0.2;

    SystemConfig config() const { return {m, n, a1, a2}; }
};

// Rows of one CSV table; the first row is the header.
using Table = std::vector<std::vector<std::string>>;

std::string num(double v) { return format_number(v); }

std::string timestamp_line() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream os;
    os << "# generated " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << "\n";
    return os.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + path);
    return f;
}

void emit_table(const Globals& g, const Table& table) {
    if (g.out.empty()) return;
    std::ofstream f = open_out(g.out);
    if (!g.reproducible) f << timestamp_line();
    for (const auto& row : table) {
        for (std::size_t k = 0; k < row.size(); ++k) f << (k ? "," : "") << row[k];
        f << "\n";
    }
    if (!f) throw IoError("write failed: " + g.out);
}

std::vector<double> rhos_or(const Globals& g, std::vector<double> fallback) {
    return g.rhos.empty() ? fallback : g.rhos;
}

void add_point_options(CLI::App* cmd, Point& p) {
    cmd->add_option("--m", p.m, "transmit antennas")->capture_default_str();
    cmd->add_option("--n", p.n, "receive antennas")->capture_default_str();
    cmd->add_option("--a1", p.a1, "strong cross exponent alpha1")->capture_default_str();
    cmd->add_option("--a2", p.a2, "weak cross exponent alpha2")->capture_default_str();
}

void cmd_gdof(const Globals& g, const Point& p) {
    const SystemConfig c = p.config();
    const GdofResult r = gdof::gdof(c);
    std::cout << "gdof        " << num(r.value) << "\n"
              << "regime      " << to_string(r.regime) << "\n"
              << "active term " << r.active_term << "\n"
              << "face        " << r.face_id << "\n";
    const std::vector<std::string> row{num(c.alpha1), num(c.alpha2), std::string(to_string(r.regime)),
                                       num(r.value), r.active_term, std::to_string(r.face_id)};
    for (std::size_t k = 0; k < row.size(); ++k) std::cout << (k ? "," : "") << row[k];
    std::cout << "\n";
    emit_table(g, {{"alpha1", "alpha2", "regime", "gdof", "active_term", "face_id"}, row});
}

struct SweepArgs {
    Point p;
    double step = 0.05;
    double max = 2.0;
    bool verify = false;
    unsigned threads = 0;
};

void cmd_sweep(const Globals& g, const SweepArgs& a, const CLI::App* cmd) {
    SweepOptions o;
    o.M = a.p.m;
    o.N = a.p.n;
    o.step = a.step;
    o.max = a.max;
    if (cmd->count("--a1")) o.alpha1 = a.p.a1;
    if (cmd->count("--a2")) o.alpha2 = a.p.a2;
    o.verify = a.verify;
    o.rhos = rhos_or(g, {1e6, 1e9});
    o.trials = g.trials;
    o.seed = g.seed;
    o.threads = a.threads;
    const SweepResult r = run_sweep(o);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!g.out.empty()) {
        file = open_out(g.out);
        os = &file;
    }
    write_csv(*os, r, g.reproducible);
    if (!*os) throw IoError("write failed: " + g.out);

    std::ostream& log = g.out.empty() ? std::cerr : std::cout;
    double min_gdof = INFINITY;
    const SweepRow* at = nullptr;
    for (const auto& row : r.rows) {
        if (row.gdof < min_gdof) {
            min_gdof = row.gdof;
            at = &row;
        }
    }
    log << "rows " << r.rows.size() << ", skipped " << r.skipped_order << " (alpha1 <= alpha2) and "
        << r.skipped_boundary << " (alpha = 1)\n";
    if (at) log << "min gdof " << num(min_gdof) << " at (" << num(at->alpha1) << ", " << num(at->alpha2) << ")\n";
    if (a.verify) {
        log << "max |gdof - achievable_slope| = " << num(r.max_achievable_dev) << "\n"
            << "max |gdof - outer_slope/3| = " << num(r.max_outer_dev) << "\n";
    }
}

struct LemmaArgs {
    int r = 1;
    int n = 2;
    std::vector<double> exps{1.0, 0.5, 0.0};
};

void cmd_verify_lemma(const Globals& g, const LemmaArgs& a) {
    PrelogSpec spec;
    spec.r = a.r;
    spec.N = a.n;
    if (a.exps.empty() || a.exps.size() > 3) throw DomainError("--exps takes one to three values");
    spec.exps = {0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < a.exps.size(); ++k) spec.exps[k] = a.exps[k];
    const double predicted = predicted_prelog(spec);
    const auto h = random_factors(spec, g.seed);
    const auto rhos = rhos_or(g, {1e8, 1e10});
    std::vector<double> values;
    for (double rho : rhos) values.push_back(numeric_logdet(spec, h[0], h[1], h[2], rho));
    const double measured = slope_from_samples(rhos, values);
    std::cout << "predicted " << num(predicted) << "\nmeasured  " << num(measured) << "\n"
              << "abs error " << num(std::abs(measured - predicted)) << "\n";
    Table t{{"rho", "logdet"}};
    for (std::size_t k = 0; k < rhos.size(); ++k) t.push_back({num(rhos[k]), num(values[k])});
    t.push_back({"predicted", num(predicted)});
    t.push_back({"measured", num(measured)});
    emit_table(g, t);
}

void cmd_achievable(const Globals& g, const Point& p) {
    const SystemConfig c = p.config();
    const auto rhos = rhos_or(g, {1e6, 1e9});
    const LayerPlan plan = decode_catalog(c);
    Table t{{"rho", "Rc1", "Rc2", "Rp", "R"}};
    std::vector<double> rates;
    for (double rho : rhos) {
        RatePoint mean;
        for (int k = 0; k < g.trials; ++k) {
            const auto channel = generate_channel(c, trial_seed(g.seed, k));
            const RatePoint pt = max_symmetric_rate(generate_bounds(channel, rho), plan);
            mean.Rc1 += pt.Rc1 / g.trials;
            mean.Rc2 += pt.Rc2 / g.trials;
            mean.Rp += pt.Rp / g.trials;
            mean.R += pt.R / g.trials;
        }
        rates.push_back(mean.R);
        t.push_back({num(rho), num(mean.Rc1), num(mean.Rc2), num(mean.Rp), num(mean.R)});
        std::cout << "rho " << num(rho) << "  R " << num(mean.R) << "  (Rc1 " << num(mean.Rc1) << ", Rc2 "
                  << num(mean.Rc2) << ", Rp " << num(mean.Rp) << ")\n";
    }
    const double slope = slope_from_samples(rhos, rates);
    std::cout << "slope " << num(slope) << "  gdof " << num(gdof::gdof(c).value) << "\n";
    t.push_back({"slope", num(slope)});
    emit_table(g, t);
}

void cmd_outer(const Globals& g, const Point& p) {
    const SystemConfig c = p.config();
    const auto rhos = rhos_or(g, {1e6, 1e9});
    const auto s = estimate_slopes(c, g.seed, rhos, g.trials);
    Table t{{"recipe", "sum_slope", "per_user_slope"}};
    std::size_t best = 0;
    for (std::size_t k = 0; k < s.recipe_labels.size(); ++k) {
        if (s.recipe_slopes[k] < s.recipe_slopes[best]) best = k;
        std::cout << std::left << std::setw(20) << s.recipe_labels[k] << " slope/3 " << num(s.recipe_slopes[k] / 3.0)
                  << "\n";
        t.push_back({s.recipe_labels[k], num(s.recipe_slopes[k]), num(s.recipe_slopes[k] / 3.0)});
    }
    std::cout << "min-recipe slope/3 " << num(s.outer_sum / 3.0) << "  active " << s.recipe_labels[best]
              << "  gdof " << num(gdof::gdof(c).value) << "\n";
    t.push_back({"min", num(s.outer_sum), num(s.outer_sum / 3.0)});
    emit_table(g, t);
}

void cmd_gap(const Globals& g, const Point& p) {
    const SystemConfig c = p.config();
    const auto study = gap_study(c, g.seed, rhos_or(g, {1e4, 1e6, 1e8}), g.trials);
    Table t{{"rho", "achievable", "outer", "gap"}};
    for (const auto& pt : study.points) {
        std::cout << "rho " << num(pt.rho) << "  R " << num(pt.achievable) << "  outer/3 " << num(pt.outer)
                  << "  gap " << num(pt.gap) << "\n";
        t.push_back({num(pt.rho), num(pt.achievable), num(pt.outer), num(pt.gap)});
    }
    std::cout << "gap slope " << num(study.gap_slope) << "\n";
    t.push_back({"gap_slope", num(study.gap_slope)});
    emit_table(g, t);
}

struct DetArgs {
    Point p;
    int levels = 10;
    std::string dump;
};

void cmd_det(const Globals& g, const DetArgs& a) {
    const SystemConfig c = a.p.config();
    const DetChannel model = build_shift_channel(c, a.levels, g.seed);
    if (!a.dump.empty()) {
        std::ofstream f = open_out(a.dump);
        f << model.dump();
        if (!f) throw IoError("write failed: " + a.dump);
    }
    const AssumptionReport report = check_assumptions(model);
    std::cout << "assumptions " << (report.all_pass() ? "PASS" : "FAIL") << " (" << report.checks.size()
              << " checks, " << report.failures() << " failed)\n";
    for (const auto& ch : report.checks) {
        if (!ch.pass) std::cout << "  failed: " << ch.name << " (" << num(ch.lhs) << " vs " << num(ch.rhs) << ")\n";
    }
    Table t{{"term", "bits"}};
    const double target = a.levels * gdof::gdof(c).value;
    if (report.all_pass()) {
        const DetCapacity cap = det_sym_capacity(model);
        for (std::size_t k = 0; k < cap.labels.size(); ++k) {
            std::cout << "  " << cap.labels[k] << " " << num(cap.term_values[k]) << "\n";
            t.push_back({cap.labels[k], num(cap.term_values[k])});
        }
        std::cout << "capacity " << num(cap.value) << " (" << cap.labels[cap.argmin] << ")\n"
                  << "target   " << num(target) << " = levels * gdof\n"
                  << "C/L      " << num(cap.value / a.levels) << " vs gdof " << num(gdof::gdof(c).value) << "\n";
        t.push_back({"capacity", num(cap.value)});
    }
    t.push_back({"target", num(target)});
    emit_table(g, t);
    if (!report.all_pass()) throw DomainError("deterministic model assumptions fail");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GDOF of the 3-user partially asymmetric MIMO interference channel"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file with the same keys as the flags");

    Globals g;
    app.add_option("--seed", g.seed, "channel seed")->capture_default_str();
    app.add_option("--rhos", g.rhos, "comma separated SNR values")->delimiter(',');
    app.add_flag("--reproducible", g.reproducible, "omit the timestamp comment from CSV output");
    app.add_option("--trials", g.trials, "channel draws averaged for finite-SNR rates")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "CSV output path");

    Point gp;
    auto* gdof_cmd = app.add_subcommand("gdof", "closed-form GDOF at one point");
    add_point_options(gdof_cmd, gp);

    SweepArgs sa;
    auto* sweep_cmd = app.add_subcommand("sweep", "GDOF over an (alpha1, alpha2) grid");
    add_point_options(sweep_cmd, sa.p);
    sweep_cmd->add_option("--step", sa.step, "grid step")->capture_default_str();
    sweep_cmd->add_option("--max", sa.max, "largest grid value")->capture_default_str();
    sweep_cmd->add_flag("--verify", sa.verify, "add achievable and outer slopes per cell");
    sweep_cmd->add_option("--threads", sa.threads, "worker threads (0: all cores)");

    LemmaArgs la;
    auto* lemma_cmd = app.add_subcommand("verify-lemma", "numeric prelog of a sum of scaled Gram matrices");
    lemma_cmd->add_option("--r", la.r, "columns per term")->capture_default_str();
    lemma_cmd->add_option("--n", la.n, "rows")->capture_default_str();
    lemma_cmd->add_option("--exps", la.exps, "nonincreasing exponents")->delimiter(',');

    Point ap;
    auto* ach_cmd = app.add_subcommand("achievable", "rate-splitting symmetric rate per rho");
    add_point_options(ach_cmd, ap);

    Point op;
    auto* outer_cmd = app.add_subcommand("outer", "side-information outer bound slopes");
    add_point_options(outer_cmd, op);

    Point gap_p;
    auto* gap_cmd = app.add_subcommand("gap", "outer proxy minus achievable rate per rho");
    add_point_options(gap_cmd, gap_p);

    DetArgs da;
    auto* det_cmd = app.add_subcommand("det", "deterministic model capacity");
    add_point_options(det_cmd, da.p);
    det_cmd->add_option("--levels", da.levels, "levels per direct link")->capture_default_str();
    det_cmd->add_option("--dump", da.dump, "write the model matrices to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gdof_cmd->parsed()) cmd_gdof(g, gp);
        else if (sweep_cmd->parsed()) cmd_sweep(g, sa, sweep_cmd);
        else if (lemma_cmd->parsed()) cmd_verify_lemma(g, la);
        else if (ach_cmd->parsed()) cmd_achievable(g, ap);
        else if (outer_cmd->parsed()) cmd_outer(g, op);
        else if (gap_cmd->parsed()) cmd_gap(g, gap_p);
        else if (det_cmd->parsed()) cmd_det(g, da);
    } catch (const BoundaryError& e) {
        std::cerr << "boundary error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
