#include "gdof/sweep.hpp"

#include "gdof/closed_form.hpp"
#include "gdof/errors.hpp"
#include "gdof/high_snr.hpp"
#include "gdof/hk_achievable.hpp"
#include "gdof/outer_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <iomanip>
#include <mutex>
#include <thread>

namespace gdof {

namespace {

constexpr double kGridRound = 1e12;

double snap(double v) { return std::round(v * kGridRound) / kGridRound; }

bool on_boundary(double a) { return std::abs(a - 1.0) < 1e-12; }

void check_rhos(const std::vector<double>& rhos, int trials) {
    if (rhos.size() < 2) throw DomainError("need at least two rho values");
    for (double r : rhos) {
        if (!(r > 1.0)) throw DomainError("rho values must be > 1");
    }
    if (trials < 1) throw DomainError("trials must be >= 1");
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t cell_seed, int trial) {
    return trial == 0 ? cell_seed : derive_seed(cell_seed, static_cast<std::uint64_t>(trial), 0);
}

SlopeEstimate estimate_slopes(const SystemConfig& config, std::uint64_t seed,
                              const std::vector<double>& rhos, int trials) {
    check_rhos(rhos, trials);
    const auto catalog = recipe_catalog(config);
    std::vector<double> ach(rhos.size(), 0.0);
    std::vector<double> outer(rhos.size(), 0.0);
    std::vector<std::vector<double>> per_recipe(catalog.size(), std::vector<double>(rhos.size(), 0.0));
    for (int t = 0; t < trials; ++t) {
        const ChannelInstance channel = generate_channel(config, trial_seed(seed, t));
        for (std::size_t k = 0; k < rhos.size(); ++k) {
            ach[k] += achievable_sym_rate(channel, rhos[k]) / trials;
            const OuterEvaluation ev = min_outer_proxy(channel, rhos[k]);
            outer[k] += ev.value / trials;
            for (std::size_t r = 0; r < catalog.size(); ++r) per_recipe[r][k] += ev.per_recipe[r] / trials;
        }
    }
    SlopeEstimate out;
    out.achievable = slope_from_samples(rhos, ach);
    out.outer_sum = slope_from_samples(rhos, outer);
    for (std::size_t r = 0; r < catalog.size(); ++r) {
        out.recipe_labels.push_back(catalog[r].label);
        out.recipe_slopes.push_back(slope_from_samples(rhos, per_recipe[r]));
    }
    return out;
}

GapStudy gap_study(const SystemConfig& config, std::uint64_t seed, const std::vector<double>& rhos,
                   int trials) {
    check_rhos(rhos, trials);
    GapStudy out;
    for (double rho : rhos) out.points.push_back({rho, 0.0, 0.0, 0.0});
    for (int t = 0; t < trials; ++t) {
        const ChannelInstance channel = generate_channel(config, trial_seed(seed, t));
        for (auto& p : out.points) {
            p.achievable += achievable_sym_rate(channel, p.rho) / trials;
            p.outer += min_outer_proxy(channel, p.rho).value / 3.0 / trials;
        }
    }
    std::vector<double> gaps;
    for (auto& p : out.points) {
        p.gap = p.outer - p.achievable;
        gaps.push_back(p.gap);
    }
    out.gap_slope = slope_from_samples(rhos, gaps);
    return out;
}

std::vector<double> grid_values(double step, double max) {
    if (!(step > 0.0)) throw DomainError("step must be > 0");
    if (!(max > 0.0)) throw DomainError("max must be > 0");
    std::vector<double> out;
    for (long k = 1;; ++k) {
        const double v = snap(static_cast<double>(k) * step);
        if (v > max + 1e-9) break;
        out.push_back(v);
    }
    return out;
}

SweepResult run_sweep(const SweepOptions& options) {
    SystemConfig base{options.M, options.N, 0.5, 0.2};
    base.validate_gdof_dims();
    if (options.verify) check_rhos(options.rhos, options.trials);

    const std::vector<double> a1s = options.alpha1 ? std::vector<double>{*options.alpha1}
                                                   : grid_values(options.step, options.max);
    const std::vector<double> a2s = options.alpha2 ? std::vector<double>{*options.alpha2}
                                                   : grid_values(options.step, options.max);

    struct Cell {
        std::size_t i, j;
        double a1, a2;
    };
    SweepResult result;
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < a1s.size(); ++i) {
        for (std::size_t j = 0; j < a2s.size(); ++j) {
            const double a1 = a1s[i];
            const double a2 = a2s[j];
            if (a1 <= a2) {
                ++result.skipped_order;
            } else if (on_boundary(a1) || on_boundary(a2)) {
                ++result.skipped_boundary;
            } else {
                cells.push_back({i, j, a1, a2});
            }
        }
    }

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) {
            try {
                const Cell& cell = cells[c];
                SystemConfig config = base;
                config.alpha1 = cell.a1;
                config.alpha2 = cell.a2;
                const GdofResult g = gdof(config);
                SweepRow& row = rows[c];
                row.alpha1 = cell.a1;
                row.alpha2 = cell.a2;
                row.regime = std::string(to_string(g.regime));
                row.gdof = g.value;
                row.active_term = g.active_term;
                row.face_id = g.face_id;
                if (options.verify) {
                    const auto s = estimate_slopes(config, derive_seed(options.seed, cell.i, cell.j),
                                                   options.rhos, options.trials);
                    row.achievable_slope = s.achievable;
                    row.outer_slope = s.outer_sum;
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells.size();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
        return x.alpha1 != y.alpha1 ? x.alpha1 < y.alpha1 : x.alpha2 < y.alpha2;
    });
    for (const auto& row : rows) {
        if (row.achievable_slope) {
            result.max_achievable_dev = std::max(result.max_achievable_dev, std::abs(row.gdof - *row.achievable_slope));
        }
        if (row.outer_slope) {
            result.max_outer_dev = std::max(result.max_outer_dev, std::abs(row.gdof - *row.outer_slope / 3.0));
        }
    }
    result.rows = std::move(rows);
    return result;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const SweepResult& result, bool reproducible) {
    const bool verify = !result.rows.empty() && result.rows.front().achievable_slope.has_value();
    if (!reproducible) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        os << "# generated " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << "\n";
    }
    os << "alpha1,alpha2,regime,gdof,active_term,face_id";
    if (verify) os << ",achievable_slope,outer_slope";
    os << "\n";
    for (const auto& r : result.rows) {
        os << format_number(r.alpha1) << ',' << format_number(r.alpha2) << ',' << r.regime << ','
           << format_number(r.gdof) << ',' << r.active_term << ',' << r.face_id;
        if (verify) {
            os << ',' << format_number(r.achievable_slope.value_or(NAN)) << ','
               << format_number(r.outer_slope.value_or(NAN));
        }
        os << "\n";
    }
}

}  // namespace gdof
