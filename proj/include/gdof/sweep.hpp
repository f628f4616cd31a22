#pragma once

#include "gdof/channel_model.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gdof {

/// Finite-SNR slopes, from rates averaged over `trials` channel draws.
struct SlopeEstimate {
    double achievable = 0.0;   // per-user rate slope
    double outer_sum = 0.0;    // slope of the min-recipe proxy on R1 + R2 + R3
    std::vector<std::string> recipe_labels;
    std::vector<double> recipe_slopes;  // per-recipe sum-rate slopes
};

/// Seed of trial t for a cell whose seed is `cell_seed` (trial 0 uses the cell seed).
std::uint64_t trial_seed(std::uint64_t cell_seed, int trial);

SlopeEstimate estimate_slopes(const SystemConfig& config, std::uint64_t seed,
                              const std::vector<double>& rhos, int trials);

struct GapPoint {
    double rho = 0.0;
    double achievable = 0.0;  // R, per user
    double outer = 0.0;       // min-recipe proxy / 3, per user
    double gap = 0.0;         // outer - achievable
};

struct GapStudy {
    std::vector<GapPoint> points;
    double gap_slope = 0.0;  // least squares against log2(rho)
};

GapStudy gap_study(const SystemConfig& config, std::uint64_t seed, const std::vector<double>& rhos,
                   int trials);

struct SweepRow {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::string regime;
    double gdof = 0.0;
    std::string active_term;
    int face_id = 0;
    std::optional<double> achievable_slope;
    std::optional<double> outer_slope;
};

struct SweepOptions {
    int M = 1;
    int N = 2;
    double step = 0.05;
    double max = 2.0;
    std::optional<double> alpha1;  // fixes alpha1 (slice)
    std::optional<double> alpha2;  // fixes alpha2 (slice)
    bool verify = false;
    std::vector<double> rhos{1e6, 1e9};
    int trials = 8;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (alpha1, alpha2)
    std::size_t skipped_order = 0;     // alpha1 <= alpha2
    std::size_t skipped_boundary = 0;  // an exponent equal to 1
    double max_achievable_dev = 0.0;   // with verify
    double max_outer_dev = 0.0;        // with verify, |gdof - outer_slope / 3|
};

/// Grid values k * step for k >= 1 up to and including `max`.
std::vector<double> grid_values(double step, double max);

SweepResult run_sweep(const SweepOptions& options);

/// One header line; a leading "# generated ..." comment unless `reproducible`.
void write_csv(std::ostream& os, const SweepResult& result, bool reproducible);

/// %.10g formatting with '.' decimal point.
std::string format_number(double v);

}  // namespace gdof
