#include "gdof/high_snr.hpp"

#include "gdof/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace gdof {

void PrelogSpec::validate() const {
    if (r < 1 || N < 1) throw DomainError("r and N must be positive");
    if (r > N) throw DomainError("r must not exceed N");
    for (double e : exps) {
        if (!(e >= 0.0)) throw DomainError("exponents must be >= 0");
    }
    if (exps[0] < exps[1] || exps[1] < exps[2]) {
        throw DomainError("exponents must be sorted nonincreasing");
    }
}

double predicted_prelog(const PrelogSpec& spec) {
    spec.validate();
    const int r = spec.r;
    const int second = std::min(r, std::max(spec.N - r, 0));
    const int third = std::min(r, std::max(spec.N - 2 * r, 0));
    return r * spec.exps[0] + second * spec.exps[1] + third * spec.exps[2];
}

double numeric_logdet(const PrelogSpec& spec, const CMatrix& H1, const CMatrix& H2,
                      const CMatrix& H3, double rho) {
    spec.validate();
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    const std::array<const CMatrix*, 3> hs{&H1, &H2, &H3};
    std::array<CMatrix, 3> scaled;
    for (int k = 0; k < 3; ++k) {
        if (hs[k]->rows() != spec.N || hs[k]->cols() != spec.r) {
            throw DomainError("matrix shape must be N x r");
        }
        scaled[k] = std::sqrt(std::pow(rho, spec.exps[k])) * (*hs[k]);
    }
    return logdet_gram(hstack(scaled, spec.N));
}

std::array<CMatrix, 3> random_factors(const PrelogSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::array<CMatrix, 3> out;
    for (auto& h : out) {
        h.resize(spec.N, spec.r);
        for (Eigen::Index c = 0; c < h.cols(); ++c) {
            for (Eigen::Index r = 0; r < h.rows(); ++r) {
                const double re = normal(rng);
                h(r, c) = {re, normal(rng)};
            }
        }
    }
    return out;
}

double slope_from_samples(std::span<const double> rho_points, std::span<const double> values) {
    if (rho_points.size() < 2) throw DomainError("slope needs at least two rho points");
    if (values.size() != rho_points.size()) throw DomainError("slope sample size mismatch");
    const double n = static_cast<double>(rho_points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t k = 0; k < rho_points.size(); ++k) {
        if (!(rho_points[k] > 0.0)) throw DomainError("rho points must be > 0");
        mean_x += std::log2(rho_points[k]);
        mean_y += values[k];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < rho_points.size(); ++k) {
        const double dx = std::log2(rho_points[k]) - mean_x;
        sxx += dx * dx;
        sxy += dx * (values[k] - mean_y);
    }
    if (sxx == 0.0) throw DomainError("rho points must not coincide");
    return sxy / sxx;
}

double estimate_slope(const std::function<double(double)>& f, std::span<const double> rho_points) {
    if (rho_points.size() < 2) throw DomainError("slope needs at least two rho points");
    const auto [lo, hi] = std::minmax_element(rho_points.begin(), rho_points.end());
    if (!(*lo > 0.0) || std::log10(*hi / *lo) < 2.0 - 1e-9) {
        throw DomainError("rho points must span at least two decades");
    }
    std::vector<double> values;
    values.reserve(rho_points.size());
    for (double rho : rho_points) values.push_back(f(rho));
    return slope_from_samples(rho_points, values);
}

}  // namespace gdof
