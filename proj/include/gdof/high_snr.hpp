#pragma once

#include "gdof/channel_model.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>

namespace gdof {

/// Three Gram terms rho^a H1 H1^H + rho^b H2 H2^H + rho^c H3 H3^H, each H being N x r.
struct PrelogSpec {
    int r = 1;
    int N = 2;
    std::array<double, 3> exps{1.0, 0.0, 0.0};  // nonincreasing, >= 0

    /// Throws DomainError for r < 1, r > N, negative or unsorted exponents.
    void validate() const;
};

/// r a + min(r, (N-r)^+) b + min(r, (N-2r)^+) c.
double predicted_prelog(const PrelogSpec& spec);

/// log2 |I + sum_k rho^{exps[k]} H_k H_k^H|.
double numeric_logdet(const PrelogSpec& spec, const CMatrix& H1, const CMatrix& H2,
                      const CMatrix& H3, double rho);

/// Three N x r matrices with i.i.d. CN(0, 1) entries, deterministic in the seed.
std::array<CMatrix, 3> random_factors(const PrelogSpec& spec, std::uint64_t seed);

/// Least-squares slope of f(rho) against log2(rho). Requires >= 2 points spanning >= 2 decades.
double estimate_slope(const std::function<double(double)>& f, std::span<const double> rho_points);

/// Least-squares slope of precomputed values against log2(rho).
double slope_from_samples(std::span<const double> rho_points, std::span<const double> values);

}  // namespace gdof
