#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace gdof {

using CMatrix = Eigen::MatrixXcd;

enum class Regime { Weak, Mixed, Strong };

std::string_view to_string(Regime regime);

/// Antenna counts and interference exponents of the 3-user channel.
///
/// Users and receivers are numbered 1..3. Transmitter i reaches receiver i+1
/// (cyclically) with exponent alpha1 and receiver i+2 with exponent alpha2.
struct SystemConfig {
    int M = 1;
    int N = 2;
    double alpha1 = 0.5;
    double alpha2 = 0.2;

    /// Throws DomainError unless M, N >= 1 and alpha1 > alpha2 > 0.
    void validate() const;

    /// Additionally requires 2M <= N < 3M (the dimension range the GDOF results cover).
    void validate_gdof_dims() const;

    /// WEAK for alpha1 < 1, MIXED for alpha2 < 1 < alpha1, STRONG for alpha2 > 1.
    /// Throws BoundaryError when either exponent equals 1.
    Regime regime() const;

    bool operator==(const SystemConfig&) const = default;
};

/// Exponent of the link from transmitter `tx` to receiver `rx` (power convention).
double link_exponent(const SystemConfig& config, int tx, int rx);

// Cyclic helpers, all 1-based.
int next_user(int user);      // user + 1 mod 3
int prev_user(int user);      // user - 1 mod 3
int strong_receiver(int tx);  // receiver seeing tx at alpha1
int weak_receiver(int tx);    // receiver seeing tx at alpha2
int strong_interferer(int rx);
int weak_interferer(int rx);

/// Nine N x M channel matrices drawn from a seed.
class ChannelInstance {
public:
    ChannelInstance(SystemConfig config, std::uint64_t seed, std::array<CMatrix, 9> matrices);

    const SystemConfig& config() const { return config_; }
    std::uint64_t seed() const { return seed_; }

    /// Matrix of the link from transmitter `tx` to receiver `rx`.
    const CMatrix& h(int tx, int rx) const;

    bool operator==(const ChannelInstance& other) const;

private:
    SystemConfig config_;
    std::uint64_t seed_;
    std::array<CMatrix, 9> h_;
};

inline constexpr double kMaxConditionNumber = 1e6;
inline constexpr int kMaxResampleAttempts = 100;

/// Draws i.i.d. CN(0,1) entries, resampling each matrix until its condition
/// number is below kMaxConditionNumber. Deterministic in (config, seed).
ChannelInstance generate_channel(const SystemConfig& config, std::uint64_t seed);

/// Order-independent seed for grid cell (i, j) of a sweep.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

/// One transmit layer: transmitter index and its power in linear scale.
struct TxLayer {
    int tx = 1;
    double power = 1.0;
};

/// Sum over layers of power * rho^e(tx->rx) * H H^H. The identity noise term is not included.
CMatrix received_covariance(const ChannelInstance& channel, int rx, std::span<const TxLayer> layers,
                            double rho);

/// Column factor F with F F^H equal to the covariance of one layer at receiver `rx`.
CMatrix arrival_factor(const ChannelInstance& channel, int tx, int rx, double power, double rho);

/// log2 |I + noise^{-1} signal|, whitening by the Cholesky factor of `noise`.
double logdet_rate(const CMatrix& signal, const CMatrix& noise);

/// log2 |I + G^H G| (= log2 |I + G G^H|) from a QR factorization of [G; I].
double logdet_gram(const CMatrix& G);

/// Same quantity as logdet_rate with signal = S S^H and noise = I + W W^H, computed
/// without forming either covariance. Used wherever rho^alpha spans many decades.
double logdet_rate_factored(const CMatrix& signal_factor, const CMatrix& noise_factor);

/// Horizontal concatenation of column blocks with a common row count.
CMatrix hstack(std::span<const CMatrix> blocks, Eigen::Index rows);

}  // namespace gdof
