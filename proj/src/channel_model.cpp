#include "gdof/channel_model.hpp"

#include "gdof/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace gdof {

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Weak: return "WEAK";
        case Regime::Mixed: return "MIXED";
        case Regime::Strong: return "STRONG";
    }
    return "?";
}

void SystemConfig::validate() const {
    if (M < 1 || N < 1) {
        throw DomainError("antenna counts must be positive (M=" + std::to_string(M) +
                          ", N=" + std::to_string(N) + ")");
    }
    if (!(alpha2 > 0.0)) {
        throw DomainError("alpha2 must be > 0 (got " + std::to_string(alpha2) + ")");
    }
    if (!(alpha1 > alpha2)) {
        throw DomainError("alpha1 must be > alpha2 (got alpha1=" + std::to_string(alpha1) +
                          ", alpha2=" + std::to_string(alpha2) + ")");
    }
}

void SystemConfig::validate_gdof_dims() const {
    validate();
    if (!(2 * M <= N && N < 3 * M)) {
        throw DomainError("requires 2M <= N < 3M (got M=" + std::to_string(M) +
                          ", N=" + std::to_string(N) + ")");
    }
}

Regime SystemConfig::regime() const {
    if (alpha1 == 1.0 || alpha2 == 1.0) {
        throw BoundaryError("exponent on regime boundary alpha=1 (alpha1=" + std::to_string(alpha1) +
                            ", alpha2=" + std::to_string(alpha2) + ")");
    }
    if (alpha1 < 1.0) return Regime::Weak;
    if (alpha2 < 1.0) return Regime::Mixed;
    return Regime::Strong;
}

int next_user(int user) { return user % 3 + 1; }
int prev_user(int user) { return (user + 1) % 3 + 1; }
int strong_receiver(int tx) { return next_user(tx); }
int weak_receiver(int tx) { return prev_user(tx); }
int strong_interferer(int rx) { return prev_user(rx); }
int weak_interferer(int rx) { return next_user(rx); }

double link_exponent(const SystemConfig& config, int tx, int rx) {
    if (tx < 1 || tx > 3 || rx < 1 || rx > 3) {
        throw DomainError("user index out of range 1..3");
    }
    if (tx == rx) return 1.0;
    return rx == strong_receiver(tx) ? config.alpha1 : config.alpha2;
}

namespace {

int slot(int tx, int rx) {
    if (tx < 1 || tx > 3 || rx < 1 || rx > 3) {
        throw DomainError("user index out of range 1..3");
    }
    return 3 * (tx - 1) + (rx - 1);
}

void require_psd(const CMatrix& A, const char* what) {
    if (A.rows() != A.cols()) {
        throw DomainError(std::string(what) + " must be square");
    }
    if (A.size() == 0) return;
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw DomainError(std::string(what) + " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(A, Eigen::EigenvaluesOnly);
    const double trace = std::max(1.0, A.real().trace());
    if (eig.eigenvalues().minCoeff() < -1e-10 * trace) {
        throw DomainError(std::string(what) + " is not positive semidefinite");
    }
}

}  // namespace

ChannelInstance::ChannelInstance(SystemConfig config, std::uint64_t seed,
                                 std::array<CMatrix, 9> matrices)
    : config_(config), seed_(seed), h_(std::move(matrices)) {}

const CMatrix& ChannelInstance::h(int tx, int rx) const { return h_[slot(tx, rx)]; }

bool ChannelInstance::operator==(const ChannelInstance& other) const {
    if (!(config_ == other.config_) || seed_ != other.seed_) return false;
    for (std::size_t k = 0; k < h_.size(); ++k) {
        if (h_[k].rows() != other.h_[k].rows() || h_[k].cols() != other.h_[k].cols()) return false;
        if (h_[k] != other.h_[k]) return false;
    }
    return true;
}

ChannelInstance generate_channel(const SystemConfig& config, std::uint64_t seed) {
    config.validate();
    std::mt19937_64 rng(seed);
    // CN(0,1): real and imaginary parts each N(0, 1/2).
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

    std::array<CMatrix, 9> matrices;
    for (int tx = 1; tx <= 3; ++tx) {
        for (int rx = 1; rx <= 3; ++rx) {
            CMatrix H(config.N, config.M);
            bool accepted = false;
            for (int attempt = 0; attempt < kMaxResampleAttempts && !accepted; ++attempt) {
                for (Eigen::Index c = 0; c < H.cols(); ++c) {
                    for (Eigen::Index r = 0; r < H.rows(); ++r) {
                        const double re = normal(rng);
                        const double im = normal(rng);
                        H(r, c) = {re, im};
                    }
                }
                Eigen::JacobiSVD<CMatrix> svd(H);
                const auto& s = svd.singularValues();
                const double smin = s(s.size() - 1);
                accepted = smin > 0.0 && s(0) / smin < kMaxConditionNumber;
            }
            if (!accepted) {
                throw NumericalError("could not draw a well-conditioned H" + std::to_string(tx) +
                                     std::to_string(rx) + " in " +
                                     std::to_string(kMaxResampleAttempts) + " attempts");
            }
            matrices[slot(tx, rx)] = std::move(H);
        }
    }
    return ChannelInstance(config, seed, std::move(matrices));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    // splitmix64 finalizer applied to a counter built from (seed, i, j).
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ i) ^ (j * 0xd1b54a32d192ed03ULL));
}

CMatrix received_covariance(const ChannelInstance& channel, int rx, std::span<const TxLayer> layers,
                            double rho) {
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    const int n = channel.config().N;
    CMatrix cov = CMatrix::Zero(n, n);
    for (const auto& layer : layers) {
        if (layer.power < 0.0) throw DomainError("layer power must be >= 0");
        const double gain = layer.power * std::pow(rho, link_exponent(channel.config(), layer.tx, rx));
        const CMatrix& H = channel.h(layer.tx, rx);
        cov.noalias() += gain * (H * H.adjoint());
    }
    return cov;
}

CMatrix arrival_factor(const ChannelInstance& channel, int tx, int rx, double power, double rho) {
    if (power < 0.0) throw DomainError("layer power must be >= 0");
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    const double gain = power * std::pow(rho, link_exponent(channel.config(), tx, rx));
    return std::sqrt(gain) * channel.h(tx, rx);
}

double logdet_rate(const CMatrix& signal, const CMatrix& noise) {
    require_psd(signal, "signal covariance");
    require_psd(noise, "noise covariance");
    if (signal.rows() != noise.rows()) throw DomainError("signal/noise dimension mismatch");
    const Eigen::Index n = noise.rows();
    if (n == 0) return 0.0;

    Eigen::LLT<CMatrix> chol(noise);
    if (chol.info() != Eigen::Success) {
        chol.compute(noise + 1e-12 * CMatrix::Identity(n, n));
        if (chol.info() != Eigen::Success) {
            throw NumericalError("noise covariance is not positive definite");
        }
    }
    // W = L^{-1} S L^{-H}
    CMatrix tmp = chol.matrixL().solve(signal);
    CMatrix whitened = chol.matrixL().solve(tmp.adjoint()).adjoint();
    whitened = 0.5 * (whitened + whitened.adjoint());
    whitened += CMatrix::Identity(n, n);

    Eigen::LLT<CMatrix> inner(whitened);
    if (inner.info() != Eigen::Success) {
        throw NumericalError("whitened covariance factorization failed");
    }
    double log2det = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) log2det += 2.0 * std::log2(inner.matrixLLT()(k, k).real());
    return std::max(0.0, log2det);
}

double logdet_gram(const CMatrix& G) {
    if (G.size() == 0) return 0.0;
    const bool tall = G.cols() <= G.rows();
    const Eigen::Index k = tall ? G.cols() : G.rows();
    CMatrix stacked(G.rows() + G.cols(), k);
    if (tall) {
        stacked << G, CMatrix::Identity(k, k);
    } else {
        stacked << G.adjoint(), CMatrix::Identity(k, k);
    }
    Eigen::HouseholderQR<CMatrix> qr(stacked);
    const auto& packed = qr.matrixQR();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) acc += 2.0 * std::log2(std::abs(packed(i, i)));
    if (!std::isfinite(acc)) throw NumericalError("log-determinant is not finite");
    return acc;
}

double logdet_rate_factored(const CMatrix& signal_factor, const CMatrix& noise_factor) {
    if (signal_factor.cols() == 0) return 0.0;
    if (noise_factor.cols() == 0) return std::max(0.0, logdet_gram(signal_factor));
    if (signal_factor.rows() != noise_factor.rows()) {
        throw DomainError("signal/noise factor row mismatch");
    }
    CMatrix joint(signal_factor.rows(), signal_factor.cols() + noise_factor.cols());
    joint << noise_factor, signal_factor;
    return std::max(0.0, logdet_gram(joint) - logdet_gram(noise_factor));
}

CMatrix hstack(std::span<const CMatrix> blocks, Eigen::Index rows) {
    Eigen::Index cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows && b.size() != 0) throw DomainError("hstack row mismatch");
        cols += b.cols();
    }
    CMatrix out(rows, cols);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        if (b.cols() == 0) continue;
        out.middleCols(at, b.cols()) = b;
        at += b.cols();
    }
    return out;
}

}  // namespace gdof
