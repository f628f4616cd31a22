#include "gdof/gf2.hpp"

#include "gdof/errors.hpp"

#include <utility>

namespace gdof {

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      data_(static_cast<std::size_t>(rows) * ((cols + 63) / 64), 0) {
    if (rows < 0 || cols < 0) throw DomainError("negative GF(2) matrix size");
}

bool Gf2Matrix::get(int r, int c) const {
    return (row(r)[c / 64] >> (c % 64)) & 1u;
}

void Gf2Matrix::set(int r, int c, bool value) {
    auto& w = data_[static_cast<std::size_t>(r) * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = value ? (w | bit) : (w & ~bit);
}

void Gf2Matrix::flip(int r, int c) {
    data_[static_cast<std::size_t>(r) * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
}

void Gf2Matrix::append_rows(const Gf2Matrix& other) {
    if (rows_ == 0 && cols_ == 0) {
        *this = other;
        return;
    }
    if (other.cols_ != cols_) throw DomainError("GF(2) column count mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
}

int Gf2Matrix::rank() const {
    std::vector<std::uint64_t> m = data_;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        const int w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        int pivot = -1;
        for (int r = rank; r < rows_; ++r) {
            if (m[static_cast<std::size_t>(r) * words_ + w] & bit) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        auto* prow = &m[static_cast<std::size_t>(pivot) * words_];
        auto* rrow = &m[static_cast<std::size_t>(rank) * words_];
        if (pivot != rank) {
            for (int k = 0; k < words_; ++k) std::swap(prow[k], rrow[k]);
        }
        for (int r = rank + 1; r < rows_; ++r) {
            auto* other = &m[static_cast<std::size_t>(r) * words_];
            if (other[w] & bit) {
                for (int k = w; k < words_; ++k) other[k] ^= rrow[k];
            }
        }
        ++rank;
    }
    return rank;
}

std::string Gf2Matrix::to_string() const {
    std::string out;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (c) out += ' ';
            out += get(r, c) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

int stacked_rank(const std::vector<const Gf2Matrix*>& parts) {
    Gf2Matrix all;
    for (const auto* p : parts) all.append_rows(*p);
    return all.rank();
}

}  // namespace gdof
