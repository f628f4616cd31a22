#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gdof {

/// Dense bit-packed matrix over GF(2), row-major.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const;
    void set(int r, int c, bool value);
    void flip(int r, int c);

    /// Row r as packed words (least significant bit is column 0).
    const std::uint64_t* row(int r) const { return &data_[static_cast<std::size_t>(r) * words_]; }
    int words_per_row() const { return words_; }

    /// Appends the rows of `other` (same column count).
    void append_rows(const Gf2Matrix& other);

    int rank() const;

    /// "0 1 1 ..." per row, newline separated.
    std::string to_string() const;

    bool operator==(const Gf2Matrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Rank of the rows of all given matrices stacked.
int stacked_rank(const std::vector<const Gf2Matrix*>& parts);

}  // namespace gdof
