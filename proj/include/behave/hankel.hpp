#pragma once

#include <behave/error.hpp>

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Exact Hankel-matrix checks on measured trajectories with rational samples.
// There is no floating point and no tolerance anywhere in this module.
namespace behave::lti {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Accepts `p/q` or a plain integer, with an optional leading sign.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    // Throws DimensionMismatch on ragged input.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Rational> column(std::size_t c) const;
    RationalMatrix select_rows(const std::vector<std::size_t>& rows) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// A sampled vector signal w(1..T). Each sample stacks the variable blocks in
/// order; block b occupies `block_sizes[b]` consecutive entries.
class RealTrajectory {
public:
    // Throws ValidationError if T = 0, a block size is 0, or a sample has the wrong length.
    RealTrajectory(std::vector<std::size_t> block_sizes, std::vector<std::vector<Rational>> samples);

    std::size_t length() const noexcept { return samples_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<std::size_t>& block_sizes() const noexcept { return block_sizes_; }
    std::size_t block_offset(std::size_t block) const;

    // Sample at 0-based time t.
    const std::vector<Rational>& at(std::size_t t) const { return samples_.at(t); }

    // Samples start..start+L-1 stacked into one vector of length L * dimension().
    std::vector<Rational> window(std::size_t start, std::size_t L) const;

private:
    std::vector<std::size_t> block_sizes_;
    std::vector<std::vector<Rational>> samples_;
    std::size_t dimension_ = 0;
};

// First non-comment line holds the block sizes; each following line is one sample.
// Blank lines and lines starting with '#' are skipped. ParseError carries the line number.
RealTrajectory parse_trajectory(std::string_view text);

// Block-Hankel matrix with L block rows and T-L+1 columns; column j is window(j, L).
// Throws LengthError unless 1 <= L <= T.
RationalMatrix hankel(const RealTrajectory& w, std::size_t L);

std::size_t rank(const RationalMatrix& m);

// Throws DimensionMismatch for a non-square matrix.
Rational determinant(const RationalMatrix& m);

// Rows of hankel(w, L) belonging to `free_blocks`, in block-row order.
RationalMatrix free_rows(const RealTrajectory& w, const std::vector<std::size_t>& free_blocks, std::size_t L);

// True iff the free-block rows of hankel(w, L) have full row rank.
// Throws UnknownBlock for an out-of-range block index and LengthError for a bad L.
bool free_rows_check(const RealTrajectory& w, const std::vector<std::size_t>& free_blocks, std::size_t L);

// True iff v is an exact rational combination of the columns of H.
// Throws DimensionMismatch if v.size() != H.rows().
bool in_span(const RationalMatrix& H, const std::vector<Rational>& v);

}  // namespace behave::lti
