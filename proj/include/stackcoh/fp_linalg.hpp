#pragma once

// Dense exact linear algebra over a prime field F_p, p < 256.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace stackcoh {

using Entry = std::uint8_t;
using Vec = std::vector<Entry>;

bool is_prime(std::uint32_t n);

/// Arithmetic in F_p with a precomputed inverse table.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    Entry reduce(std::int64_t x) const
    {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<Entry>(r < 0 ? r + p_ : r);
    }
    Entry add(Entry a, Entry b) const { return static_cast<Entry>((a + b) % p_); }
    Entry sub(Entry a, Entry b) const { return static_cast<Entry>((a + p_ - b) % p_); }
    Entry mul(Entry a, Entry b) const { return static_cast<Entry>((unsigned(a) * b) % p_); }
    Entry neg(Entry a) const { return a == 0 ? 0 : static_cast<Entry>(p_ - a); }
    Entry inv(Entry a) const;
    Entry pow(Entry a, std::uint64_t e) const;

private:
    std::uint32_t p_;
    std::vector<Entry> inv_;
};

/// A residue together with its modulus.
struct FpScalar {
    std::uint32_t value = 0;
    std::uint32_t modulus = 2;

    FpScalar() = default;
    FpScalar(std::int64_t v, std::uint32_t p);
    friend bool operator==(const FpScalar&, const FpScalar&) = default;
};

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static FpMatrix identity(std::uint32_t p, std::size_t n);
    static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static FpMatrix from_columns(std::uint32_t p, std::size_t rows, const std::vector<Vec>& cols);

    std::uint32_t prime() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Entry at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v);
    void add_to(std::size_t i, std::size_t j, std::int64_t v);

    std::span<const Entry> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<Entry> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    Vec column(std::size_t j) const;

    bool is_zero() const;
    FpMatrix transpose() const;
    FpMatrix select_rows(std::span<const std::size_t> idx) const;
    FpMatrix select_columns(std::span<const std::size_t> idx) const;
    FpMatrix hconcat(const FpMatrix& rhs) const;
    FpMatrix vconcat(const FpMatrix& rhs) const;
    Vec apply(std::span<const Entry> v) const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
    friend bool operator==(const FpMatrix& a, const FpMatrix& b);

private:
    std::uint32_t p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Entry> data_;
};

struct RowEchelon {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form; pivots are chosen as the first nonzero entry
/// scanning columns left to right, so the output is deterministic.
RowEchelon rref(const FpMatrix& m);

std::size_t rank(const FpMatrix& m);

/// Columns form a basis of the right null space, one per free column of rref(m).
FpMatrix kernel_basis(const FpMatrix& m);

/// Basis of the column space made of the pivot columns of m.
FpMatrix column_space_basis(const FpMatrix& m);

/// dim((A + B) / B) = rank[A|B] - rank[B]; both spans live in the same ambient space.
std::size_t subquotient_dim(const FpMatrix& span_a, const FpMatrix& span_b);

/// Some x with m x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<Vec> solve(const FpMatrix& m, std::span<const Entry> b);

/// Incrementally maintained echelon basis of a subspace of F_p^n.
class SubspaceBasis {
public:
    SubspaceBasis(std::uint32_t p, std::size_t ambient);

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    /// Reduces v against the basis; returns true (and stores it) if it was independent.
    bool insert(Vec v);
    bool contains(Vec v) const;
    /// Canonical representative of v modulo the subspace.
    Vec normal_form(Vec v) const;
    /// Coordinates of v with respect to the inserted (independent) vectors, or nullopt.
    std::optional<Vec> coordinates(const Vec& v) const;
    const std::vector<Vec>& inserted() const { return originals_; }

private:
    void reduce(Vec& v, Vec* coeff) const;

    PrimeField f_;
    std::size_t n_;
    std::vector<Vec> rows_;        // echelon rows with leading 1
    std::vector<std::size_t> lead_;
    std::vector<Vec> combos_;      // rows_[i] = sum combos_[i][j] * originals_[j]
    std::vector<Vec> originals_;
};

/// Sparse vector: (index, nonzero value) pairs sorted by index.
using SparseVec = std::vector<std::pair<std::uint32_t, Entry>>;

struct SparseReduction {
    std::size_t rank = 0;
    /// Lowest (largest) row index of every nonzero reduced column.
    std::vector<std::uint32_t> pivot_rows;
};

/// Rank of the matrix with the given columns by left-to-right column
/// reduction on the largest row index.  Columns flagged in `skip` are
/// ignored; pass the pivot rows of the next differential of a chain complex
/// there, since those columns reduce to zero anyway.
SparseReduction sparse_reduce(std::uint32_t p, std::size_t rows, const std::vector<SparseVec>& columns,
                              const std::vector<bool>* skip = nullptr);

}  // namespace stackcoh
