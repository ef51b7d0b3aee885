#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcss {

/// Dense bit-packed vector over GF(2). Unused high bits of the last word are
/// kept zero so that equality and hashing can work on raw words.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVector from_string(std::string_view bits);
    /// Bit i of `bits` becomes coordinate i (low-degree-first packing).
    static BitVector from_u64(std::uint64_t bits, std::size_t len);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool is_zero() const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) {
        a ^= b;
        return a;
    }

    /// Parity of the AND (the GF(2) inner product).
    bool dot(const BitVector& other) const;

    bool operator==(const BitVector& other) const = default;

    /// Lexicographic order on the coordinate sequence, coordinate 0 first,
    /// 0 < 1. Used as the deterministic tie-break for coset leaders.
    bool lex_less(const BitVector& other) const;

    std::string to_string() const;
    std::uint64_t to_u64() const;  // requires size() <= 64

    std::span<const std::uint64_t> words() const { return words_; }

  private:
    friend class BitMatrix;
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense bit-packed matrix over GF(2), row-major. Vectors are columns, so a
/// code with n x k generator G has codewords x = G y.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<std::string>& rows);
    /// Plain-text format: first line "rows cols", then one '0'/'1' string per row.
    static BitMatrix from_text(std::string_view text);
    std::string to_text() const;

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v) {
            words_[r * wpr_ + (c >> 6)] |= mask;
        } else {
            words_[r * wpr_ + (c >> 6)] &= ~mask;
        }
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    BitVector col(std::size_t c) const;

    BitMatrix transposed() const;

    void swap_rows(std::size_t i, std::size_t j);
    /// rows[dst] ^= rows[src]
    void xor_row(std::size_t dst, std::size_t src);

    bool is_zero() const;
    bool operator==(const BitMatrix& other) const = default;

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {words_.data() + r * wpr_, wpr_};
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);
BitVector matvec(const BitMatrix& m, const BitVector& v);

struct RrefResult {
    BitMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// Reduced row echelon form over GF(2).
RrefResult rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);

/// Columns form a basis of { x : m x = 0 }; column count equals
/// cols(m) - rank(m). Basis vectors are the standard free-column kernel
/// vectors of the RREF, in ascending free-column order.
BitMatrix null_space_basis(const BitMatrix& m);

/// True iff v lies in the column space of `basis`.
bool in_span(const BitMatrix& basis, const BitVector& v);

/// One minimal-weight representative per coset of span(sub) inside
/// span(full), ties broken lexicographically; sorted by (weight, lex) so the
/// zero coset's zero vector comes first. Requires span(sub) to be contained
/// in span(full) and rank(full) small enough to enumerate.
std::vector<BitVector> coset_representatives(const BitMatrix& sub, const BitMatrix& full);

std::size_t hamming_weight(const BitVector& v);

/// Incremental row-echelon basis; supports membership tests and canonical
/// coset labels against the spanned subspace.
class Gf2Echelon {
  public:
    explicit Gf2Echelon(std::size_t width) : width_(width) {}

    /// Returns true if v was independent of the current span (and was added).
    bool insert(BitVector v);
    void insert_rows(const BitMatrix& m);
    void insert_cols(const BitMatrix& m);

    bool contains(const BitVector& v) const;
    /// Canonical residue of v modulo the span; equal residues mean equal cosets.
    BitVector reduce(BitVector v) const;

    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

  private:
    std::size_t width_;
    std::vector<BitVector> rows_;        // echelon rows, distinct leading bits
    std::vector<std::size_t> leading_;   // leading (lowest set) bit per row
};

}  // namespace pcss
