#include "pcss/bitmat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "pcss/error.hpp"

namespace pcss {

namespace {

void check_same_len(std::size_t a, std::size_t b, const char* what) {
    require(a == b, ErrorCode::DimensionMismatch,
            std::string(what) + ": lengths " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            fail(ErrorCode::ParseError, "bit string may contain only '0'/'1'");
        }
    }
    return v;
}

BitVector BitVector::from_u64(std::uint64_t bits, std::size_t len) {
    require(len <= 64, ErrorCode::InvalidArgument, "from_u64: len > 64");
    BitVector v(len);
    if (len > 0) {
        v.words_[0] = len == 64 ? bits : (bits & ((std::uint64_t{1} << len) - 1));
    }
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_) {
        w += static_cast<std::size_t>(std::popcount(word));
    }
    return w;
}

bool BitVector::is_zero() const {
    for (std::uint64_t word : words_) {
        if (word != 0) {
            return false;
        }
    }
    return true;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    check_same_len(len_, other.len_, "BitVector xor");
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

bool BitVector::dot(const BitVector& other) const {
    check_same_len(len_, other.len_, "BitVector dot");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        acc ^= words_[i] & other.words_[i];
    }
    return std::popcount(acc) & 1;
}

bool BitVector::lex_less(const BitVector& other) const {
    check_same_len(len_, other.len_, "BitVector lex_less");
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t diff = words_[i] ^ other.words_[i];
        if (diff != 0) {
            std::uint64_t low = diff & ~(diff - 1);
            return (words_[i] & low) == 0;  // 0 at first differing coordinate
        }
    }
    return false;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::uint64_t BitVector::to_u64() const {
    require(len_ <= 64, ErrorCode::InvalidArgument, "to_u64: len > 64");
    return words_.empty() ? 0 : words_[0];
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == cols, ErrorCode::ParseError, "ragged row lengths");
        m.set_row(r, BitVector::from_string(rows[r]));
    }
    return m;
}

BitMatrix BitMatrix::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) {
        fail(ErrorCode::ParseError, "matrix text must start with \"rows cols\"");
    }
    std::vector<std::string> lines;
    std::string tok;
    while (lines.size() < rows && in >> tok) {
        lines.push_back(tok);
    }
    require(lines.size() == rows, ErrorCode::ParseError, "matrix text: missing rows");
    for (const auto& line : lines) {
        require(line.size() == cols, ErrorCode::ParseError, "matrix text: bad row length");
    }
    return from_rows(lines);
}

std::string BitMatrix::to_text() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        out << row(r).to_string() << '\n';
    }
    return out.str();
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    std::copy_n(words_.begin() + static_cast<std::ptrdiff_t>(r * wpr_), wpr_, v.words_.begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    check_same_len(v.size(), cols_, "set_row");
    std::copy_n(v.words_.begin(), wpr_, words_.begin() + static_cast<std::ptrdiff_t>(r * wpr_));
}

BitVector BitMatrix::col(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (get(r, c)) {
            v.set(r, true);
        }
    }
    return v;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = words_[r * wpr_ + w];
            while (word != 0) {
                int bit = std::countr_zero(word);
                word &= word - 1;
                t.set(w * 64 + static_cast<std::size_t>(bit), r, true);
            }
        }
    }
    return t;
}

void BitMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) {
        return;
    }
    for (std::size_t w = 0; w < wpr_; ++w) {
        std::swap(words_[i * wpr_ + w], words_[j * wpr_ + w]);
    }
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < wpr_; ++w) {
        words_[dst * wpr_ + w] ^= words_[src * wpr_ + w];
    }
}

bool BitMatrix::is_zero() const {
    for (std::uint64_t word : words_) {
        if (word != 0) {
            return false;
        }
    }
    return true;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
    require(a.cols() == b.rows(), ErrorCode::DimensionMismatch,
            "matmul: " + std::to_string(a.cols()) + " != " + std::to_string(b.rows()));
    BitMatrix out(a.rows(), b.cols());
    // out.row(i) = xor of b rows selected by the set bits of a.row(i)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitVector acc(b.cols());
        auto arow = a.row_words(i);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            std::uint64_t word = arow[w];
            while (word != 0) {
                int bit = std::countr_zero(word);
                word &= word - 1;
                acc ^= b.row(w * 64 + static_cast<std::size_t>(bit));
            }
        }
        out.set_row(i, acc);
    }
    return out;
}

BitVector matvec(const BitMatrix& m, const BitVector& v) {
    require(m.cols() == v.size(), ErrorCode::DimensionMismatch,
            "matvec: " + std::to_string(m.cols()) + " != " + std::to_string(v.size()));
    BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto words = m.row_words(r);
        std::uint64_t acc = 0;
        auto vw = v.words();
        for (std::size_t w = 0; w < words.size(); ++w) {
            acc ^= words[w] & vw[w];
        }
        if (std::popcount(acc) & 1) {
            out.set(r, true);
        }
    }
    return out;
}

RrefResult rref(const BitMatrix& m) {
    RrefResult res;
    res.reduced = m;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < m.rows() && !res.reduced.get(sel, c)) {
            ++sel;
        }
        if (sel == m.rows()) {
            continue;
        }
        res.reduced.swap_rows(pivot_row, sel);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != pivot_row && res.reduced.get(r, c)) {
                res.reduced.xor_row(r, pivot_row);
            }
        }
        res.pivot_cols.push_back(c);
        ++pivot_row;
    }
    res.rank = res.pivot_cols.size();
    return res;
}

std::size_t rank(const BitMatrix& m) {
    return rref(m).rank;
}

BitMatrix null_space_basis(const BitMatrix& m) {
    RrefResult r = rref(m);
    std::vector<std::size_t> free_cols;
    {
        std::size_t next_pivot = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (next_pivot < r.pivot_cols.size() && r.pivot_cols[next_pivot] == c) {
                ++next_pivot;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    BitMatrix basis(m.cols(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t f = free_cols[j];
        basis.set(f, j, true);
        for (std::size_t p = 0; p < r.pivot_cols.size(); ++p) {
            if (r.reduced.get(p, f)) {
                basis.set(r.pivot_cols[p], j, true);
            }
        }
    }
    return basis;
}

bool in_span(const BitMatrix& basis, const BitVector& v) {
    require(basis.rows() == v.size(), ErrorCode::DimensionMismatch,
            "in_span: vector length does not match basis row count");
    Gf2Echelon ech(basis.rows());
    ech.insert_cols(basis);
    return ech.contains(v);
}

std::vector<BitVector> coset_representatives(const BitMatrix& sub, const BitMatrix& full) {
    require(sub.rows() == full.rows(), ErrorCode::DimensionMismatch,
            "coset_representatives: ambient dimensions differ");
    Gf2Echelon esub(sub.rows());
    esub.insert_cols(sub);
    Gf2Echelon efull(full.rows());
    std::vector<BitVector> basis;
    for (std::size_t c = 0; c < full.cols(); ++c) {
        BitVector v = full.col(c);
        if (efull.insert(v)) {
            basis.push_back(std::move(v));
        }
    }
    for (std::size_t c = 0; c < sub.cols(); ++c) {
        require(efull.contains(sub.col(c)), ErrorCode::InvalidArgument,
                "coset_representatives: sub is not contained in full");
    }
    std::size_t r_full = efull.rank();
    require(r_full <= 26, ErrorCode::TooLarge,
            "coset_representatives: span too large to enumerate (rank " +
                std::to_string(r_full) + ")");

    struct Best {
        std::size_t weight;
        BitVector vec;
    };
    std::map<std::vector<std::uint64_t>, Best> best;
    BitVector cur(full.rows());
    std::uint64_t count = std::uint64_t{1} << r_full;
    std::uint64_t prev_gray = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        if (i != 0) {
            std::uint64_t changed = gray ^ prev_gray;
            cur ^= basis[static_cast<std::size_t>(std::countr_zero(changed))];
        }
        prev_gray = gray;
        BitVector label = esub.reduce(cur);
        std::vector<std::uint64_t> key(label.words().begin(), label.words().end());
        std::size_t w = cur.weight();
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(std::move(key), Best{w, cur});
        } else if (w < it->second.weight ||
                   (w == it->second.weight && cur.lex_less(it->second.vec))) {
            it->second = Best{w, cur};
        }
    }
    std::vector<BitVector> reps;
    reps.reserve(best.size());
    for (auto& [key, b] : best) {
        reps.push_back(std::move(b.vec));
    }
    std::sort(reps.begin(), reps.end(), [](const BitVector& a, const BitVector& b) {
        std::size_t wa = a.weight(), wb = b.weight();
        if (wa != wb) {
            return wa < wb;
        }
        return a.lex_less(b);
    });
    return reps;
}

std::size_t hamming_weight(const BitVector& v) {
    return v.weight();
}

bool Gf2Echelon::insert(BitVector v) {
    require(v.size() == width_, ErrorCode::DimensionMismatch, "Gf2Echelon: width mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(leading_[i])) {
            v ^= rows_[i];
        }
    }
    if (v.is_zero()) {
        return false;
    }
    std::size_t lead = 0;
    while (!v.get(lead)) {
        ++lead;
    }
    // keep rows fully reduced: clear this leading bit from existing rows
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].get(lead)) {
            rows_[i] ^= v;
        }
    }
    rows_.push_back(std::move(v));
    leading_.push_back(lead);
    return true;
}

void Gf2Echelon::insert_rows(const BitMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        insert(m.row(r));
    }
}

void Gf2Echelon::insert_cols(const BitMatrix& m) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        insert(m.col(c));
    }
}

bool Gf2Echelon::contains(const BitVector& v) const {
    return reduce(v).is_zero();
}

BitVector Gf2Echelon::reduce(BitVector v) const {
    require(v.size() == width_, ErrorCode::DimensionMismatch, "Gf2Echelon: width mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(leading_[i])) {
            v ^= rows_[i];
        }
    }
    return v;
}

}  // namespace pcss
