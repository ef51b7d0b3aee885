#include "pcss/pcss_code.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "pcss/error.hpp"

namespace pcss {

namespace {

std::vector<BitVector> representatives_by_output(const LinearCode& code,
                                                 const HashRealization& hash) {
    std::size_t k = code.k();
    std::size_t m = static_cast<std::size_t>(hash.m());
    require(k <= 26, ErrorCode::TooLarge,
            "construct: enumerating 2^" + std::to_string(k) + " messages is too slow");
    // walk all y in Gray order, tracking x = G y and s = A y + s0
    std::vector<BitVector> g_cols(k), a_cols(k);
    for (std::size_t j = 0; j < k; ++j) {
        g_cols[j] = code.generator().col(j);
        a_cols[j] = hash.matrix().col(j);
    }
    std::size_t reps_count = std::size_t{1} << m;
    std::vector<BitVector> reps(reps_count);
    std::vector<std::size_t> weight(reps_count);
    std::vector<bool> seen(reps_count, false);

    BitVector x(code.n());
    BitVector s = hash.offset();
    std::uint64_t prev_gray = 0;
    std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        if (i != 0) {
            std::size_t j = static_cast<std::size_t>(std::countr_zero(gray ^ prev_gray));
            x ^= g_cols[j];
            s ^= a_cols[j];
        }
        prev_gray = gray;
        std::size_t idx = static_cast<std::size_t>(s.to_u64());
        std::size_t w = x.weight();
        if (!seen[idx] || w < weight[idx] || (w == weight[idx] && x.lex_less(reps[idx]))) {
            seen[idx] = true;
            reps[idx] = x;
            weight[idx] = w;
        }
    }
    return reps;
}

}  // namespace

PcssCode construct(const LinearCode& code, const HashRealization& hash) {
    require(static_cast<std::size_t>(hash.k()) == code.k(), ErrorCode::DimensionMismatch,
            "construct: hash domain (" + std::to_string(hash.k()) +
                " bits) does not match code dimension k = " + std::to_string(code.k()));
    BitMatrix f = hash.kernel_basis();
    BitMatrix cprime_gen = matmul(code.generator(), f);
    // G has full column rank, so rank(G F) = rank(F) = k - m
    require(rank(cprime_gen) == f.cols(), ErrorCode::RankDeficient,
            "construct: G F lost rank");
    BitMatrix x_stabs = cprime_gen.transposed();
    std::vector<BitVector> reps = representatives_by_output(code, hash);
    return PcssCode{code, hash, std::move(f), std::move(cprime_gen),
                    code.parity(), std::move(x_stabs), std::move(reps)};
}

CssReport verify_css(const PcssCode& pcss) {
    CssReport report;
    auto flag = [&report](const std::string& msg) {
        report.pass = false;
        report.failures.push_back(msg);
    };

    std::size_t k = pcss.k(), m = pcss.m();
    BitMatrix product = matmul(pcss.z_stabs, pcss.cprime_gen);
    if (!product.is_zero()) {
        for (std::size_t r = 0; r < product.rows(); ++r) {
            for (std::size_t c = 0; c < product.cols(); ++c) {
                if (product.get(r, c)) {
                    flag("H (G F) != 0: Z row " + std::to_string(r + 1) +
                         " anticommutes with X row " + std::to_string(c + 1));
                }
            }
        }
    }
    if (rank(pcss.f) != k - m) {
        flag("rank(F) != k - m");
    }
    if (rank(pcss.cprime_gen) != k - m) {
        flag("rank(G F) != k - m");
    }
    if (pcss.coset_reps.size() != (std::size_t{1} << m)) {
        flag("expected 2^m = " + std::to_string(std::size_t{1} << m) +
             " coset representatives, got " + std::to_string(pcss.coset_reps.size()));
    }

    // the representatives must lie in C and label pairwise distinct cosets of C/C'
    Gf2Echelon c_span(pcss.n());
    c_span.insert_cols(pcss.code.generator());
    Gf2Echelon cprime_span(pcss.n());
    cprime_span.insert_cols(pcss.cprime_gen);
    std::vector<BitVector> labels;
    labels.reserve(pcss.coset_reps.size());
    for (std::size_t s = 0; s < pcss.coset_reps.size(); ++s) {
        const BitVector& rep = pcss.coset_reps[s];
        if (!c_span.contains(rep)) {
            flag("representative " + std::to_string(s) + " is not a codeword of C");
            continue;
        }
        labels.push_back(cprime_span.reduce(rep));
    }
    std::sort(labels.begin(), labels.end(), [](const BitVector& a, const BitVector& b) {
        return a.lex_less(b);
    });
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        flag("two representatives share a coset of C/C'");
    }
    return report;
}

std::vector<BitVector> codeword_support(const PcssCode& pcss, const BitVector& s) {
    require(s.size() == pcss.m(), ErrorCode::DimensionMismatch,
            "codeword_support: s must have m bits");
    std::size_t t_bits = pcss.k() - pcss.m();
    require(t_bits <= 26, ErrorCode::TooLarge, "codeword_support: coset too large to list");
    const BitVector& x_s = pcss.coset_reps[static_cast<std::size_t>(s.to_u64())];
    std::vector<BitVector> support;
    support.reserve(std::size_t{1} << t_bits);
    std::vector<BitVector> cols(t_bits);
    for (std::size_t j = 0; j < t_bits; ++j) {
        cols[j] = pcss.cprime_gen.col(j);
    }
    BitVector cur = x_s;
    std::uint64_t prev_gray = 0;
    std::uint64_t count = std::uint64_t{1} << t_bits;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        if (i != 0) {
            cur ^= cols[static_cast<std::size_t>(std::countr_zero(gray ^ prev_gray))];
        }
        prev_gray = gray;
        support.push_back(cur);
    }
    return support;
}

namespace {

struct MinScan {
    bool found = false;
    std::size_t weight = 0;
    BitVector witness;

    void offer(const BitVector& v) {
        std::size_t w = v.weight();
        if (!found || w < weight || (w == weight && v.lex_less(witness))) {
            found = true;
            weight = w;
            witness = v;
        }
    }
};

// minimum-weight element of span(basis_cols) \ span(excluded)
MinScan min_weight_outside(const std::vector<BitVector>& basis, const Gf2Echelon& excluded,
                           std::size_t ambient) {
    MinScan best;
    BitVector cur(ambient);
    std::uint64_t prev_gray = 0;
    std::uint64_t count = std::uint64_t{1} << basis.size();
    for (std::uint64_t i = 1; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        cur ^= basis[static_cast<std::size_t>(std::countr_zero(gray ^ prev_gray))];
        prev_gray = gray;
        if (!excluded.contains(cur)) {
            best.offer(cur);
        }
    }
    return best;
}

std::vector<BitVector> independent_cols(const BitMatrix& m) {
    Gf2Echelon ech(m.rows());
    std::vector<BitVector> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        BitVector v = m.col(c);
        if (ech.insert(v)) {
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

}  // namespace

DistanceReport distance(const PcssCode& pcss) {
    std::size_t n = pcss.n(), k = pcss.k(), m = pcss.m();
    require(m >= 1, ErrorCode::InvalidArgument, "distance: code has no logical qubits");
    require(k <= 24, ErrorCode::TooLarge, "distance: 2^k enumeration too large");
    require(n - k + m <= 24, ErrorCode::TooLarge, "distance: 2^(n-k+m) enumeration too large");

    // d_x: lightest codeword of C outside C'
    std::vector<BitVector> c_basis = independent_cols(pcss.code.generator());
    Gf2Echelon cprime(n);
    cprime.insert_cols(pcss.cprime_gen);
    MinScan x_scan = min_weight_outside(c_basis, cprime, n);
    require(x_scan.found, ErrorCode::InvalidArgument, "distance: C \\ C' is empty");

    // d_z: lightest element of C'^perp outside C^perp (the row space of H)
    std::vector<BitVector> cpp_basis = independent_cols(null_space_basis(pcss.x_stabs));
    Gf2Echelon cperp(n);
    cperp.insert_rows(pcss.z_stabs);
    MinScan z_scan = min_weight_outside(cpp_basis, cperp, n);
    require(z_scan.found, ErrorCode::InvalidArgument, "distance: C'^perp \\ C^perp is empty");

    DistanceReport report;
    report.d_x = x_scan.weight;
    report.d_z = z_scan.weight;
    report.d = std::min(report.d_x, report.d_z);
    report.witness_x = std::move(x_scan.witness);
    report.witness_z = std::move(z_scan.witness);
    return report;
}

namespace {

std::string row_to_operator(char type, const BitVector& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row.get(i)) {
            out += type;
            out += std::to_string(i + 1);
        }
    }
    return out.empty() ? "I" : out;
}

BitMatrix echelonized_rows(const BitMatrix& m) {
    return rref(m).reduced;
}

}  // namespace

std::vector<std::string> stabilizer_strings(const PcssCode& pcss, bool canonical) {
    BitMatrix z = canonical ? echelonized_rows(pcss.z_stabs) : pcss.z_stabs;
    BitMatrix x = canonical ? echelonized_rows(pcss.x_stabs) : pcss.x_stabs;
    std::vector<std::string> out;
    out.reserve(z.rows() + x.rows());
    for (std::size_t r = 0; r < z.rows(); ++r) {
        out.push_back(row_to_operator('Z', z.row(r)));
    }
    for (std::size_t r = 0; r < x.rows(); ++r) {
        out.push_back(row_to_operator('X', x.row(r)));
    }
    return out;
}

std::pair<char, BitVector> parse_stabilizer(std::string_view text, std::size_t n) {
    require(!text.empty(), ErrorCode::ParseError, "empty stabilizer string");
    BitVector row(n);
    if (text == "I") {
        return {'I', row};
    }
    char type = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        require(c == 'X' || c == 'Z', ErrorCode::ParseError,
                "stabilizer string: expected 'X' or 'Z'");
        require(type == 0 || type == c, ErrorCode::ParseError,
                "stabilizer string: mixed X and Z factors");
        type = c;
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
        }
        require(pos > start, ErrorCode::ParseError, "stabilizer string: missing qubit index");
        std::size_t idx = 0;
        std::from_chars(text.data() + start, text.data() + pos, idx);
        require(idx >= 1 && idx <= n, ErrorCode::ParseError,
                "stabilizer string: qubit index out of range");
        require(!row.get(idx - 1), ErrorCode::ParseError,
                "stabilizer string: repeated qubit index");
        row.set(idx - 1, true);
    }
    return {type, row};
}

}  // namespace pcss
