#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcss/gf2k.hpp"
#include "pcss/linear_code.hpp"

namespace pcss {

/// The quantum code derived from a classical [n, k] code C and an affine
/// hash f(y) = A y + s0: an [[n, m]] CSS code whose Z stabilizers are the
/// rows of H and whose X stabilizers are the rows of (G F)^T, where the
/// columns of F span ker A. Immutable after construction.
struct PcssCode {
    LinearCode code;
    HashRealization hash;
    BitMatrix f;           // k x (k - m)
    BitMatrix cprime_gen;  // n x (k - m), = G F (generator of C')
    BitMatrix z_stabs;     // rows of H
    BitMatrix x_stabs;     // (G F)^T
    /// Minimum-weight codeword of C_s per hash output s (ties lexicographic),
    /// indexed by s as a little-endian integer. Size 2^m.
    std::vector<BitVector> coset_reps;

    std::size_t n() const { return code.n(); }
    std::size_t k() const { return code.k(); }
    std::size_t m() const { return static_cast<std::size_t>(hash.m()); }
};

/// Build the code. The hash must act on k = code.k() bits. Representative
/// enumeration is guarded to k <= 26.
PcssCode construct(const LinearCode& code, const HashRealization& hash);

/// Structural self-check: H (G F) = 0 (equivalently, every Z stabilizer
/// commutes with every X stabilizer), rank conditions, and the coset
/// partition behind the 2^m codewords. Failures are reported, not thrown.
struct CssReport {
    bool pass = true;
    std::vector<std::string> failures;
};
CssReport verify_css(const PcssCode& pcss);

/// The 2^(k-m) computational-basis strings supporting quantum codeword s.
std::vector<BitVector> codeword_support(const PcssCode& pcss, const BitVector& s);

struct DistanceReport {
    std::size_t d_x = 0;  // min weight of C \ C'
    std::size_t d_z = 0;  // min weight of C'^perp \ C^perp
    std::size_t d = 0;    // min(d_x, d_z)
    BitVector witness_x;  // a minimal-weight logical X representative
    BitVector witness_z;  // a minimal-weight logical Z representative
};

/// Exact distance by enumerating C (2^k) and C'^perp (2^(n-k+m)); both
/// exponents are guarded to 24. Requires m >= 1 (a code with no logical
/// qubits has no logical operators to measure).
DistanceReport distance(const PcssCode& pcss);

/// Human-readable 1-indexed operator strings ("Z4Z5Z6Z7"); Z rows first,
/// then X rows, in matrix row order. `canonical` re-echelonizes the two
/// generator sets first so different presentations of the same group
/// compare equal.
std::vector<std::string> stabilizer_strings(const PcssCode& pcss, bool canonical = false);

/// Inverse of the string form: "X2X3X6X7" -> ('X', 0110011). An identity
/// row prints and parses as "I".
std::pair<char, BitVector> parse_stabilizer(std::string_view text, std::size_t n);

}  // namespace pcss
