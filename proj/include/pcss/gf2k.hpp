#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pcss/bitmat.hpp"

namespace pcss {

/// Field element of GF(2^k) in polynomial basis: bit i is the coefficient of
/// zeta^i. The spec it belongs to is passed alongside.
using FieldElement = std::uint64_t;

/// A concrete representation of GF(2^k): extension degree plus the
/// irreducible modulus (bit i = coefficient of x^i, bit k always set).
struct FieldSpec {
    int k = 0;
    std::uint64_t modulus = 0;
    bool primitive_zeta = false;  // whether the class of x generates GF(2^k)*

    /// Smallest irreducible modulus (by coefficient value) whose zeta is
    /// primitive. For k = 4 this is x^4 + x + 1.
    static FieldSpec with_default_modulus(int k);
    static FieldSpec with_modulus(int k, std::uint64_t modulus);

    /// "k:bits" with coefficients low-degree first, e.g. GF(16) with
    /// x^4 + x + 1 is "4:11001".
    static FieldSpec parse(std::string_view text);
    std::string to_string() const;

    FieldElement zeta() const { return k == 1 ? 1 : 2; }  // class of x, reduced
    std::uint64_t order() const { return (std::uint64_t{1} << k) - 1; }  // |GF(2^k)*|

    bool operator==(const FieldSpec& other) const {
        return k == other.k && modulus == other.modulus;
    }
};

FieldElement field_add(FieldElement x, FieldElement y);
FieldElement field_mul(const FieldSpec& spec, FieldElement x, FieldElement y);
FieldElement field_pow(const FieldSpec& spec, FieldElement x, std::int64_t e);
FieldElement field_inv(const FieldSpec& spec, FieldElement x);

/// zeta^power, with negative powers resolved through the group order.
FieldElement element_from_power(const FieldSpec& spec, std::int64_t power);

/// Accepts "zeta", "zeta^P" (P may be negative), "1", "0", or a '0'/'1'
/// coefficient string low-degree first ("1100" = 1 + zeta).
FieldElement parse_field_element(const FieldSpec& spec, std::string_view text);

BitVector element_to_bits(const FieldSpec& spec, FieldElement x);
FieldElement element_from_bits(const FieldSpec& spec, const BitVector& bits);

/// k x k matrix M_a with M_a y = coefficients of a * y(zeta); column j holds
/// a * zeta^j. Invertible for a != 0.
BitMatrix mul_matrix(const FieldSpec& spec, FieldElement a);

/// The m x k matrix of y -> first m coefficients of a * y(zeta); the linear
/// part of the hash h_{a,b} truncated to its output bits. Full rank m.
BitMatrix hash_matrix(const FieldSpec& spec, FieldElement a, int m);

struct HashProvenance {
    FieldSpec spec;
    FieldElement a = 0;
    FieldElement b = 0;
};

/// One realization f(y) = A y + s0 of the affine two-universal family, with
/// A full rank m x k. When built from field elements (a, b) the provenance
/// is kept so that downstream consumers can use the natural kernel basis.
class HashRealization {
  public:
    HashRealization(BitMatrix a, BitVector s0,
                    std::optional<HashProvenance> provenance = std::nullopt);

    static HashRealization from_field(const FieldSpec& spec, FieldElement a, FieldElement b,
                                      int m);

    int m() const { return static_cast<int>(a_.rows()); }
    int k() const { return static_cast<int>(a_.cols()); }
    const BitMatrix& matrix() const { return a_; }
    const BitVector& offset() const { return s0_; }
    const std::optional<HashProvenance>& provenance() const { return prov_; }

    /// A y + s0.
    BitVector eval(const BitVector& y) const;

    /// k x (k - m) basis of ker A. With provenance this is columns
    /// m..k-1 of mul_matrix(a^-1), which is the basis the truncated-field
    /// structure singles out; otherwise the generic RREF kernel basis.
    BitMatrix kernel_basis() const;

  private:
    BitMatrix a_;
    BitVector s0_;
    std::optional<HashProvenance> prov_;
};

/// Uniform draw of (a, b) with a != 0; deterministic in the seed.
HashRealization sample_hash(const FieldSpec& spec, int m, std::uint64_t seed);

/// Exhaustive check of the two-universal property: the maximum over distinct
/// input pairs of the collision probability over the whole family. Must come
/// out <= 2^-m. Guarded to k <= 8. The constant term b shifts both outputs
/// of a pair equally, so collisions are enumerated over a alone.
double two_universality_max_collision(const FieldSpec& spec, int m);

}  // namespace pcss
