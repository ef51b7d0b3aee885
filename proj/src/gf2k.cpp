#include "pcss/gf2k.hpp"

#include <charconv>
#include <map>
#include <vector>

#include "pcss/error.hpp"
#include "pcss/rng.hpp"

namespace pcss {

namespace {

constexpr int kMaxDegree = 32;

void check_element(const FieldSpec& spec, FieldElement x, const char* what) {
    require(x < (std::uint64_t{1} << spec.k), ErrorCode::InvalidArgument,
            std::string(what) + ": element is not reduced modulo the field spec");
}

// polynomial product over GF(2), then reduction mod `modulus` of degree k
FieldElement mul_mod(int k, std::uint64_t modulus, FieldElement x, FieldElement y) {
    std::uint64_t acc = 0;
    while (y != 0) {
        if (y & 1) {
            acc ^= x;
        }
        y >>= 1;
        x <<= 1;
        if ((x >> k) & 1) {
            x ^= modulus;
        }
    }
    return acc;
}

int poly_degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    int dm = poly_degree(m);
    for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) {
        a ^= m << (d - dm);
    }
    return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// x^(2^e) mod f by repeated squaring of the current power
std::uint64_t x_pow_pow2_mod(int e, int k, std::uint64_t f) {
    std::uint64_t acc = poly_mod(2, f);  // the polynomial x
    for (int i = 0; i < e; ++i) {
        acc = mul_mod(k, f, acc, acc);
    }
    return acc;
}

bool is_irreducible(int k, std::uint64_t f) {
    if ((f & 1) == 0) {
        return false;  // x divides f
    }
    // f irreducible iff x^(2^k) == x (mod f) and gcd(x^(2^(k/p)) - x, f) = 1
    // for every prime p | k.
    if (x_pow_pow2_mod(k, k, f) != poly_mod(2, f)) {
        return false;
    }
    for (int p = 2; p <= k; ++p) {
        if (k % p != 0) {
            continue;
        }
        bool prime = true;
        for (int q = 2; q * q <= p; ++q) {
            if (p % q == 0) {
                prime = false;
                break;
            }
        }
        if (!prime) {
            continue;
        }
        std::uint64_t t = x_pow_pow2_mod(k / p, k, f) ^ poly_mod(2, f);
        if (poly_gcd(t == 0 ? f : t, f) != 1) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> factor_by_trial_division(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        primes.push_back(n);
    }
    return primes;
}

bool zeta_is_primitive(int k, std::uint64_t f) {
    std::uint64_t order = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t p : factor_by_trial_division(order)) {
        FieldElement e = 2;
        std::uint64_t exp = order / p;
        FieldElement acc = 1;
        while (exp != 0) {
            if (exp & 1) {
                acc = mul_mod(k, f, acc, e);
            }
            e = mul_mod(k, f, e, e);
            exp >>= 1;
        }
        if (acc == 1) {
            return false;
        }
    }
    return true;
}

}  // namespace

FieldSpec FieldSpec::with_default_modulus(int k) {
    require(k >= 1 && k <= kMaxDegree, ErrorCode::InvalidArgument,
            "field degree must be in [1, 32]");
    static std::map<int, std::uint64_t> cache;
    auto it = cache.find(k);
    if (it == cache.end()) {
        std::uint64_t found = 0;
        for (std::uint64_t f = (std::uint64_t{1} << k) | 1; f < (std::uint64_t{2} << k);
             f += 2) {
            if (is_irreducible(k, f) && zeta_is_primitive(k, f)) {
                found = f;
                break;
            }
        }
        it = cache.emplace(k, found).first;
    }
    FieldSpec spec;
    spec.k = k;
    spec.modulus = it->second;
    spec.primitive_zeta = true;
    return spec;
}

FieldSpec FieldSpec::with_modulus(int k, std::uint64_t modulus) {
    require(k >= 1 && k <= kMaxDegree, ErrorCode::InvalidArgument,
            "field degree must be in [1, 32]");
    require(poly_degree(modulus) == k, ErrorCode::InvalidArgument,
            "modulus must have degree exactly k");
    require(is_irreducible(k, modulus), ErrorCode::InvalidArgument, "modulus is not irreducible");
    FieldSpec spec;
    spec.k = k;
    spec.modulus = modulus;
    spec.primitive_zeta = zeta_is_primitive(k, modulus);
    return spec;
}

FieldSpec FieldSpec::parse(std::string_view text) {
    auto colon = text.find(':');
    require(colon != std::string_view::npos, ErrorCode::ParseError,
            "field spec must look like \"k:bits\"");
    int k = 0;
    auto head = text.substr(0, colon);
    auto res = std::from_chars(head.data(), head.data() + head.size(), k);
    require(res.ec == std::errc{} && res.ptr == head.data() + head.size(), ErrorCode::ParseError,
            "field spec: bad degree");
    auto bits = text.substr(colon + 1);
    require(bits.size() == static_cast<std::size_t>(k) + 1, ErrorCode::ParseError,
            "field spec: modulus must have k + 1 coefficient bits");
    std::uint64_t modulus = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            modulus |= std::uint64_t{1} << i;
        } else if (bits[i] != '0') {
            fail(ErrorCode::ParseError, "field spec: modulus bits must be '0'/'1'");
        }
    }
    return with_modulus(k, modulus);
}

std::string FieldSpec::to_string() const {
    std::string bits(static_cast<std::size_t>(k) + 1, '0');
    for (int i = 0; i <= k; ++i) {
        if ((modulus >> i) & 1) {
            bits[static_cast<std::size_t>(i)] = '1';
        }
    }
    return std::to_string(k) + ":" + bits;
}

FieldElement field_add(FieldElement x, FieldElement y) {
    return x ^ y;
}

FieldElement field_mul(const FieldSpec& spec, FieldElement x, FieldElement y) {
    check_element(spec, x, "field_mul");
    check_element(spec, y, "field_mul");
    return mul_mod(spec.k, spec.modulus, x, y);
}

FieldElement field_pow(const FieldSpec& spec, FieldElement x, std::int64_t e) {
    check_element(spec, x, "field_pow");
    if (x == 0) {
        require(e > 0, ErrorCode::InvalidArgument, "field_pow: 0 to a non-positive power");
        return 0;
    }
    std::uint64_t order = spec.order();
    std::uint64_t exp = static_cast<std::uint64_t>(((e % static_cast<std::int64_t>(order)) +
                                                    static_cast<std::int64_t>(order)) %
                                                   static_cast<std::int64_t>(order));
    FieldElement acc = 1;
    FieldElement base = x;
    while (exp != 0) {
        if (exp & 1) {
            acc = field_mul(spec, acc, base);
        }
        base = field_mul(spec, base, base);
        exp >>= 1;
    }
    return acc;
}

FieldElement field_inv(const FieldSpec& spec, FieldElement x) {
    require(x != 0, ErrorCode::InvalidArgument, "field_inv: zero has no inverse");
    return field_pow(spec, x, static_cast<std::int64_t>(spec.order()) - 1);
}

FieldElement element_from_power(const FieldSpec& spec, std::int64_t power) {
    return field_pow(spec, spec.zeta(), power);
}

FieldElement parse_field_element(const FieldSpec& spec, std::string_view text) {
    require(!text.empty(), ErrorCode::ParseError, "empty field element");
    if (text == "0") {
        return 0;
    }
    if (text == "1") {
        return 1;
    }
    if (text.starts_with("zeta")) {
        if (text == "zeta") {
            return spec.zeta();
        }
        require(text[4] == '^', ErrorCode::ParseError,
                "field element: expected zeta^P, got \"" + std::string(text) + "\"");
        auto rest = text.substr(5);
        std::int64_t power = 0;
        auto res = std::from_chars(rest.data(), rest.data() + rest.size(), power);
        require(res.ec == std::errc{} && res.ptr == rest.data() + rest.size(),
                ErrorCode::ParseError, "field element: bad exponent");
        return element_from_power(spec, power);
    }
    BitVector bits = BitVector::from_string(text);
    require(bits.size() == static_cast<std::size_t>(spec.k), ErrorCode::ParseError,
            "field element: coefficient string must have k bits");
    return bits.to_u64();
}

BitVector element_to_bits(const FieldSpec& spec, FieldElement x) {
    check_element(spec, x, "element_to_bits");
    return BitVector::from_u64(x, static_cast<std::size_t>(spec.k));
}

FieldElement element_from_bits(const FieldSpec& spec, const BitVector& bits) {
    require(bits.size() == static_cast<std::size_t>(spec.k), ErrorCode::DimensionMismatch,
            "element_from_bits: wrong length");
    return bits.to_u64();
}

BitMatrix mul_matrix(const FieldSpec& spec, FieldElement a) {
    require(a != 0, ErrorCode::InvalidArgument, "mul_matrix: a must be nonzero");
    check_element(spec, a, "mul_matrix");
    std::size_t k = static_cast<std::size_t>(spec.k);
    BitMatrix m(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        FieldElement col = field_mul(spec, a, std::uint64_t{1} << j);
        for (std::size_t i = 0; i < k; ++i) {
            if ((col >> i) & 1) {
                m.set(i, j, true);
            }
        }
    }
    return m;
}

BitMatrix hash_matrix(const FieldSpec& spec, FieldElement a, int m) {
    require(m >= 1 && m <= spec.k, ErrorCode::InvalidArgument,
            "hash_matrix: m must be in [1, k]");
    BitMatrix full = mul_matrix(spec, a);
    BitMatrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(spec.k));
    for (std::size_t r = 0; r < out.rows(); ++r) {
        out.set_row(r, full.row(r));
    }
    return out;
}

HashRealization::HashRealization(BitMatrix a, BitVector s0,
                                 std::optional<HashProvenance> provenance)
    : a_(std::move(a)), s0_(std::move(s0)), prov_(std::move(provenance)) {
    require(s0_.size() == a_.rows(), ErrorCode::DimensionMismatch,
            "HashRealization: s0 length must equal the row count of A");
    require(a_.rows() <= a_.cols(), ErrorCode::InvalidArgument, "HashRealization: m > k");
    require(rank(a_) == a_.rows(), ErrorCode::RankDeficient,
            "HashRealization: A must have full rank");
}

HashRealization HashRealization::from_field(const FieldSpec& spec, FieldElement a,
                                            FieldElement b, int m) {
    BitMatrix mat = hash_matrix(spec, a, m);
    // s0 = first m coefficients of b: f(y) = tau(alpha(a y(zeta) + b))
    BitVector s0(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        if ((b >> i) & 1) {
            s0.set(static_cast<std::size_t>(i), true);
        }
    }
    return HashRealization(std::move(mat), std::move(s0), HashProvenance{spec, a, b});
}

BitVector HashRealization::eval(const BitVector& y) const {
    BitVector out = matvec(a_, y);
    out ^= s0_;
    return out;
}

BitMatrix HashRealization::kernel_basis() const {
    if (prov_) {
        // ker(tau_m o M_a) = M_{a^-1} span{e_m .. e_{k-1}}
        BitMatrix inv = mul_matrix(prov_->spec, field_inv(prov_->spec, prov_->a));
        std::size_t k = a_.cols(), m = a_.rows();
        BitMatrix basis(k, k - m);
        for (std::size_t j = 0; j < k - m; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                if (inv.get(i, m + j)) {
                    basis.set(i, j, true);
                }
            }
        }
        return basis;
    }
    return null_space_basis(a_);
}

HashRealization sample_hash(const FieldSpec& spec, int m, std::uint64_t seed) {
    require(m >= 1 && m <= spec.k, ErrorCode::InvalidArgument, "sample_hash: m must be in [1, k]");
    Rng rng = Rng::stream(seed, 0);
    std::uint64_t mask = spec.order();  // low k bits
    FieldElement a = 0;
    while (a == 0) {
        a = rng.next_u64() & mask;
    }
    FieldElement b = rng.next_u64() & mask;
    return HashRealization::from_field(spec, a, b, m);
}

double two_universality_max_collision(const FieldSpec& spec, int m) {
    require(spec.k <= 8, ErrorCode::TooLarge,
            "two_universality_max_collision: exhaustive check needs k <= 8");
    require(m >= 1 && m <= spec.k, ErrorCode::InvalidArgument, "m must be in [1, k]");
    std::uint64_t size = std::uint64_t{1} << spec.k;
    std::uint64_t out_mask = (std::uint64_t{1} << m) - 1;
    std::uint64_t worst = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
        for (std::uint64_t xp = x + 1; xp < size; ++xp) {
            std::uint64_t collisions = 0;
            for (FieldElement a = 1; a < size; ++a) {
                std::uint64_t hx = field_mul(spec, a, x) & out_mask;
                std::uint64_t hxp = field_mul(spec, a, xp) & out_mask;
                if (hx == hxp) {
                    ++collisions;
                }
            }
            worst = std::max(worst, collisions);
        }
    }
    return static_cast<double>(worst) / static_cast<double>(size - 1);
}

}  // namespace pcss
