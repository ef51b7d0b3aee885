#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcss/bitmat.hpp"

namespace pcss {

/// Classical [n, k] linear code with n x k generator G and (n-k) x n parity
/// check H, H G = 0. Immutable after construction.
class LinearCode {
  public:
    static LinearCode from_generator(const BitMatrix& g);
    static LinearCode from_parity(const BitMatrix& h);
    /// Both matrices given (validates H G = 0 and the rank conditions).
    static LinearCode from_pair(BitMatrix g, BitMatrix h);
    /// The [7,4,3] Hamming code with the textbook generator/check pair.
    static LinearCode hamming7();

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    const BitMatrix& generator() const { return g_; }
    const BitMatrix& parity() const { return h_; }

    BitVector encode(const BitVector& y) const { return matvec(g_, y); }
    BitVector syndrome(const BitVector& u) const { return matvec(h_, u); }

  private:
    LinearCode(BitMatrix g, BitMatrix h);
    std::size_t n_, k_;
    BitMatrix g_;
    BitMatrix h_;
};

struct DecodeResult {
    BitVector u_hat;
    bool converged = true;
};

/// Inverse-syndrome function: anything that produces some u with
/// checks * u = syndrome (when it converges).
class SyndromeDecoder {
  public:
    virtual ~SyndromeDecoder() = default;
    virtual DecodeResult decode(const BitVector& syndrome) const = 0;
};

/// Exact coset-leader table: u_hat(e) is the minimum-weight vector with
/// syndrome e, ties broken lexicographically. Always "converges".
class CosetLeaderTable final : public SyndromeDecoder {
  public:
    /// Build for an arbitrary r x n check matrix. Enumerates all 2^n error
    /// patterns, so both r <= 26 and n <= 28 are enforced.
    static CosetLeaderTable build(const BitMatrix& checks);
    static CosetLeaderTable build(const LinearCode& code) { return build(code.parity()); }

    DecodeResult decode(const BitVector& syndrome) const override;
    BitVector leader(const BitVector& syndrome) const;

    std::size_t syndrome_bits() const { return r_; }
    std::size_t block_length() const { return n_; }

  private:
    CosetLeaderTable(std::size_t n, std::size_t r, std::vector<std::uint64_t> leaders)
        : n_(n), r_(r), leaders_(std::move(leaders)) {}
    std::size_t n_, r_;
    std::vector<std::uint64_t> leaders_;  // indexed by syndrome bits, little-endian
};

/// Syndrome-domain sum-product decoder on the Tanner graph of H.
/// Flooding schedule, early stop on syndrome match. Non-convergence within
/// max_iters is reported, not thrown (it is a detected error).
class BpDecoder final : public SyndromeDecoder {
  public:
    BpDecoder(const LinearCode& code, double flip_prob, int max_iters = 100);

    DecodeResult decode(const BitVector& syndrome) const override;

    double flip_prob() const { return flip_prob_; }
    int max_iters() const { return max_iters_; }

  private:
    std::size_t n_, r_;
    double flip_prob_;
    double prior_llr_;
    int max_iters_;
    std::vector<std::vector<std::size_t>> check_vars_;  // per check: variable ids
    std::vector<std::vector<std::size_t>> var_checks_;  // per variable: check ids
};

/// Convenience wrapper matching the one-shot call shape; builds the Tanner
/// graph each call, so prefer BpDecoder for loops.
DecodeResult bp_decode(const LinearCode& code, double flip_prob, const BitVector& syndrome,
                       int max_iters = 100);

struct SyndromeStat {
    std::uint64_t syndrome;  // little-endian bits
    double p_e;
    double eps_e;
};

/// Block-error statistics of the bit-flip channel for a code + decoder.
struct BitflipStats {
    double epsilon = 0.0;
    enum class Method { Exact, MonteCarlo } method = Method::Exact;
    bool include_detected = true;
    std::optional<double> ci;  // Wilson 95% half-width (Monte Carlo)
    std::uint64_t trials = 0;
    std::uint64_t detected = 0;
    std::uint64_t undetected = 0;
    std::uint64_t seed = 0;
    double flip_prob = 0.0;
    std::optional<std::vector<SyndromeStat>> per_syndrome;  // exact mode only
};

/// Exact epsilon = sum_e p_e eps(e) by enumerating all 2^n error patterns
/// under the i.i.d. bit-flip marginal. Requires n <= 20.
/// include_detected extends the error count to syndromes where the decoder
/// fails to converge; with a coset-leader decoder the two accountings agree.
BitflipStats epsilon_exact(const LinearCode& code, const SyndromeDecoder& decoder,
                           double flip_prob, bool include_detected = true);

/// Monte Carlo estimate with Wilson 95% CI; detected (non-converged) and
/// undetected failures are counted separately. Bit-identical results for a
/// fixed seed regardless of the thread count.
BitflipStats epsilon_monte_carlo(const LinearCode& code, const SyndromeDecoder& decoder,
                                 double flip_prob, std::uint64_t trials, std::uint64_t seed,
                                 int threads = 1, bool include_detected = true);

/// MacKay alist interchange format (1-based indices). Returns the parity
/// check matrix; round-trips with save_alist.
BitMatrix load_alist(std::string_view text);
std::string save_alist(const BitMatrix& h);

/// Wilson score interval half-width at 95% for successes/trials.
double wilson_half_width(std::uint64_t successes, std::uint64_t trials);

}  // namespace pcss
