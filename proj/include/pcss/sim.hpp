#pragma once

#include <cstdint>
#include <optional>

#include "pcss/bounds.hpp"
#include "pcss/pcss_code.hpp"

namespace pcss {

/// Phase-side inverse syndrome: v_hat(i) is the minimum-weight v with
/// (G F)^T v = i, ties lexicographic. Mirrors the bit-side coset leaders.
CosetLeaderTable build_phase_decoder(const PcssCode& pcss);

struct DecodeOutcome {
    BitVector syndrome_e;  // H u, n-k bits
    BitVector syndrome_i;  // (G F)^T v, k-m bits
    BitVector residual_u;  // u + u_hat(e); always lies in C
    BitVector residual_v;  // v + v_hat(i); always lies in C'^perp
    bool logical_x_fail = false;  // residual_u outside C'
    bool logical_z_fail = false;  // residual_v outside C^perp
};

/// Precomputed decoding context: both leader tables plus the membership
/// bases for the failure tests. Safe to share across threads.
class PauliFrameContext {
  public:
    static PauliFrameContext build(const PcssCode& pcss);

    const CosetLeaderTable& bit_decoder() const { return bit_; }
    const CosetLeaderTable& phase_decoder() const { return phase_; }
    bool in_cprime(const BitVector& v) const { return cprime_.contains(v); }
    bool in_cperp(const BitVector& v) const { return cperp_.contains(v); }

  private:
    PauliFrameContext(CosetLeaderTable bit, CosetLeaderTable phase, Gf2Echelon cprime,
                      Gf2Echelon cperp)
        : bit_(std::move(bit)), phase_(std::move(phase)), cprime_(std::move(cprime)),
          cperp_(std::move(cperp)) {}
    CosetLeaderTable bit_;
    CosetLeaderTable phase_;
    Gf2Echelon cprime_;  // column span of G F
    Gf2Echelon cperp_;   // row span of H
};

/// One shot of the Pauli-frame decoder. The outcome depends only on (u, v),
/// never on which codeword would have been sent.
DecodeOutcome decode_pauli(const PcssCode& pcss, const PauliError& err,
                           const PauliFrameContext& ctx);

struct LogicalErrorReport {
    double p_fail = 0.0;    // any logical error
    double p_x_fail = 0.0;  // residual bit-flip is a logical X
    double p_z_fail = 0.0;  // residual phase-flip is a logical Z
    enum class Method { Exhaustive, MonteCarlo } method = Method::Exhaustive;
    std::optional<double> ci;  // Wilson 95% half-width of p_fail (MC)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    SingleQubitPauli channel;
};

/// Exact failure probabilities by summing the channel weight of every
/// (u, v) pair; 4^n terms, so n <= 10.
LogicalErrorReport logical_error_exhaustive(const PcssCode& pcss, const PauliChannelIID& ch,
                                            const PauliFrameContext& ctx);

/// Monte Carlo estimate; bit-identical across thread counts for a fixed
/// seed (per-trial streams, integer tallies).
LogicalErrorReport logical_error_mc(const PcssCode& pcss, const PauliChannelIID& ch,
                                    const PauliFrameContext& ctx, std::uint64_t trials,
                                    std::uint64_t seed, int threads = 1);

/// Checks 2 p_fail <= eta (+ statistical slack for Monte Carlo reports).
/// A Pauli logical failure displaces the output from the ideal state by
/// trace distance at most 2, so twice the failure probability must stay
/// under any valid eta for the same code and channel.
struct EtaVerdict {
    bool holds = false;
    double lhs = 0.0;    // 2 p_fail
    double rhs = 0.0;    // eta
    double slack = 0.0;  // 3 sigma on the lhs for MC reports
    double margin = 0.0; // rhs + slack - lhs
};
EtaVerdict compare_to_eta(const LogicalErrorReport& report, const EtaResult& bound);

}  // namespace pcss
