#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcss/pauli_channel.hpp"

namespace pcss {

/// Inputs for the privacy-amplification error bounds of an [[n, m]] code
/// built on an [n, k] classical code with block-error probability epsilon,
/// used over n copies of `channel`.
struct BoundInputs {
    std::size_t n = 1;
    std::size_t k = 1;
    std::size_t m = 0;
    double epsilon = 0.0;  // classical block-error probability
    SingleQubitPauli channel;
    double delta = 0.0;  // smoothing parameter (smooth mode only)

    PauliChannelIID channel_n() const { return PauliChannelIID{channel, n}; }
};

enum class BoundMode { Exact, Asymptotic, Smooth };
std::string to_string(BoundMode mode);
BoundMode bound_mode_from_string(std::string_view text);

/// log2 of eps' = 2^{-1/2 (H2(XE) - H0(E) + k - n - m)}, assembled from the
/// closed-form channel entropies. Exponents stay in log2 domain; the H0
/// term makes this mode vacuous (eps' > 1) for channels whose environment
/// support is much larger than its Shannon entropy.
double epsilon_prime_exact_log2(const BoundInputs& inp);

/// log2 of the large-n estimate eps' = 2^{-1/2 (-n I(X;E) + k - m)}.
double epsilon_prime_asymptotic_log2(const BoundInputs& inp);

/// log2 of the smooth core 2^{-1/2 (Hinf^delta(XE) - H0^delta(E) + k - n - m)},
/// with the two smooth entropies computed over type classes.
double epsilon_one_smooth_core_log2(const BoundInputs& inp);

/// eps_1 = smooth core + 2 delta. Returned in linear domain because of the
/// additive 2 delta.
double epsilon_one_smooth(const BoundInputs& inp);

/// eta = 2 sqrt(2 eps' + 4 sqrt(2 eps)) + 2 sqrt(2 eps).
/// Requires eps in [0, 1]; eps' >= 0 (values above 1 give a vacuous but
/// well-defined bound).
double eta(double epsilon, double epsilon_prime);

/// A fully evaluated bound point; keeps its inputs so downstream comparisons
/// can check provenance.
struct EtaResult {
    BoundInputs inputs;
    BoundMode mode = BoundMode::Exact;
    double log2_epsilon_prime = 0.0;  // -inf means flushed to zero
    double epsilon_prime = 0.0;       // linear; underflow flushes to 0
    double eta = 0.0;
};
EtaResult bound_point(const BoundInputs& inp, BoundMode mode);

struct RatePoint {
    double r_q = 0.0;
    double eta = 0.0;
    double epsilon_prime = 0.0;
    std::size_t m = 0;
};

/// Evaluate the bound along a grid of quantum code rates R_Q = m/n
/// (m = round(R_Q n)). Grid rates must lie in (0, k/n].
std::vector<RatePoint> rate_curve(const SingleQubitPauli& channel, std::size_t n, std::size_t k,
                                  double epsilon, std::span<const double> rq_grid,
                                  BoundMode mode, double delta = 0.0);

/// points evenly spaced rates covering (0, k/n].
std::vector<double> uniform_rate_grid(std::size_t n, std::size_t k, std::size_t points);

/// Achievable rate C - Delta below the hashing bound.
double hashing_rate_gap(const SingleQubitPauli& channel, double delta_cap);

}  // namespace pcss
