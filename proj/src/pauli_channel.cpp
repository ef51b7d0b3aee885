#include "pcss/pauli_channel.hpp"

#include <cmath>

#include "pcss/error.hpp"

namespace pcss {

SingleQubitPauli SingleQubitPauli::from_probs(double pi, double px, double py, double pz) {
    require(pi >= 0.0 && px >= 0.0 && py >= 0.0 && pz >= 0.0, ErrorCode::InvalidArgument,
            "Pauli probabilities must be nonnegative");
    double total = pi + px + py + pz;
    require(std::abs(total - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
            "Pauli probabilities must sum to 1 (within 1e-12)");
    return SingleQubitPauli{pi, px, py, pz};
}

SingleQubitPauli SingleQubitPauli::depolarizing(double p) {
    require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument,
            "depolarizing: p must be in [0, 1]");
    return SingleQubitPauli{1.0 - p, p / 3.0, p / 3.0, p / 3.0};
}

int SingleQubitPauli::support_size() const {
    return (p_i > 0.0) + (p_x > 0.0) + (p_y > 0.0) + (p_z > 0.0);
}

PauliError sample_error(const PauliChannelIID& ch, Rng& rng) {
    PauliError err{BitVector(ch.n), BitVector(ch.n)};
    const SingleQubitPauli& p = ch.single;
    double c1 = p.p_i, c2 = c1 + p.p_x, c3 = c2 + p.p_y;
    for (std::size_t q = 0; q < ch.n; ++q) {
        double r = rng.next_double();
        if (r < c1) {
            continue;  // I
        } else if (r < c2) {
            err.u.set(q, true);  // X
        } else if (r < c3) {
            err.u.set(q, true);  // Y
            err.v.set(q, true);
        } else {
            err.v.set(q, true);  // Z
        }
    }
    return err;
}

double binary_entropy(double p) {
    double acc = 0.0;
    if (p > 0.0) {
        acc -= p * std::log2(p);
    }
    if (p < 1.0) {
        acc -= (1.0 - p) * std::log2(1.0 - p);
    }
    return acc;
}

double shannon_entropy(std::span<const double> dist) {
    double acc = 0.0;
    for (double p : dist) {
        if (p > 0.0) {
            acc -= p * std::log2(p);
        }
    }
    return acc;
}

double mutual_info_XB(const SingleQubitPauli& single) {
    return 1.0 - binary_entropy(single.bitflip_marginal());
}

double hashing_bound(const SingleQubitPauli& single) {
    const double dist[4] = {single.p_i, single.p_x, single.p_y, single.p_z};
    return 1.0 - shannon_entropy(dist);
}

double mutual_info_XE(const SingleQubitPauli& single) {
    return mutual_info_XB(single) - hashing_bound(single);
}

double h2_XE(const PauliChannelIID& ch) {
    double q = ch.single.bitflip_marginal();
    double collision = q * q + (1.0 - q) * (1.0 - q);
    return static_cast<double>(ch.n) * (1.0 - std::log2(collision));
}

double h0_E(const PauliChannelIID& ch) {
    return static_cast<double>(ch.n) * std::log2(static_cast<double>(ch.single.support_size()));
}

ChannelEntropies compute_entropies(const PauliChannelIID& ch) {
    ChannelEntropies out;
    out.h2_XE = h2_XE(ch);
    out.h0_E = h0_E(ch);
    out.i_XB = mutual_info_XB(ch.single);
    out.i_XE = mutual_info_XE(ch.single);
    out.hashing_C = hashing_bound(ch.single);
    out.n = ch.n;
    return out;
}

}  // namespace pcss
