#pragma once

#include <cstdint>

#include "pcss/bitmat.hpp"
#include "pcss/linear_code.hpp"
#include "pcss/rng.hpp"

namespace pcss {

/// Per-qubit Pauli error distribution, indexed by the symplectic pair
/// (u, v): I = (0,0), X = (1,0), Z = (0,1), Y = (1,1). An error X^u Z^v is
/// applied with probability p_{u,v}.
struct SingleQubitPauli {
    double p_i = 1.0, p_x = 0.0, p_y = 0.0, p_z = 0.0;

    static SingleQubitPauli from_probs(double pi, double px, double py, double pz);
    /// (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)
    static SingleQubitPauli depolarizing(double p);

    double prob(bool u, bool v) const {
        return u ? (v ? p_y : p_x) : (v ? p_z : p_i);
    }
    double bitflip_marginal() const { return p_x + p_y; }    // P(u = 1)
    double phaseflip_marginal() const { return p_z + p_y; }  // P(v = 1)
    int support_size() const;

    bool operator==(const SingleQubitPauli&) const = default;
};

/// n independent copies of a single-qubit Pauli channel.
struct PauliChannelIID {
    SingleQubitPauli single;
    std::size_t n = 1;
};

struct PauliError {
    BitVector u, v;
};

/// One i.i.d. draw; consumes one double per qubit from the stream.
PauliError sample_error(const PauliChannelIID& ch, Rng& rng);

double binary_entropy(double p);
/// Shannon entropy in bits of an arbitrary distribution (0 log 0 = 0).
double shannon_entropy(std::span<const double> dist);

/// Per-qubit classical capacity toward the receiver: 1 - h2(P(u = 1)).
double mutual_info_XB(const SingleQubitPauli& single);
/// Per-qubit leakage to the environment: I(X;B) - C.
double mutual_info_XE(const SingleQubitPauli& single);
/// Hashing bound C = 1 - H({p_I, p_X, p_Y, p_Z}) per qubit.
double hashing_bound(const SingleQubitPauli& single);

/// Collision entropy of the cq state of (sent string, environment):
/// n (1 - log2(q^2 + (1-q)^2)) with q the bit-flip marginal.
double h2_XE(const PauliChannelIID& ch);
/// Rank entropy of the environment: n log2 |{(u,v) : p_{u,v} > 0}|.
/// The environment state is diagonal with eigenvalues prod p_{u_j, v_j};
/// the density-matrix oracle below confirms this at small n.
double h0_E(const PauliChannelIID& ch);

struct ChannelEntropies {
    double h2_XE = 0.0;      // total, n qubits
    double h0_E = 0.0;       // total, n qubits
    double i_XB = 0.0;       // per qubit
    double i_XE = 0.0;       // per qubit
    double hashing_C = 0.0;  // per qubit
    std::size_t n = 1;
};
ChannelEntropies compute_entropies(const PauliChannelIID& ch);

/// Explicit density matrices for tiny instances (n <= 3): the cq states of
/// (random n-bit string, environment) and (random message, environment of
/// its codeword). H2 from tr(rho^2), H0 from the numerical rank at relative
/// eigenvalue threshold 1e-10. Serves as the independent check for the
/// closed forms above and for the identities they rely on.
struct DensityOracleResult {
    double h2_YE_sigma = 0.0;
    double h2_XE_omega = 0.0;
    double h0_E_sigma = 0.0;
    double h0_E_omega = 0.0;
};
DensityOracleResult density_matrix_oracle(const PauliChannelIID& ch, const LinearCode& code);

}  // namespace pcss
