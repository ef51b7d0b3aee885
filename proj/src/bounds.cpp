#include "pcss/bounds.hpp"

#include <cmath>
#include <limits>

#include "pcss/entropy.hpp"
#include "pcss/error.hpp"

namespace pcss {

namespace {

void validate_inputs(const BoundInputs& inp) {
    require(inp.m <= inp.k && inp.k <= inp.n, ErrorCode::InvalidArgument,
            "bound inputs need m <= k <= n");
    require(inp.epsilon >= 0.0 && inp.epsilon <= 1.0, ErrorCode::InvalidArgument,
            "epsilon must be in [0, 1]");
    require(inp.delta >= 0.0, ErrorCode::InvalidArgument, "delta must be >= 0");
}

double signed_kmn(const BoundInputs& inp) {
    return static_cast<double>(inp.k) - static_cast<double>(inp.n) -
           static_cast<double>(inp.m);
}

}  // namespace

std::string to_string(BoundMode mode) {
    switch (mode) {
        case BoundMode::Exact:
            return "exact";
        case BoundMode::Asymptotic:
            return "asymptotic";
        case BoundMode::Smooth:
            return "smooth";
    }
    return "?";
}

BoundMode bound_mode_from_string(std::string_view text) {
    if (text == "exact") {
        return BoundMode::Exact;
    }
    if (text == "asymptotic") {
        return BoundMode::Asymptotic;
    }
    if (text == "smooth") {
        return BoundMode::Smooth;
    }
    fail(ErrorCode::InvalidArgument, "unknown bound mode: " + std::string(text));
}

double epsilon_prime_exact_log2(const BoundInputs& inp) {
    validate_inputs(inp);
    PauliChannelIID ch = inp.channel_n();
    return -0.5 * (h2_XE(ch) - h0_E(ch) + signed_kmn(inp));
}

double epsilon_prime_asymptotic_log2(const BoundInputs& inp) {
    validate_inputs(inp);
    double i_xe = mutual_info_XE(inp.channel);
    return -0.5 * (-static_cast<double>(inp.n) * i_xe + static_cast<double>(inp.k) -
                   static_cast<double>(inp.m));
}

double epsilon_one_smooth_core_log2(const BoundInputs& inp) {
    validate_inputs(inp);
    double q = inp.channel.bitflip_marginal();
    // the cq state of (sent string, environment) is classical with per-qubit
    // spectrum (uniform bit) x (bit-flip marginal)
    const double xe_dist[4] = {(1.0 - q) / 2.0, (1.0 - q) / 2.0, q / 2.0, q / 2.0};
    const double e_dist[4] = {inp.channel.p_i, inp.channel.p_x, inp.channel.p_y,
                              inp.channel.p_z};
    double hinf_xe = smooth_renyi_iid_total(
        xe_dist, inp.n, std::numeric_limits<double>::infinity(), inp.delta);
    double h0_e = smooth_renyi_iid_total(e_dist, inp.n, 0.0, inp.delta);
    return -0.5 * (hinf_xe - h0_e + signed_kmn(inp));
}

double epsilon_one_smooth(const BoundInputs& inp) {
    return std::exp2(epsilon_one_smooth_core_log2(inp)) + 2.0 * inp.delta;
}

double eta(double epsilon, double epsilon_prime) {
    require(epsilon >= 0.0 && epsilon <= 1.0, ErrorCode::InvalidArgument,
            "eta: epsilon must be in [0, 1]");
    require(epsilon_prime >= 0.0, ErrorCode::InvalidArgument, "eta: epsilon' must be >= 0");
    double root_eps = std::sqrt(2.0 * epsilon);
    return 2.0 * std::sqrt(2.0 * epsilon_prime + 4.0 * root_eps) + 2.0 * root_eps;
}

EtaResult bound_point(const BoundInputs& inp, BoundMode mode) {
    EtaResult out;
    out.inputs = inp;
    out.mode = mode;
    switch (mode) {
        case BoundMode::Exact:
            out.log2_epsilon_prime = epsilon_prime_exact_log2(inp);
            out.epsilon_prime = std::exp2(out.log2_epsilon_prime);
            break;
        case BoundMode::Asymptotic:
            out.log2_epsilon_prime = epsilon_prime_asymptotic_log2(inp);
            out.epsilon_prime = std::exp2(out.log2_epsilon_prime);
            break;
        case BoundMode::Smooth:
            out.epsilon_prime = epsilon_one_smooth(inp);
            out.log2_epsilon_prime = std::log2(out.epsilon_prime);
            break;
    }
    out.eta = eta(inp.epsilon, out.epsilon_prime);
    return out;
}

std::vector<RatePoint> rate_curve(const SingleQubitPauli& channel, std::size_t n, std::size_t k,
                                  double epsilon, std::span<const double> rq_grid,
                                  BoundMode mode, double delta) {
    double max_rate = static_cast<double>(k) / static_cast<double>(n);
    std::vector<RatePoint> out;
    out.reserve(rq_grid.size());
    for (double r_q : rq_grid) {
        require(r_q > 0.0 && r_q <= max_rate + 1e-12, ErrorCode::InvalidArgument,
                "rate_curve: R_Q must lie in (0, k/n]");
        BoundInputs inp;
        inp.n = n;
        inp.k = k;
        inp.m = static_cast<std::size_t>(
            std::llround(r_q * static_cast<double>(n)));
        inp.m = std::min(inp.m, k);
        inp.epsilon = epsilon;
        inp.channel = channel;
        inp.delta = delta;
        EtaResult point = bound_point(inp, mode);
        out.push_back(RatePoint{r_q, point.eta, point.epsilon_prime, inp.m});
    }
    return out;
}

std::vector<double> uniform_rate_grid(std::size_t n, std::size_t k, std::size_t points) {
    require(points >= 1, ErrorCode::InvalidArgument, "grid needs at least one point");
    double max_rate = static_cast<double>(k) / static_cast<double>(n);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = max_rate * static_cast<double>(i + 1) / static_cast<double>(points);
    }
    return grid;
}

double hashing_rate_gap(const SingleQubitPauli& channel, double delta_cap) {
    require(delta_cap >= 0.0, ErrorCode::InvalidArgument, "Delta must be >= 0");
    double c = hashing_bound(channel);
    require(delta_cap <= c, ErrorCode::InvalidArgument,
            "Delta exceeds the hashing bound C");
    return c - delta_cap;
}

}  // namespace pcss
