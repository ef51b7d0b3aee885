#include <bit>
#include <cmath>
#include <vector>

#include "pcss/error.hpp"
#include "pcss/pauli_channel.hpp"

namespace pcss {

namespace {

// dense real symmetric matrix, row-major
struct Sym {
    std::size_t dim = 0;
    std::vector<double> a;
    explicit Sym(std::size_t d) : dim(d), a(d * d, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
};

double trace_square(const Sym& m) {
    double acc = 0.0;
    for (double x : m.a) {
        acc += x * x;
    }
    return acc;
}

// cyclic Jacobi; returns the eigenvalues (unsorted)
std::vector<double> eigenvalues(Sym m) {
    std::size_t d = m.dim;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                off += m.at(i, j) * m.at(i, j);
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                double apq = m.at(p, q);
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                double app = m.at(p, p), aqq = m.at(q, q);
                double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t i = 0; i < d; ++i) {
                    double aip = m.at(i, p), aiq = m.at(i, q);
                    m.at(i, p) = c * aip - s * aiq;
                    m.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    double api = m.at(p, i), aqi = m.at(q, i);
                    m.at(p, i) = c * api - s * aqi;
                    m.at(q, i) = s * api + c * aqi;
                }
            }
        }
    }
    std::vector<double> evals(d);
    for (std::size_t i = 0; i < d; ++i) {
        evals[i] = m.at(i, i);
    }
    return evals;
}

double log2_rank(const Sym& m) {
    std::vector<double> evals = eigenvalues(m);
    double max_ev = 0.0;
    for (double ev : evals) {
        max_ev = std::max(max_ev, std::abs(ev));
    }
    if (max_ev == 0.0) {
        return 0.0;
    }
    std::size_t rank = 0;
    for (double ev : evals) {
        if (std::abs(ev) > 1e-10 * max_ev) {
            ++rank;
        }
    }
    return std::log2(static_cast<double>(rank));
}

// environment state of one transmitted basis string x: block diagonal in u,
// entry [(u,v), (u,v')] = sqrt(P(u,v) P(u,v')) (-1)^((v^v') . x)
Sym environment_state(const SingleQubitPauli& single, std::size_t n, std::uint64_t x) {
    std::size_t half = std::size_t{1} << n;
    Sym rho(half * half);
    std::vector<double> joint(half * half);  // P(u, v) as products over qubits
    for (std::uint64_t u = 0; u < half; ++u) {
        for (std::uint64_t v = 0; v < half; ++v) {
            double p = 1.0;
            for (std::size_t q = 0; q < n; ++q) {
                p *= single.prob((u >> q) & 1, (v >> q) & 1);
            }
            joint[(u << n) | v] = p;
        }
    }
    for (std::uint64_t u = 0; u < half; ++u) {
        for (std::uint64_t v = 0; v < half; ++v) {
            double pv = joint[(u << n) | v];
            if (pv == 0.0) {
                continue;
            }
            for (std::uint64_t vp = 0; vp < half; ++vp) {
                double pvp = joint[(u << n) | vp];
                if (pvp == 0.0) {
                    continue;
                }
                int sign = std::popcount((v ^ vp) & x) & 1 ? -1 : 1;
                rho.at((u << n) | v, (u << n) | vp) = sign * std::sqrt(pv * pvp);
            }
        }
    }
    return rho;
}

void add_scaled(Sym& dst, const Sym& src, double scale) {
    for (std::size_t i = 0; i < dst.a.size(); ++i) {
        dst.a[i] += scale * src.a[i];
    }
}

}  // namespace

DensityOracleResult density_matrix_oracle(const PauliChannelIID& ch, const LinearCode& code) {
    std::size_t n = ch.n;
    require(code.n() == n, ErrorCode::DimensionMismatch,
            "density_matrix_oracle: code length must match channel width");
    require(n <= 3, ErrorCode::TooLarge, "density_matrix_oracle: needs n <= 3");
    std::size_t k = code.k();
    std::size_t e_dim = std::size_t{1} << (2 * n);
    std::size_t x_count = std::size_t{1} << n;
    std::size_t y_count = std::size_t{1} << k;

    // omega^{XE} and sigma^{YE} are block diagonal in the classical register,
    // so tr(rho^2) is the sum of per-block traces; the E marginals are the
    // averaged blocks.
    Sym omega_e(e_dim), sigma_e(e_dim);
    double omega_tr2 = 0.0, sigma_tr2 = 0.0;
    for (std::uint64_t x = 0; x < x_count; ++x) {
        Sym block = environment_state(ch.single, n, x);
        omega_tr2 += trace_square(block) / static_cast<double>(x_count * x_count);
        add_scaled(omega_e, block, 1.0 / static_cast<double>(x_count));
    }
    for (std::uint64_t y = 0; y < y_count; ++y) {
        BitVector x_vec = code.encode(BitVector::from_u64(y, k));
        std::uint64_t x = x_vec.to_u64();
        Sym block = environment_state(ch.single, n, x);
        sigma_tr2 += trace_square(block) / static_cast<double>(y_count * y_count);
        add_scaled(sigma_e, block, 1.0 / static_cast<double>(y_count));
    }

    DensityOracleResult out;
    out.h2_XE_omega = -std::log2(omega_tr2);
    out.h2_YE_sigma = -std::log2(sigma_tr2);
    out.h0_E_omega = log2_rank(omega_e);
    out.h0_E_sigma = log2_rank(sigma_e);
    return out;
}

}  // namespace pcss
