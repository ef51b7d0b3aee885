#include "pcss/linear_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

#include "pcss/error.hpp"
#include "pcss/rng.hpp"

namespace pcss {

namespace {

// packs the columns of an r x n check matrix as r-bit masks (r <= 64)
std::vector<std::uint64_t> column_masks(const BitMatrix& checks) {
    std::vector<std::uint64_t> cols(checks.cols(), 0);
    for (std::size_t r = 0; r < checks.rows(); ++r) {
        for (std::size_t c = 0; c < checks.cols(); ++c) {
            if (checks.get(r, c)) {
                cols[c] |= std::uint64_t{1} << r;
            }
        }
    }
    return cols;
}

// lexicographic compare of coordinate masks (coordinate 0 first, 0 < 1)
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    std::uint64_t diff = a ^ b;
    if (diff == 0) {
        return false;
    }
    std::uint64_t low = diff & ~(diff - 1);
    return (a & low) == 0;
}

}  // namespace

LinearCode::LinearCode(BitMatrix g, BitMatrix h)
    : n_(g.rows()), k_(g.cols()), g_(std::move(g)), h_(std::move(h)) {}

LinearCode LinearCode::from_generator(const BitMatrix& g) {
    require(rank(g) == g.cols(), ErrorCode::RankDeficient,
            "from_generator: generator must have full column rank");
    // rows of H span ker(G^T), i.e. the dual code
    BitMatrix h = null_space_basis(g.transposed()).transposed();
    return LinearCode(g, std::move(h));
}

LinearCode LinearCode::from_parity(const BitMatrix& h) {
    require(rank(h) == h.rows(), ErrorCode::RankDeficient,
            "from_parity: parity check must have full row rank");
    BitMatrix g = null_space_basis(h);
    return LinearCode(std::move(g), h);
}

LinearCode LinearCode::from_pair(BitMatrix g, BitMatrix h) {
    require(h.cols() == g.rows(), ErrorCode::DimensionMismatch,
            "from_pair: H columns must match G rows");
    require(g.rows() >= g.cols(), ErrorCode::InvalidArgument, "from_pair: k > n");
    require(h.rows() == g.rows() - g.cols(), ErrorCode::DimensionMismatch,
            "from_pair: H must have n - k rows");
    require(rank(g) == g.cols(), ErrorCode::RankDeficient, "from_pair: G rank deficient");
    require(rank(h) == h.rows(), ErrorCode::RankDeficient, "from_pair: H rank deficient");
    require(matmul(h, g).is_zero(), ErrorCode::InvalidArgument, "from_pair: H G != 0");
    return LinearCode(std::move(g), std::move(h));
}

LinearCode LinearCode::hamming7() {
    BitMatrix g = BitMatrix::from_rows({
                                           "1000",
                                           "0100",
                                           "0010",
                                           "0001",
                                           "0111",
                                           "1011",
                                           "1101",
                                       });
    BitMatrix h = BitMatrix::from_rows({
        "0001111",
        "0110011",
        "1010101",
    });
    return from_pair(std::move(g), std::move(h));
}

CosetLeaderTable CosetLeaderTable::build(const BitMatrix& checks) {
    std::size_t n = checks.cols(), r = checks.rows();
    require(r <= 26, ErrorCode::TooLarge,
            "coset leader table: 2^" + std::to_string(r) + " syndromes is too many");
    require(n <= 28, ErrorCode::TooLarge,
            "coset leader table: enumerating 2^" + std::to_string(n) + " patterns is too slow");
    std::vector<std::uint64_t> cols = column_masks(checks);
    std::size_t table_size = std::size_t{1} << r;
    std::vector<std::uint64_t> leaders(table_size, 0);
    std::vector<bool> seen(table_size, false);
    std::vector<unsigned> weight(table_size, 0);
    // Gray-code walk over all error patterns; syndrome updated one column
    // per step. (weight, lex) minimum kept per syndrome.
    std::uint64_t pattern = 0, syndrome = 0, prev_gray = 0;
    std::uint64_t count = std::uint64_t{1} << n;
    seen[0] = true;  // zero pattern
    for (std::uint64_t i = 1; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        int flipped = std::countr_zero(gray ^ prev_gray);
        prev_gray = gray;
        pattern ^= std::uint64_t{1} << flipped;
        syndrome ^= cols[static_cast<std::size_t>(flipped)];
        unsigned w = static_cast<unsigned>(std::popcount(pattern));
        auto s = static_cast<std::size_t>(syndrome);
        if (!seen[s] || w < weight[s] ||
            (w == weight[s] && mask_lex_less(pattern, leaders[s]))) {
            seen[s] = true;
            leaders[s] = pattern;
            weight[s] = w;
        }
    }
    for (std::size_t s = 0; s < table_size; ++s) {
        require(seen[s], ErrorCode::RankDeficient,
                "coset leader table: check matrix rows are dependent (unreachable syndrome)");
    }
    return CosetLeaderTable(n, r, std::move(leaders));
}

DecodeResult CosetLeaderTable::decode(const BitVector& syndrome) const {
    return DecodeResult{leader(syndrome), true};
}

BitVector CosetLeaderTable::leader(const BitVector& syndrome) const {
    require(syndrome.size() == r_, ErrorCode::DimensionMismatch,
            "coset leader: syndrome length mismatch");
    return BitVector::from_u64(leaders_[syndrome.to_u64()], n_);
}

BpDecoder::BpDecoder(const LinearCode& code, double flip_prob, int max_iters)
    : n_(code.n()),
      r_(code.parity().rows()),
      flip_prob_(flip_prob),
      max_iters_(max_iters) {
    require(flip_prob > 0.0 && flip_prob < 0.5, ErrorCode::InvalidArgument,
            "BpDecoder: flip_prob must be in (0, 1/2)");
    require(max_iters >= 1, ErrorCode::InvalidArgument, "BpDecoder: max_iters must be >= 1");
    prior_llr_ = std::log((1.0 - flip_prob) / flip_prob);
    const BitMatrix& h = code.parity();
    check_vars_.resize(r_);
    var_checks_.resize(n_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (h.get(i, j)) {
                check_vars_[i].push_back(j);
                var_checks_[j].push_back(i);
            }
        }
    }
}

DecodeResult BpDecoder::decode(const BitVector& syndrome) const {
    require(syndrome.size() == r_, ErrorCode::DimensionMismatch,
            "bp_decode: syndrome length mismatch");
    // edge-indexed messages: one slot per (check, var) incidence
    std::vector<std::vector<double>> var_to_check(r_), check_to_var(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        var_to_check[i].assign(check_vars_[i].size(), prior_llr_);
        check_to_var[i].assign(check_vars_[i].size(), 0.0);
    }
    // position of check i in var j's adjacency list
    std::vector<std::vector<std::size_t>> var_slot(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        var_slot[i].resize(check_vars_[i].size());
        for (std::size_t e = 0; e < check_vars_[i].size(); ++e) {
            std::size_t j = check_vars_[i][e];
            auto& adj = var_checks_[j];
            var_slot[i][e] = static_cast<std::size_t>(
                std::find(adj.begin(), adj.end(), i) - adj.begin());
        }
    }
    std::vector<std::vector<double>> incoming(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        incoming[j].assign(var_checks_[j].size(), 0.0);
    }
    BitVector u_hat(n_);
    for (int iter = 0; iter < max_iters_; ++iter) {
        // check -> var
        for (std::size_t i = 0; i < r_; ++i) {
            double sign = syndrome.get(i) ? -1.0 : 1.0;
            std::size_t deg = check_vars_[i].size();
            double prod = sign;
            std::vector<double> tanhs(deg);
            for (std::size_t e = 0; e < deg; ++e) {
                double t = std::tanh(std::clamp(var_to_check[i][e], -30.0, 30.0) / 2.0);
                tanhs[e] = t;
            }
            // forward/backward partial products leave out one edge at a time
            std::vector<double> fwd(deg + 1), bwd(deg + 1);
            fwd[0] = 1.0;
            bwd[deg] = 1.0;
            for (std::size_t e = 0; e < deg; ++e) {
                fwd[e + 1] = fwd[e] * tanhs[e];
                bwd[deg - 1 - e] = bwd[deg - e] * tanhs[deg - 1 - e];
            }
            for (std::size_t e = 0; e < deg; ++e) {
                double t = std::clamp(prod * fwd[e] * bwd[e + 1], -0.999999999999,
                                      0.999999999999);
                double msg = 2.0 * std::atanh(t);
                check_to_var[i][e] = msg;
                incoming[check_vars_[i][e]][var_slot[i][e]] = msg;
            }
        }
        // var -> check, posteriors, hard decision
        for (std::size_t j = 0; j < n_; ++j) {
            double total = prior_llr_;
            for (double msg : incoming[j]) {
                total += msg;
            }
            u_hat.set(j, total < 0.0);
        }
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t e = 0; e < check_vars_[i].size(); ++e) {
                std::size_t j = check_vars_[i][e];
                double total = prior_llr_;
                for (double msg : incoming[j]) {
                    total += msg;
                }
                var_to_check[i][e] = total - check_to_var[i][e];
            }
        }
        // early stop on syndrome match
        bool match = true;
        for (std::size_t i = 0; i < r_ && match; ++i) {
            bool parity = false;
            for (std::size_t j : check_vars_[i]) {
                parity ^= u_hat.get(j);
            }
            match = (parity == syndrome.get(i));
        }
        if (match) {
            return DecodeResult{std::move(u_hat), true};
        }
    }
    return DecodeResult{std::move(u_hat), false};
}

DecodeResult bp_decode(const LinearCode& code, double flip_prob, const BitVector& syndrome,
                       int max_iters) {
    return BpDecoder(code, flip_prob, max_iters).decode(syndrome);
}

double wilson_half_width(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) {
        return 0.0;
    }
    constexpr double z = 1.959963984540054;  // 95%
    double nt = static_cast<double>(trials);
    double p_hat = static_cast<double>(successes) / nt;
    double z2 = z * z;
    return z * std::sqrt(p_hat * (1.0 - p_hat) / nt + z2 / (4.0 * nt * nt)) / (1.0 + z2 / nt);
}

BitflipStats epsilon_exact(const LinearCode& code, const SyndromeDecoder& decoder,
                           double flip_prob, bool include_detected) {
    std::size_t n = code.n(), r = code.parity().rows();
    require(n <= 20, ErrorCode::TooLarge, "epsilon_exact: needs n <= 20");
    require(flip_prob >= 0.0 && flip_prob <= 1.0, ErrorCode::InvalidArgument,
            "epsilon_exact: flip_prob out of [0, 1]");
    std::vector<double> pw(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
        pw[w] = std::pow(flip_prob, static_cast<double>(w)) *
                std::pow(1.0 - flip_prob, static_cast<double>(n - w));
    }
    std::vector<std::uint64_t> cols = column_masks(code.parity());
    std::size_t table_size = std::size_t{1} << r;
    std::vector<double> p_e(table_size, 0.0);
    std::uint64_t pattern = 0, syndrome = 0, prev_gray = 0;
    std::uint64_t count = std::uint64_t{1} << n;
    p_e[0] += pw[0];
    for (std::uint64_t i = 1; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        int flipped = std::countr_zero(gray ^ prev_gray);
        prev_gray = gray;
        pattern ^= std::uint64_t{1} << flipped;
        syndrome ^= cols[static_cast<std::size_t>(flipped)];
        p_e[static_cast<std::size_t>(syndrome)] +=
            pw[static_cast<std::size_t>(std::popcount(pattern))];
    }

    BitflipStats stats;
    stats.method = BitflipStats::Method::Exact;
    stats.include_detected = include_detected;
    stats.flip_prob = flip_prob;
    stats.per_syndrome = std::vector<SyndromeStat>{};
    double eps = 0.0;
    for (std::size_t s = 0; s < table_size; ++s) {
        if (p_e[s] == 0.0) {
            continue;
        }
        BitVector e = BitVector::from_u64(s, r);
        DecodeResult dec = decoder.decode(e);
        double eps_e;
        if (!dec.converged) {
            eps_e = include_detected ? 1.0 : 0.0;
        } else {
            require(code.syndrome(dec.u_hat) == e, ErrorCode::InvalidArgument,
                    "epsilon_exact: decoder violated H u_hat = e");
            eps_e = 1.0 - pw[dec.u_hat.weight()] / p_e[s];
        }
        eps += p_e[s] * eps_e;
        stats.per_syndrome->push_back(SyndromeStat{s, p_e[s], eps_e});
    }
    stats.epsilon = eps;
    return stats;
}

BitflipStats epsilon_monte_carlo(const LinearCode& code, const SyndromeDecoder& decoder,
                                 double flip_prob, std::uint64_t trials, std::uint64_t seed,
                                 int threads, bool include_detected) {
    require(trials >= 1, ErrorCode::InvalidArgument, "epsilon_monte_carlo: trials must be >= 1");
    require(flip_prob >= 0.0 && flip_prob <= 1.0, ErrorCode::InvalidArgument,
            "epsilon_monte_carlo: flip_prob out of [0, 1]");
    require(threads >= 1, ErrorCode::InvalidArgument, "threads must be >= 1");
    std::size_t n = code.n();

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& detected,
                         std::uint64_t& undetected) {
        std::uint64_t det = 0, undet = 0;
        BitVector u(n);
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng = Rng::stream(seed, t);
            for (std::size_t j = 0; j < n; ++j) {
                u.set(j, rng.next_bernoulli(flip_prob));
            }
            DecodeResult dec = decoder.decode(code.syndrome(u));
            if (!dec.converged) {
                ++det;
            } else if (!(dec.u_hat == u)) {
                ++undet;
            }
        }
        detected = det;
        undetected = undet;
    };

    std::uint64_t nthreads = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), trials);
    std::vector<std::uint64_t> det(nthreads, 0), undet(nthreads, 0);
    if (nthreads == 1) {
        run_range(0, trials, det[0], undet[0]);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (trials + nthreads - 1) / nthreads;
        for (std::uint64_t t = 0; t < nthreads; ++t) {
            std::uint64_t begin = t * chunk;
            std::uint64_t end = std::min(trials, begin + chunk);
            pool.emplace_back(run_range, begin, end, std::ref(det[t]), std::ref(undet[t]));
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    BitflipStats stats;
    stats.method = BitflipStats::Method::MonteCarlo;
    stats.include_detected = include_detected;
    stats.flip_prob = flip_prob;
    stats.trials = trials;
    stats.seed = seed;
    for (std::uint64_t t = 0; t < nthreads; ++t) {
        stats.detected += det[t];
        stats.undetected += undet[t];
    }
    std::uint64_t failures = stats.undetected + (include_detected ? stats.detected : 0);
    stats.epsilon = static_cast<double>(failures) / static_cast<double>(trials);
    stats.ci = wilson_half_width(failures, trials);
    return stats;
}

BitMatrix load_alist(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<long long> tok;
    long long v;
    while (in >> v) {
        tok.push_back(v);
    }
    require(tok.size() >= 4, ErrorCode::ParseError, "alist: truncated header");
    long long n = tok[0], m = tok[1], maxcw = tok[2], maxrw = tok[3];
    require(n > 0 && m > 0 && maxcw > 0 && maxrw > 0, ErrorCode::ParseError,
            "alist: nonpositive header fields");
    std::size_t pos = 4;
    require(tok.size() >= pos + static_cast<std::size_t>(n + m), ErrorCode::ParseError,
            "alist: missing weight lists");
    std::vector<long long> col_w(tok.begin() + static_cast<std::ptrdiff_t>(pos),
                                 tok.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += static_cast<std::size_t>(n);
    std::vector<long long> row_w(tok.begin() + static_cast<std::ptrdiff_t>(pos),
                                 tok.begin() + static_cast<std::ptrdiff_t>(pos + m));
    pos += static_cast<std::size_t>(m);
    long long sum_cw = 0, sum_rw = 0;
    for (long long w : col_w) {
        require(w >= 0 && w <= maxcw, ErrorCode::ParseError, "alist: column weight out of range");
        sum_cw += w;
    }
    for (long long w : row_w) {
        require(w >= 0 && w <= maxrw, ErrorCode::ParseError, "alist: row weight out of range");
        sum_rw += w;
    }
    require(sum_cw == sum_rw, ErrorCode::ParseError, "alist: weight lists disagree");

    std::size_t remaining = tok.size() - pos;
    bool padded;
    if (remaining == static_cast<std::size_t>(n * maxcw + m * maxrw)) {
        padded = true;
    } else if (remaining == static_cast<std::size_t>(sum_cw + sum_rw)) {
        padded = false;
    } else {
        fail(ErrorCode::ParseError, "alist: index list length matches neither padded nor "
                                    "unpadded layout");
    }

    BitMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    for (long long c = 0; c < n; ++c) {
        long long take = padded ? maxcw : col_w[static_cast<std::size_t>(c)];
        long long got = 0;
        for (long long t = 0; t < take; ++t) {
            long long idx = tok[pos++];
            if (idx == 0) {
                require(padded, ErrorCode::ParseError, "alist: zero index in unpadded list");
                continue;
            }
            require(idx >= 1 && idx <= m, ErrorCode::ParseError, "alist: row index out of range");
            h.set(static_cast<std::size_t>(idx - 1), static_cast<std::size_t>(c), true);
            ++got;
        }
        require(got == col_w[static_cast<std::size_t>(c)], ErrorCode::ParseError,
                "alist: column list disagrees with declared weight");
    }
    for (long long r = 0; r < m; ++r) {
        long long take = padded ? maxrw : row_w[static_cast<std::size_t>(r)];
        long long got = 0;
        for (long long t = 0; t < take; ++t) {
            long long idx = tok[pos++];
            if (idx == 0) {
                require(padded, ErrorCode::ParseError, "alist: zero index in unpadded list");
                continue;
            }
            require(idx >= 1 && idx <= n, ErrorCode::ParseError,
                    "alist: column index out of range");
            require(h.get(static_cast<std::size_t>(r), static_cast<std::size_t>(idx - 1)),
                    ErrorCode::ParseError, "alist: row list disagrees with column list");
            ++got;
        }
        require(got == row_w[static_cast<std::size_t>(r)], ErrorCode::ParseError,
                "alist: row list disagrees with declared weight");
    }
    return h;
}

std::string save_alist(const BitMatrix& h) {
    std::size_t m = h.rows(), n = h.cols();
    std::vector<std::size_t> col_w(n, 0), row_w(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (h.get(r, c)) {
                ++col_w[c];
                ++row_w[r];
            }
        }
    }
    std::size_t maxcw = col_w.empty() ? 0 : *std::max_element(col_w.begin(), col_w.end());
    std::size_t maxrw = row_w.empty() ? 0 : *std::max_element(row_w.begin(), row_w.end());
    std::ostringstream out;
    out << n << ' ' << m << '\n' << maxcw << ' ' << maxrw << '\n';
    for (std::size_t c = 0; c < n; ++c) {
        out << col_w[c] << (c + 1 == n ? '\n' : ' ');
    }
    for (std::size_t r = 0; r < m; ++r) {
        out << row_w[r] << (r + 1 == m ? '\n' : ' ');
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t written = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (h.get(r, c)) {
                out << (written++ ? " " : "") << (r + 1);
            }
        }
        for (; written < maxcw; ++written) {
            out << (written ? " " : "") << 0;
        }
        out << '\n';
    }
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t written = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (h.get(r, c)) {
                out << (written++ ? " " : "") << (c + 1);
            }
        }
        for (; written < maxrw; ++written) {
            out << (written ? " " : "") << 0;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace pcss
