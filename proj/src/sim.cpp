#include "pcss/sim.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <thread>
#include <vector>

#include "pcss/error.hpp"

namespace pcss {

CosetLeaderTable build_phase_decoder(const PcssCode& pcss) {
    return CosetLeaderTable::build(pcss.x_stabs);
}

PauliFrameContext PauliFrameContext::build(const PcssCode& pcss) {
    CosetLeaderTable bit = CosetLeaderTable::build(pcss.z_stabs);
    CosetLeaderTable phase = CosetLeaderTable::build(pcss.x_stabs);
    Gf2Echelon cprime(pcss.n());
    cprime.insert_cols(pcss.cprime_gen);
    Gf2Echelon cperp(pcss.n());
    cperp.insert_rows(pcss.z_stabs);
    return PauliFrameContext(std::move(bit), std::move(phase), std::move(cprime),
                             std::move(cperp));
}

DecodeOutcome decode_pauli(const PcssCode& pcss, const PauliError& err,
                           const PauliFrameContext& ctx) {
    require(err.u.size() == pcss.n() && err.v.size() == pcss.n(), ErrorCode::DimensionMismatch,
            "decode_pauli: error vectors must have n bits");
    DecodeOutcome out;
    out.syndrome_e = matvec(pcss.z_stabs, err.u);
    out.residual_u = err.u ^ ctx.bit_decoder().leader(out.syndrome_e);
    out.logical_x_fail = !ctx.in_cprime(out.residual_u);
    out.syndrome_i = matvec(pcss.x_stabs, err.v);
    out.residual_v = err.v ^ ctx.phase_decoder().leader(out.syndrome_i);
    out.logical_z_fail = !ctx.in_cperp(out.residual_v);
    assert(matvec(pcss.z_stabs, out.residual_u).is_zero());
    assert(matvec(pcss.x_stabs, out.residual_v).is_zero());
    return out;
}

namespace {

struct MaskTables {
    std::size_t n;
    std::vector<bool> x_fail;  // indexed by bit-flip mask u
    std::vector<bool> z_fail;  // indexed by phase-flip mask v
};

// failure flags for every u (and every v), masks up to 2^n
MaskTables build_mask_tables(const PcssCode& pcss, const PauliFrameContext& ctx) {
    std::size_t n = pcss.n();
    MaskTables t{n, {}, {}};
    std::size_t count = std::size_t{1} << n;
    t.x_fail.resize(count);
    t.z_fail.resize(count);
    PauliError err{BitVector(n), BitVector(n)};
    for (std::size_t mask = 0; mask < count; ++mask) {
        BitVector u = BitVector::from_u64(mask, n);
        BitVector e = matvec(pcss.z_stabs, u);
        BitVector ru = u ^ ctx.bit_decoder().leader(e);
        t.x_fail[mask] = !ctx.in_cprime(ru);
        BitVector i = matvec(pcss.x_stabs, u);
        BitVector rv = u ^ ctx.phase_decoder().leader(i);
        t.z_fail[mask] = !ctx.in_cperp(rv);
    }
    return t;
}

}  // namespace

LogicalErrorReport logical_error_exhaustive(const PcssCode& pcss, const PauliChannelIID& ch,
                                            const PauliFrameContext& ctx) {
    std::size_t n = pcss.n();
    require(ch.n == n, ErrorCode::DimensionMismatch,
            "logical_error_exhaustive: channel width must match the code");
    require(n <= 10, ErrorCode::TooLarge, "logical_error_exhaustive: 4^n terms need n <= 10");
    MaskTables tables = build_mask_tables(pcss, ctx);
    std::size_t count = std::size_t{1} << n;

    // per-count power tables; the probability of a pair depends only on the
    // four Pauli multiplicities
    std::vector<double> pi(n + 1), px(n + 1), py(n + 1), pz(n + 1);
    pi[0] = px[0] = py[0] = pz[0] = 1.0;
    for (std::size_t c = 1; c <= n; ++c) {
        pi[c] = pi[c - 1] * ch.single.p_i;
        px[c] = px[c - 1] * ch.single.p_x;
        py[c] = py[c - 1] * ch.single.p_y;
        pz[c] = pz[c - 1] * ch.single.p_z;
    }

    double p_fail = 0.0, p_x = 0.0, p_z = 0.0;
    for (std::size_t u = 0; u < count; ++u) {
        bool xf = tables.x_fail[u];
        for (std::size_t v = 0; v < count; ++v) {
            bool zf = tables.z_fail[v];
            if (!xf && !zf) {
                continue;
            }
            std::size_t cy = static_cast<std::size_t>(std::popcount(u & v));
            std::size_t cx = static_cast<std::size_t>(std::popcount(u & ~v));
            std::size_t cz = static_cast<std::size_t>(std::popcount(v & ~u));
            std::size_t ci = n - cx - cy - cz;
            double p = pi[ci] * px[cx] * py[cy] * pz[cz];
            p_fail += p;
            if (xf) {
                p_x += p;
            }
            if (zf) {
                p_z += p;
            }
        }
    }

    LogicalErrorReport report;
    report.method = LogicalErrorReport::Method::Exhaustive;
    report.p_fail = p_fail;
    report.p_x_fail = p_x;
    report.p_z_fail = p_z;
    report.n = n;
    report.channel = ch.single;
    return report;
}

LogicalErrorReport logical_error_mc(const PcssCode& pcss, const PauliChannelIID& ch,
                                    const PauliFrameContext& ctx, std::uint64_t trials,
                                    std::uint64_t seed, int threads) {
    std::size_t n = pcss.n();
    require(ch.n == n, ErrorCode::DimensionMismatch,
            "logical_error_mc: channel width must match the code");
    require(trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
    require(threads >= 1, ErrorCode::InvalidArgument, "threads must be >= 1");

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& any,
                         std::uint64_t& xs, std::uint64_t& zs) {
        std::uint64_t n_any = 0, n_x = 0, n_z = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng = Rng::stream(seed, t);
            PauliError err = sample_error(ch, rng);
            DecodeOutcome outcome = decode_pauli(pcss, err, ctx);
            n_x += outcome.logical_x_fail;
            n_z += outcome.logical_z_fail;
            n_any += outcome.logical_x_fail || outcome.logical_z_fail;
        }
        any = n_any;
        xs = n_x;
        zs = n_z;
    };

    std::uint64_t nthreads = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), trials);
    std::vector<std::uint64_t> any(nthreads, 0), xs(nthreads, 0), zs(nthreads, 0);
    if (nthreads == 1) {
        run_range(0, trials, any[0], xs[0], zs[0]);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (trials + nthreads - 1) / nthreads;
        for (std::uint64_t t = 0; t < nthreads; ++t) {
            std::uint64_t begin = t * chunk;
            std::uint64_t end = std::min(trials, begin + chunk);
            pool.emplace_back(run_range, begin, end, std::ref(any[t]), std::ref(xs[t]),
                              std::ref(zs[t]));
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::uint64_t total_any = 0, total_x = 0, total_z = 0;
    for (std::uint64_t t = 0; t < nthreads; ++t) {
        total_any += any[t];
        total_x += xs[t];
        total_z += zs[t];
    }

    LogicalErrorReport report;
    report.method = LogicalErrorReport::Method::MonteCarlo;
    report.p_fail = static_cast<double>(total_any) / static_cast<double>(trials);
    report.p_x_fail = static_cast<double>(total_x) / static_cast<double>(trials);
    report.p_z_fail = static_cast<double>(total_z) / static_cast<double>(trials);
    report.ci = wilson_half_width(total_any, trials);
    report.trials = trials;
    report.seed = seed;
    report.n = n;
    report.channel = ch.single;
    return report;
}

EtaVerdict compare_to_eta(const LogicalErrorReport& report, const EtaResult& bound) {
    require(report.n == bound.inputs.n, ErrorCode::InvalidArgument,
            "compare_to_eta: report and bound disagree on n");
    require(report.channel == bound.inputs.channel, ErrorCode::InvalidArgument,
            "compare_to_eta: report and bound disagree on the channel");
    EtaVerdict verdict;
    verdict.lhs = 2.0 * report.p_fail;
    verdict.rhs = bound.eta;
    if (report.method == LogicalErrorReport::Method::MonteCarlo && report.trials > 0) {
        double sigma = std::sqrt(report.p_fail * (1.0 - report.p_fail) /
                                 static_cast<double>(report.trials));
        verdict.slack = 2.0 * 3.0 * sigma;
    }
    verdict.margin = verdict.rhs + verdict.slack - verdict.lhs;
    verdict.holds = verdict.margin >= 0.0;
    return verdict;
}

}  // namespace pcss
