#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "pcss/error.hpp"
#include "pcss/linear_code.hpp"
#include "pcss/rng.hpp"

using namespace pcss;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(PCSS_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LinearCode repetition3() {
    // H = [[1,1,0],[1,0,1]], G = (1,1,1)^T
    return LinearCode::from_parity(BitMatrix::from_rows({"110", "101"}));
}

// independent reference BP: plain sum-product with per-edge maps, no shared
// code with the library implementation
struct RefBp {
    const BitMatrix& h;
    double q;
    int max_iters;

    DecodeResult decode(const BitVector& syndrome) const {
        std::size_t m = h.rows(), n = h.cols();
        double prior = std::log((1.0 - q) / q);
        std::vector<std::vector<std::size_t>> cv(m), vc(n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (h.get(i, j)) {
                    cv[i].push_back(j);
                    vc[j].push_back(i);
                }
            }
        }
        std::vector<std::vector<double>> lam(m), mu(m);
        for (std::size_t i = 0; i < m; ++i) {
            lam[i].assign(cv[i].size(), prior);
            mu[i].assign(cv[i].size(), 0.0);
        }
        BitVector u(n);
        for (int iter = 0; iter < max_iters; ++iter) {
            for (std::size_t i = 0; i < m; ++i) {
                double sign = syndrome.get(i) ? -1.0 : 1.0;
                for (std::size_t e = 0; e < cv[i].size(); ++e) {
                    double prod = sign;
                    for (std::size_t e2 = 0; e2 < cv[i].size(); ++e2) {
                        if (e2 != e) {
                            prod *= std::tanh(std::clamp(lam[i][e2], -30.0, 30.0) / 2.0);
                        }
                    }
                    prod = std::clamp(prod, -0.999999999999, 0.999999999999);
                    mu[i][e] = 2.0 * std::atanh(prod);
                }
            }
            std::vector<double> total(n, prior);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t e = 0; e < cv[i].size(); ++e) {
                    total[cv[i][e]] += mu[i][e];
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                u.set(j, total[j] < 0.0);
            }
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t e = 0; e < cv[i].size(); ++e) {
                    lam[i][e] = total[cv[i][e]] - mu[i][e];
                }
            }
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                bool parity = false;
                for (std::size_t j : cv[i]) {
                    parity ^= u.get(j);
                }
                ok = parity == syndrome.get(i);
            }
            if (ok) {
                return {u, true};
            }
        }
        return {u, false};
    }
};

}  // namespace

TEST_CASE("from_generator / from_parity: Hamming pair, identity, random contract") {
    SUBCASE("paper pair validates and derived duals match row spaces") {
        LinearCode code = LinearCode::hamming7();
        CHECK(code.n() == 7);
        CHECK(code.k() == 4);
        CHECK(matmul(code.parity(), code.generator()).is_zero());

        // from_generator recovers an H with the same row space
        LinearCode derived = LinearCode::from_generator(code.generator());
        Gf2Echelon rows_a(7), rows_b(7);
        rows_a.insert_rows(code.parity());
        rows_b.insert_rows(derived.parity());
        CHECK(rows_a.rank() == rows_b.rank());
        for (std::size_t r = 0; r < code.parity().rows(); ++r) {
            CHECK(rows_b.contains(code.parity().row(r)));
        }
    }
    SUBCASE("identity generator has an empty parity check") {
        LinearCode code = LinearCode::from_generator(BitMatrix::identity(5));
        CHECK(code.n() == 5);
        CHECK(code.k() == 5);
        CHECK(code.parity().rows() == 0);
    }
    SUBCASE("random full-rank generators satisfy H G = 0") {
        Rng rng(8);
        int built = 0;
        while (built < 50) {
            std::size_t n = 2 + rng.next_below(10);
            std::size_t k = 1 + rng.next_below(n);
            BitMatrix g(n, k);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    g.set(r, c, rng.next_u64() & 1);
                }
            }
            if (rank(g) != k) {
                continue;
            }
            LinearCode code = LinearCode::from_generator(g);
            CHECK(matmul(code.parity(), code.generator()).is_zero());
            CHECK(rank(code.parity()) == n - k);
            ++built;
        }
    }
    SUBCASE("rank-deficient input is rejected") {
        BitMatrix g(4, 2);
        g.set(0, 0, true);
        g.set(0, 1, true);  // second column equals the first
        CHECK_THROWS_AS(LinearCode::from_generator(g), Error);
    }
}

TEST_CASE("syndrome: zero, codewords, first unit vector") {
    LinearCode code = LinearCode::hamming7();
    CHECK(code.syndrome(BitVector(7)).is_zero());
    for (std::uint64_t y = 0; y < 16; ++y) {
        CHECK(code.syndrome(code.encode(BitVector::from_u64(y, 4))).is_zero());
    }
    BitVector e1 = BitVector::from_string("1000000");
    CHECK(code.syndrome(e1) == code.parity().col(0));
    CHECK_THROWS_AS(code.syndrome(BitVector(6)), Error);
}

TEST_CASE("coset leaders: Hamming weight-1 everywhere, repetition tie-break") {
    SUBCASE("perfect [7,4] code: every nonzero syndrome has a unique weight-1 leader") {
        LinearCode code = LinearCode::hamming7();
        CosetLeaderTable table = CosetLeaderTable::build(code);
        CHECK(table.leader(BitVector(3)).is_zero());
        for (std::uint64_t s = 1; s < 8; ++s) {
            BitVector e = BitVector::from_u64(s, 3);
            BitVector leader = table.leader(e);
            CHECK(leader.weight() == 1);
            CHECK(code.syndrome(leader) == e);
        }
    }
    SUBCASE("[3,1] repetition: syndrome (1,1) -> 100") {
        LinearCode code = repetition3();
        CosetLeaderTable table = CosetLeaderTable::build(code);
        // the coset of syndrome (1,1) is {100, 011}: weight decides
        CHECK(table.leader(BitVector::from_string("11")) == BitVector::from_string("100"));
        // enumeration oracle: no element of the coset beats it
        for (std::uint64_t mask = 0; mask < 8; ++mask) {
            BitVector u = BitVector::from_u64(mask, 3);
            if (code.syndrome(u) == BitVector::from_string("11")) {
                CHECK(u.weight() >= 1);
            }
        }
    }
    SUBCASE("H u_hat(e) = e for every syndrome (generic matrix)") {
        Rng rng(31);
        BitMatrix checks(4, 9);
        // build a full-rank random check matrix
        do {
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t c = 0; c < 9; ++c) {
                    checks.set(r, c, rng.next_u64() & 1);
                }
            }
        } while (rank(checks) != 4);
        CosetLeaderTable table = CosetLeaderTable::build(checks);
        for (std::uint64_t s = 0; s < 16; ++s) {
            BitVector e = BitVector::from_u64(s, 4);
            CHECK(matvec(checks, table.leader(e)) == e);
        }
    }
}

TEST_CASE("bp_decode: zero syndrome, Hamming behavior vs leader table") {
    LinearCode code = LinearCode::hamming7();
    SUBCASE("zero syndrome decodes to zero immediately") {
        DecodeResult res = bp_decode(code, 0.05, BitVector(3));
        CHECK(res.converged);
        CHECK(res.u_hat.is_zero());
    }
    SUBCASE("matches the coset leader on the 7 single-column syndromes") {
        // The all-ones syndrome is the known exception: with a flooding
        // schedule the first hard decision already satisfies it with the
        // weight-4 complement pattern, so early stop returns that valid
        // but non-minimal inverse. All other syndromes agree with the table.
        CosetLeaderTable table = CosetLeaderTable::build(code);
        BpDecoder bp(code, 0.05);
        for (std::uint64_t s = 0; s < 8; ++s) {
            BitVector e = BitVector::from_u64(s, 3);
            DecodeResult res = bp.decode(e);
            CHECK(res.converged);
            CHECK(code.syndrome(res.u_hat) == e);
            if (s == 7) {
                CHECK(res.u_hat.weight() == 4);
            } else {
                CHECK(res.u_hat == table.leader(e));
            }
        }
    }
    SUBCASE("agrees with an independent reference implementation") {
        RefBp ref{code.parity(), 0.05, 100};
        BpDecoder bp(code, 0.05);
        for (std::uint64_t s = 0; s < 8; ++s) {
            BitVector e = BitVector::from_u64(s, 3);
            DecodeResult ours = bp.decode(e);
            DecodeResult theirs = ref.decode(e);
            CHECK(ours.converged == theirs.converged);
            CHECK(ours.u_hat == theirs.u_hat);
        }
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(BpDecoder(code, 0.0), Error);
        CHECK_THROWS_AS(BpDecoder(code, 0.5), Error);
    }
}

TEST_CASE("LDPC fixture: block error rate matches the reference decoder within 3 sigma") {
    BitMatrix h = load_alist(read_fixture("ldpc_96_48.alist"));
    REQUIRE(h.rows() == 48);
    REQUIRE(h.cols() == 96);
    LinearCode code = LinearCode::from_parity(h);
    const double p = 0.02;
    const std::uint64_t trials = 100000;

    BpDecoder bp(code, p);
    BitflipStats ours = epsilon_monte_carlo(code, bp, p, trials, 2024, 4);

    // reference: same channel draws (shared stream contract), independent BP
    RefBp ref{h, p, 100};
    std::uint64_t ref_failures = 0;
    BitVector u(96);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(999, t);  // independent draw stream
        for (std::size_t j = 0; j < 96; ++j) {
            u.set(j, rng.next_bernoulli(p));
        }
        DecodeResult dec = ref.decode(code.syndrome(u));
        if (!dec.converged || !(dec.u_hat == u)) {
            ++ref_failures;
        }
    }
    double ref_rate = static_cast<double>(ref_failures) / static_cast<double>(trials);
    double pooled = (ours.epsilon + ref_rate) / 2.0;
    double sigma = std::sqrt(std::max(pooled * (1.0 - pooled) * 2.0 / trials, 1e-12));
    CHECK(std::abs(ours.epsilon - ref_rate) <= 3.0 * sigma);
}

TEST_CASE("epsilon_exact: closed forms") {
    SUBCASE("flip_prob = 0 gives epsilon = 0") {
        LinearCode code = LinearCode::hamming7();
        CosetLeaderTable table = CosetLeaderTable::build(code);
        CHECK(epsilon_exact(code, table, 0.0).epsilon == 0.0);
    }
    SUBCASE("[3,1] repetition: epsilon = 3q^2(1-q) + q^3") {
        LinearCode code = repetition3();
        CosetLeaderTable table = CosetLeaderTable::build(code);
        for (double q : {0.01, 0.05, 0.11, 0.3}) {
            double expect = 3.0 * q * q * (1.0 - q) + q * q * q;
            CHECK(epsilon_exact(code, table, q).epsilon == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("[7,4] Hamming: epsilon = 1 - (1-q)^7 - 7q(1-q)^6") {
        LinearCode code = LinearCode::hamming7();
        CosetLeaderTable table = CosetLeaderTable::build(code);
        for (double q : {0.01, 0.076, 0.2}) {
            double expect =
                1.0 - std::pow(1.0 - q, 7) - 7.0 * q * std::pow(1.0 - q, 6);
            CHECK(epsilon_exact(code, table, q).epsilon == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("per-syndrome masses sum to one") {
        LinearCode code = LinearCode::hamming7();
        CosetLeaderTable table = CosetLeaderTable::build(code);
        BitflipStats stats = epsilon_exact(code, table, 0.076);
        REQUIRE(stats.per_syndrome.has_value());
        double total = 0.0;
        for (const SyndromeStat& s : *stats.per_syndrome) {
            total += s.p_e;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("epsilon is nondecreasing in q on [0, 1/2] (leader decoder)") {
        for (const LinearCode& code : {repetition3(), LinearCode::hamming7()}) {
            CosetLeaderTable table = CosetLeaderTable::build(code);
            double prev = -1.0;
            for (double q : {0.0, 0.1, 0.2, 0.35, 0.5}) {
                double eps = epsilon_exact(code, table, q).epsilon;
                CHECK(eps >= prev - 1e-12);
                prev = eps;
            }
        }
    }
}

TEST_CASE("epsilon_monte_carlo: trivial channel, 3-sigma agreement, determinism") {
    LinearCode code = LinearCode::hamming7();
    CosetLeaderTable table = CosetLeaderTable::build(code);
    SUBCASE("flip_prob = 0 estimates zero") {
        BitflipStats stats = epsilon_monte_carlo(code, table, 0.0, 1000, 5);
        CHECK(stats.epsilon == 0.0);
    }
    SUBCASE("agrees with epsilon_exact within 3 sigma at q = 0.076") {
        const std::uint64_t trials = 1000000;
        BitflipStats mc = epsilon_monte_carlo(code, table, 0.076, trials, 12345, 4);
        double exact = epsilon_exact(code, table, 0.076).epsilon;
        double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
        CHECK(std::abs(mc.epsilon - exact) <= 3.0 * sigma);
        CHECK(mc.detected == 0);  // leader table always converges
    }
    SUBCASE("same agreement on the repetition fixture") {
        LinearCode rep = repetition3();
        CosetLeaderTable rep_table = CosetLeaderTable::build(rep);
        const std::uint64_t trials = 400000;
        BitflipStats mc = epsilon_monte_carlo(rep, rep_table, 0.11, trials, 99, 2);
        double exact = epsilon_exact(rep, rep_table, 0.11).epsilon;
        double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
        CHECK(std::abs(mc.epsilon - exact) <= 3.0 * sigma);
    }
    SUBCASE("identical result for 1, 2, and 8 worker threads") {
        BitflipStats one = epsilon_monte_carlo(code, table, 0.076, 50000, 777, 1);
        BitflipStats two = epsilon_monte_carlo(code, table, 0.076, 50000, 777, 2);
        BitflipStats eight = epsilon_monte_carlo(code, table, 0.076, 50000, 777, 8);
        CHECK(one.epsilon == two.epsilon);
        CHECK(one.epsilon == eight.epsilon);
        CHECK(one.undetected == eight.undetected);
        CHECK(*one.ci == *eight.ci);
    }
}

TEST_CASE("alist round trip and validation") {
    SUBCASE("round-trips the Hamming parity check") {
        BitMatrix h = LinearCode::hamming7().parity();
        CHECK(load_alist(save_alist(h)) == h);
    }
    SUBCASE("fixture headers are consistent with the parsed matrix") {
        std::string text = read_fixture("ldpc_96_48.alist");
        BitMatrix h = load_alist(text);
        for (std::size_t c = 0; c < h.cols(); ++c) {
            CHECK(h.col(c).weight() == 3);
        }
        for (std::size_t r = 0; r < h.rows(); ++r) {
            CHECK(h.row(r).weight() == 6);
        }
        CHECK(load_alist(save_alist(h)) == h);
    }
    SUBCASE("1-based indexing: a lone index 1 sets entry (0, 0)") {
        BitMatrix h = load_alist("1 1\n1 1\n1\n1\n1\n1\n");
        CHECK(h.get(0, 0));
    }
    SUBCASE("malformed inputs are rejected") {
        CHECK_THROWS_AS(load_alist("2 2"), Error);
        CHECK_THROWS_AS(load_alist("2 2\n1 1\n1 1\n1 1\n3 2\n1 2\n"), Error);  // index range
        CHECK_THROWS_AS(load_alist("1 1\n1 1\n2\n1\n1\n1\n"), Error);  // weight disagrees
    }
}
