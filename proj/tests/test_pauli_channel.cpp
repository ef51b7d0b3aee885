#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "pcss/entropy.hpp"
#include "pcss/error.hpp"
#include "pcss/pauli_channel.hpp"

using namespace pcss;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearCode repetition2() {
    return LinearCode::from_parity(BitMatrix::from_rows({"11"}));
}

std::vector<double> product_expand(std::span<const double> single, std::size_t n) {
    std::vector<double> out{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> next;
        next.reserve(out.size() * single.size());
        for (double p : out) {
            for (double q : single) {
                next.push_back(p * q);
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("depolarizing channel") {
    SingleQubitPauli identity = SingleQubitPauli::depolarizing(0.0);
    CHECK(identity.p_i == 1.0);
    CHECK(identity.support_size() == 1);

    SingleQubitPauli ch = SingleQubitPauli::depolarizing(0.114);
    CHECK(ch.bitflip_marginal() == doctest::Approx(0.076).epsilon(1e-12));
    CHECK(ch.p_i + ch.p_x + ch.p_y + ch.p_z == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(SingleQubitPauli::depolarizing(1.5), Error);
    CHECK_THROWS_AS(SingleQubitPauli::from_probs(0.5, 0.5, 0.5, -0.5), Error);
}

TEST_CASE("sample_error: identity channel, fixed stream, frequencies") {
    SUBCASE("identity channel never errs") {
        PauliChannelIID ch{SingleQubitPauli::depolarizing(0.0), 16};
        Rng rng(1);
        for (int t = 0; t < 100; ++t) {
            PauliError err = sample_error(ch, rng);
            CHECK(err.u.is_zero());
            CHECK(err.v.is_zero());
        }
    }
    SUBCASE("fixed stream reproduces the sequence") {
        PauliChannelIID ch{SingleQubitPauli::depolarizing(0.3), 20};
        Rng a = Rng::stream(42, 7), b = Rng::stream(42, 7);
        for (int t = 0; t < 20; ++t) {
            PauliError ea = sample_error(ch, a), eb = sample_error(ch, b);
            CHECK(ea.u == eb.u);
            CHECK(ea.v == eb.v);
        }
    }
    SUBCASE("empirical frequencies: 4 sigma bands and chi-squared at 1e-3") {
        SingleQubitPauli single = SingleQubitPauli::from_probs(0.55, 0.2, 0.1, 0.15);
        PauliChannelIID ch{single, 1};
        const std::uint64_t draws = 1000000;
        std::array<std::uint64_t, 4> counts{};  // I, X, Y, Z
        Rng rng = Rng::stream(7, 0);
        for (std::uint64_t t = 0; t < draws; ++t) {
            PauliError err = sample_error(ch, rng);
            bool u = err.u.get(0), v = err.v.get(0);
            ++counts[u ? (v ? 2 : 1) : (v ? 3 : 0)];
        }
        const std::array<double, 4> expect{0.55, 0.2, 0.1, 0.15};
        double chi2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            double mean = expect[i] * static_cast<double>(draws);
            double sigma = std::sqrt(mean * (1.0 - expect[i]));
            CHECK(std::abs(static_cast<double>(counts[i]) - mean) <= 4.0 * sigma);
            chi2 += (counts[i] - mean) * (counts[i] - mean) / mean;
        }
        CHECK(chi2 < 16.27);  // df = 3 at significance 1e-3
    }
}

TEST_CASE("mutual informations and hashing bound") {
    SUBCASE("identity channel") {
        SingleQubitPauli id = SingleQubitPauli::depolarizing(0.0);
        CHECK(mutual_info_XB(id) == doctest::Approx(1.0));
        CHECK(mutual_info_XE(id) == doctest::Approx(0.0));
        CHECK(hashing_bound(id) == doctest::Approx(1.0));
    }
    SUBCASE("depolarizing 0.114 reproduces the published constants") {
        SingleQubitPauli ch = SingleQubitPauli::depolarizing(0.114);
        CHECK(std::abs(hashing_bound(ch) - 0.3074) <= 1e-4);
        CHECK(std::abs(mutual_info_XE(ch) - 0.3046) <= 1e-4);
    }
    SUBCASE("fully dephasing channel (equal I/Z mixture)") {
        SingleQubitPauli ch = SingleQubitPauli::from_probs(0.5, 0.0, 0.0, 0.5);
        CHECK(mutual_info_XB(ch) == doctest::Approx(1.0));
        CHECK(hashing_bound(ch) == doctest::Approx(0.0));
        CHECK(mutual_info_XE(ch) == doctest::Approx(1.0));
    }
    SUBCASE("identity C = I(X;B) - I(X;E) over random channels") {
        Rng rng(5);
        for (int it = 0; it < 1000; ++it) {
            double a = rng.next_double(), b = rng.next_double(), c = rng.next_double(),
                   d = rng.next_double();
            double s = a + b + c + d;
            SingleQubitPauli ch = SingleQubitPauli::from_probs(a / s, b / s, c / s, d / s);
            CHECK(hashing_bound(ch) ==
                  doctest::Approx(mutual_info_XB(ch) - mutual_info_XE(ch)).epsilon(1e-9));
        }
    }
}

TEST_CASE("closed-form h2_XE and h0_E") {
    SUBCASE("identity channel: h2 = n, h0 = 0") {
        PauliChannelIID ch{SingleQubitPauli::depolarizing(0.0), 5};
        CHECK(h2_XE(ch) == doctest::Approx(5.0));
        CHECK(h0_E(ch) == doctest::Approx(0.0));
    }
    SUBCASE("depolarizing p > 0: h0 = 2n") {
        PauliChannelIID ch{SingleQubitPauli::depolarizing(0.1), 7};
        CHECK(h0_E(ch) == doctest::Approx(14.0));
    }
    SUBCASE("h2 per qubit lies in [0, 1] band around 1") {
        for (double p : {0.0, 0.05, 0.3, 0.75}) {
            PauliChannelIID ch{SingleQubitPauli::depolarizing(p), 3};
            CHECK(h2_XE(ch) >= 3.0 - 1e-12);  // collision prob <= 1
            CHECK(h2_XE(ch) <= 6.0);
        }
    }
}

TEST_CASE("density-matrix oracle confirms the closed forms and identities") {
    std::vector<SingleQubitPauli> channels = {
        SingleQubitPauli::depolarizing(0.0),
        SingleQubitPauli::depolarizing(0.1),
        SingleQubitPauli::from_probs(0.7, 0.1, 0.15, 0.05),
        SingleQubitPauli::from_probs(0.0, 0.0, 0.0, 1.0),
        SingleQubitPauli::from_probs(0.5, 0.5, 0.0, 0.0),
    };
    SUBCASE("n = 2, k = 1 repetition: H2(XE) - H2(YE) = n - k and rank inequality") {
        for (const SingleQubitPauli& single : channels) {
            PauliChannelIID ch{single, 2};
            DensityOracleResult oracle = density_matrix_oracle(ch, repetition2());
            CHECK(oracle.h2_XE_omega - oracle.h2_YE_sigma == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(oracle.h0_E_omega >= oracle.h0_E_sigma - 1e-9);
            // closed forms match the oracle
            CHECK(h2_XE(ch) == doctest::Approx(oracle.h2_XE_omega).epsilon(1e-9));
            CHECK(h0_E(ch) == doctest::Approx(oracle.h0_E_omega).epsilon(1e-9));
        }
    }
    SUBCASE("n = 1 and n = 2 full codes (k = n)") {
        for (const SingleQubitPauli& single : channels) {
            for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
                PauliChannelIID ch{single, n};
                LinearCode full = LinearCode::from_generator(BitMatrix::identity(n));
                DensityOracleResult oracle = density_matrix_oracle(ch, full);
                CHECK(oracle.h2_XE_omega ==
                      doctest::Approx(oracle.h2_YE_sigma).epsilon(1e-9));
                CHECK(h2_XE(ch) == doctest::Approx(oracle.h2_XE_omega).epsilon(1e-9));
                CHECK(h0_E(ch) == doctest::Approx(oracle.h0_E_omega).epsilon(1e-9));
            }
        }
    }
    SUBCASE("identity channel: H2(XE) = n exactly") {
        PauliChannelIID ch{SingleQubitPauli::depolarizing(0.0), 2};
        DensityOracleResult oracle = density_matrix_oracle(ch, repetition2());
        CHECK(oracle.h2_XE_omega == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("size guard") {
        PauliChannelIID ch{SingleQubitPauli::depolarizing(0.1), 4};
        CHECK_THROWS_AS(density_matrix_oracle(ch, LinearCode::from_generator(
                                                      BitMatrix::identity(4))),
                        Error);
    }
}

TEST_CASE("renyi_entropy") {
    SUBCASE("uniform over 2^t gives t for every alpha") {
        for (int t : {0, 1, 3}) {
            std::vector<double> uniform(std::size_t{1} << t,
                                        1.0 / static_cast<double>(std::size_t{1} << t));
            for (double alpha : {0.0, 0.5, 1.0, 2.0, kInf}) {
                CHECK(renyi_entropy(uniform, alpha) ==
                      doctest::Approx(static_cast<double>(t)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("support excludes zeros at alpha = 0") {
        std::vector<double> dist{0.5, 0.5, 0.0};
        CHECK(renyi_entropy(dist, 0.0) == doctest::Approx(1.0));
    }
    SUBCASE("nonincreasing in alpha") {
        Rng rng(17);
        for (int it = 0; it < 100; ++it) {
            std::size_t size = 2 + rng.next_below(10);
            std::vector<double> dist(size);
            double sum = 0.0;
            for (double& p : dist) {
                p = rng.next_double() + 1e-6;
                sum += p;
            }
            for (double& p : dist) {
                p /= sum;
            }
            double prev = kInf;
            for (double alpha : {0.0, 0.5, 1.0, 2.0, kInf}) {
                double h = renyi_entropy(dist, alpha);
                CHECK(h <= prev + 1e-9);
                prev = h;
            }
        }
    }
    SUBCASE("invalid distributions are rejected") {
        std::vector<double> bad{0.5, 0.4};
        CHECK_THROWS_AS(renyi_entropy(bad, 1.0), Error);
    }
}

TEST_CASE("smooth_renyi") {
    SUBCASE("eps = 0 is the plain Renyi entropy") {
        std::vector<double> dist{0.6, 0.3, 0.1};
        CHECK(smooth_renyi(dist, 0.0, 0.0) == renyi_entropy(dist, 0.0));
        CHECK(smooth_renyi(dist, kInf, 0.0) == renyi_entropy(dist, kInf));
    }
    SUBCASE("H0 smoothing drops both light atoms of (0.9, 0.05, 0.05) at eps = 0.2") {
        std::vector<double> dist{0.9, 0.05, 0.05};
        CHECK(smooth_renyi(dist, 0.0, 0.2) == doctest::Approx(0.0));
    }
    SUBCASE("H0 smoothing matches exhaustive subset search") {
        Rng rng(23);
        for (int it = 0; it < 60; ++it) {
            std::size_t size = 2 + rng.next_below(11);  // up to 12 atoms
            std::vector<double> dist(size);
            double sum = 0.0;
            for (double& p : dist) {
                p = rng.next_double() + 1e-9;
                sum += p;
            }
            for (double& p : dist) {
                p /= sum;
            }
            double eps = rng.next_double() * 0.8;
            // oracle: try every subset of removable atoms
            std::size_t best_kept = size;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
                double removed = 0.0;
                std::size_t kept = 0;
                for (std::size_t i = 0; i < size; ++i) {
                    if ((mask >> i) & 1) {
                        removed += dist[i];
                    } else {
                        ++kept;
                    }
                }
                if (kept >= 1 && removed <= eps / 2.0 + 1e-12) {
                    best_kept = std::min(best_kept, kept);
                }
            }
            CHECK(smooth_renyi(dist, 0.0, eps) ==
                  doctest::Approx(std::log2(static_cast<double>(best_kept))).epsilon(1e-9));
        }
    }
    SUBCASE("Hinf waterfill on a hand-checked case") {
        // (0.5, 0.3, 0.2), eps = 0.2: shave 0.1 off the top atom -> level 0.4
        std::vector<double> dist{0.5, 0.3, 0.2};
        CHECK(smooth_renyi(dist, kInf, 0.2) == doctest::Approx(-std::log2(0.4)).epsilon(1e-12));
        // uniform floor: a two-atom state cannot get below max = 1/2
        std::vector<double> two{0.6, 0.4};
        CHECK(smooth_renyi(two, kInf, 1.9) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("Hinf nondecreasing in eps") {
        std::vector<double> dist{0.45, 0.25, 0.2, 0.1};
        double prev = -1.0;
        for (double eps : {0.0, 0.05, 0.1, 0.3, 0.6}) {
            double h = smooth_renyi(dist, kInf, eps);
            CHECK(h >= prev - 1e-12);
            prev = h;
        }
    }
    SUBCASE("only alpha in {0, inf} is supported") {
        std::vector<double> dist{0.5, 0.5};
        CHECK_THROWS_AS(smooth_renyi(dist, 2.0, 0.1), Error);
    }
}

TEST_CASE("smooth_renyi_iid") {
    SUBCASE("n = 1 matches the direct computation") {
        std::vector<double> dist{0.55, 0.25, 0.2};
        for (double alpha : {0.0, kInf}) {
            for (double eps : {0.0, 0.05, 0.3}) {
                CHECK(smooth_renyi_iid(dist, 1, alpha, eps) ==
                      doctest::Approx(smooth_renyi(dist, alpha, eps)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("matches the expanded product for Bernoulli(0.3), n = 10") {
        std::vector<double> single{0.7, 0.3};
        std::vector<double> expanded = product_expand(single, 10);
        for (double alpha : {0.0, kInf}) {
            for (double eps : {0.0, 0.01, 0.1, 0.5}) {
                CHECK(smooth_renyi_iid_total(single, 10, alpha, eps) ==
                      doctest::Approx(smooth_renyi(expanded, alpha, eps)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("matches the expanded product for a 4-atom single distribution") {
        std::vector<double> single{0.85, 0.05, 0.05, 0.05};
        std::vector<double> expanded = product_expand(single, 6);
        for (double alpha : {0.0, kInf}) {
            for (double eps : {0.0, 0.02, 0.2}) {
                CHECK(smooth_renyi_iid_total(single, 6, alpha, eps) ==
                      doctest::Approx(smooth_renyi(expanded, alpha, eps)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("Bernoulli(0.11), delta = 0.01, n = 1000: frozen high-precision value") {
        // computed with an exact big-binomial waterfill oracle
        std::vector<double> single{0.89, 0.11};
        double rate = smooth_renyi_iid(single, 1000, kInf, 0.01);
        CHECK(rate == doctest::Approx(0.4266736363505962).epsilon(1e-9));
    }
    SUBCASE("per-symbol Hinf rises toward the Shannon entropy as n grows") {
        std::vector<double> single{0.89, 0.11};
        double shannon = binary_entropy(0.11);
        double prev = 0.0;
        for (std::uint64_t n : {250, 500, 1000, 2000, 4000}) {
            double rate = smooth_renyi_iid(single, n, kInf, 0.01);
            CHECK(rate > prev);
            CHECK(rate < shannon);
            prev = rate;
        }
        CHECK(shannon - prev < 0.04);  // within 0.04 bits at n = 4000
    }
    SUBCASE("H0 per-symbol falls toward the Shannon entropy as n grows") {
        std::vector<double> single{0.89, 0.11};
        double shannon = binary_entropy(0.11);
        double prev = 2.0;
        for (std::uint64_t n : {250, 1000, 4000}) {
            double rate = smooth_renyi_iid(single, n, 0.0, 0.01);
            CHECK(rate < prev);
            CHECK(rate > shannon);
            prev = rate;
        }
    }
}
