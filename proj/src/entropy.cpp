#include "pcss/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pcss/error.hpp"

namespace pcss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

void validate_dist(std::span<const double> dist) {
    double sum = 0.0;
    for (double p : dist) {
        require(p >= 0.0, ErrorCode::InvalidArgument, "distribution has a negative entry");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::InvalidArgument,
            "distribution must sum to 1 (within 1e-9)");
}

double log2_factorial(double x) {
    return std::lgamma(x + 1.0) / kLn2;
}

// log2(2^a + 2^b)
double log2_add(double a, double b) {
    if (a == -kInf) {
        return b;
    }
    if (b == -kInf) {
        return a;
    }
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

}  // namespace

double renyi_entropy(std::span<const double> dist, double alpha) {
    validate_dist(dist);
    require(alpha >= 0.0, ErrorCode::InvalidArgument, "alpha must be >= 0");
    if (alpha == 0.0) {
        std::size_t support = 0;
        for (double p : dist) {
            if (p > 0.0) {
                ++support;
            }
        }
        return std::log2(static_cast<double>(support));
    }
    if (alpha == 1.0) {
        double acc = 0.0;
        for (double p : dist) {
            if (p > 0.0) {
                acc -= p * std::log2(p);
            }
        }
        return acc;
    }
    if (std::isinf(alpha)) {
        double max_p = 0.0;
        for (double p : dist) {
            max_p = std::max(max_p, p);
        }
        return -std::log2(max_p);
    }
    double sum = 0.0;
    for (double p : dist) {
        if (p > 0.0) {
            sum += std::pow(p, alpha);
        }
    }
    return std::log2(sum) / (1.0 - alpha);
}

double smooth_renyi(std::span<const double> dist, double alpha, double eps) {
    validate_dist(dist);
    require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be >= 0");
    require(alpha == 0.0 || std::isinf(alpha), ErrorCode::InvalidArgument,
            "smooth_renyi supports alpha in {0, inf}");
    if (eps == 0.0) {
        return renyi_entropy(dist, alpha);
    }
    double budget = eps / 2.0;
    std::vector<double> atoms;
    for (double p : dist) {
        if (p > 0.0) {
            atoms.push_back(p);
        }
    }
    if (alpha == 0.0) {
        std::sort(atoms.begin(), atoms.end());
        std::size_t removed = 0;
        double cum = 0.0;
        // never remove the final (largest) atom; rank stays >= 1
        while (removed + 1 < atoms.size() && cum + atoms[removed] <= budget + 1e-12) {
            cum += atoms[removed];
            ++removed;
        }
        return std::log2(static_cast<double>(atoms.size() - removed));
    }
    // alpha = inf: water-cap the largest atoms, shedding exactly the budget
    if (budget >= 1.0) {
        return std::log2(static_cast<double>(dist.size()));  // the whole simplex is in the ball
    }
    std::sort(atoms.begin(), atoms.end(), std::greater<>());
    double lambda = atoms.front();
    double prefix = 0.0;
    for (std::size_t t = 1; t <= atoms.size(); ++t) {
        prefix += atoms[t - 1];
        double next = t < atoms.size() ? atoms[t] : 0.0;
        double shed_at_next = prefix - next * static_cast<double>(t);
        if (shed_at_next >= budget) {
            lambda = (prefix - budget) / static_cast<double>(t);
            break;
        }
        lambda = next;
    }
    // a normalized state on dim atoms cannot have max below 1/dim
    lambda = std::max(lambda, 1.0 / static_cast<double>(dist.size()));
    return -std::log2(lambda);
}

namespace {

struct TypeClass {
    double log2_p;     // log2 of each atom's probability in the class
    double log2_mult;  // log2 of the number of atoms in the class
};

// all type classes of the n-fold product, with atoms of equal single-copy
// probability merged into one slot
std::vector<TypeClass> build_type_classes(std::span<const double> single, std::uint64_t n) {
    std::vector<double> values;
    std::vector<double> mults;
    {
        std::vector<double> pos;
        for (double p : single) {
            if (p > 0.0) {
                pos.push_back(p);
            }
        }
        std::sort(pos.begin(), pos.end(), std::greater<>());
        for (double p : pos) {
            if (!values.empty() && values.back() == p) {
                mults.back() += 1.0;
            } else {
                values.push_back(p);
                mults.push_back(1.0);
            }
        }
    }
    std::size_t r = values.size();
    require(r >= 1, ErrorCode::InvalidArgument, "distribution has empty support");

    double class_count = 1.0;
    for (std::size_t i = 1; i < r; ++i) {
        class_count *= (static_cast<double>(n) + static_cast<double>(i)) /
                       static_cast<double>(i);
    }
    require(class_count <= 4e6, ErrorCode::TooLarge,
            "smooth_renyi_iid: too many type classes; merge atoms or reduce n");

    std::vector<double> log2_v(r), log2_m(r);
    for (std::size_t i = 0; i < r; ++i) {
        log2_v[i] = std::log2(values[i]);
        log2_m[i] = std::log2(mults[i]);
    }

    std::vector<TypeClass> classes;
    classes.reserve(static_cast<std::size_t>(class_count));
    double log2_n_fact = log2_factorial(static_cast<double>(n));
    std::vector<std::uint64_t> counts(r, 0);
    auto emit = [&] {
        TypeClass tc{0.0, log2_n_fact};
        for (std::size_t i = 0; i < r; ++i) {
            double c = static_cast<double>(counts[i]);
            tc.log2_p += c * log2_v[i];
            tc.log2_mult += c * log2_m[i] - log2_factorial(c);
        }
        classes.push_back(tc);
    };
    // recursive walk over all compositions of n into r parts
    auto walk = [&](auto&& self, std::size_t idx, std::uint64_t remaining) -> void {
        if (idx + 1 == r) {
            counts[idx] = remaining;
            emit();
            return;
        }
        for (std::uint64_t c = 0; c <= remaining; ++c) {
            counts[idx] = c;
            self(self, idx + 1, remaining - c);
        }
    };
    walk(walk, 0, n);
    return classes;
}

double smooth_h0_iid(std::vector<TypeClass> classes, double budget) {
    // remove the least likely atoms first
    std::sort(classes.begin(), classes.end(),
              [](const TypeClass& a, const TypeClass& b) { return a.log2_p < b.log2_p; });
    double kept_log2_count = -kInf;
    double cum = 0.0;
    // a zero budget removes nothing; classes whose mass underflows must
    // still be counted, they may hold almost all atoms
    bool still_removing = budget > 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const TypeClass& tc = classes[i];
        bool last_class = (i + 1 == classes.size());
        double mass = std::exp2(tc.log2_p + tc.log2_mult);
        if (still_removing && !last_class && cum + mass <= budget) {
            cum += mass;
            continue;  // whole class removed
        }
        if (still_removing) {
            still_removing = false;
            double left = budget - cum;
            if (left > 0.0) {
                // partially remove this class (whole atoms)
                double log2_removable = std::log2(left) - tc.log2_p;
                if (log2_removable >= tc.log2_mult && !last_class) {
                    continue;  // fits entirely after all (rounding), drop it
                }
                if (log2_removable < 0.0) {
                    // cannot afford even one atom
                } else if (log2_removable <= 52.0) {
                    double removed = std::floor(std::exp2(log2_removable));
                    double mult = std::exp2(tc.log2_mult);
                    double kept = mult - std::min(removed, last_class ? mult - 1.0 : mult);
                    if (kept > 0.0) {
                        kept_log2_count = log2_add(kept_log2_count, std::log2(kept));
                    }
                    continue;
                } else {
                    // counts this large dwarf the 2^-53 rounding of a floor
                    double ratio = std::exp2(log2_removable - tc.log2_mult);
                    if (ratio < 1.0) {
                        kept_log2_count = log2_add(
                            kept_log2_count, tc.log2_mult + std::log2(1.0 - ratio));
                    }
                    continue;
                }
            }
        }
        kept_log2_count = log2_add(kept_log2_count, tc.log2_mult);
    }
    return kept_log2_count == -kInf ? 0.0 : kept_log2_count;
}

double smooth_hinf_iid(std::vector<TypeClass> classes, double budget, double log2_dim_total) {
    if (budget >= 1.0) {
        return log2_dim_total;
    }
    // cap the most likely atoms at the water level shedding `budget`
    std::sort(classes.begin(), classes.end(),
              [](const TypeClass& a, const TypeClass& b) { return a.log2_p > b.log2_p; });
    double log2_n_cum = -kInf;  // atoms above the candidate level
    double s_cum = 0.0;         // their total mass (<= 1, safe in linear domain)
    double log2_lambda = classes.front().log2_p;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const TypeClass& tc = classes[i];
        log2_n_cum = log2_add(log2_n_cum, tc.log2_mult);
        s_cum += std::exp2(tc.log2_p + tc.log2_mult);
        double log2_next = (i + 1 < classes.size()) ? classes[i + 1].log2_p : -kInf;
        double shed_at_next =
            s_cum - (log2_next == -kInf ? 0.0 : std::exp2(log2_next + log2_n_cum));
        if (shed_at_next >= budget) {
            log2_lambda = std::log2(s_cum - budget) - log2_n_cum;
            break;
        }
        log2_lambda = log2_next;
    }
    log2_lambda = std::max(log2_lambda, -log2_dim_total);
    return -log2_lambda;
}

}  // namespace

double smooth_renyi_iid_total(std::span<const double> single, std::uint64_t n, double alpha,
                              double eps) {
    validate_dist(single);
    require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
    require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be >= 0");
    require(alpha == 0.0 || std::isinf(alpha), ErrorCode::InvalidArgument,
            "smooth_renyi_iid supports alpha in {0, inf}");
    double budget = eps / 2.0;
    std::vector<TypeClass> classes = build_type_classes(single, n);
    if (alpha == 0.0) {
        return smooth_h0_iid(std::move(classes), budget);
    }
    double log2_dim_total =
        static_cast<double>(n) * std::log2(static_cast<double>(single.size()));
    return smooth_hinf_iid(std::move(classes), budget, log2_dim_total);
}

double smooth_renyi_iid(std::span<const double> single, std::uint64_t n, double alpha,
                        double eps) {
    return smooth_renyi_iid_total(single, n, alpha, eps) / static_cast<double>(n);
}

}  // namespace pcss
