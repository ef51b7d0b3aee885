#pragma once

#include <cstdint>
#include <span>

namespace pcss {

/// Renyi entropy of order alpha (bits) of a classical distribution.
/// alpha = 0 counts the support, alpha = 1 is Shannon, alpha = inf is
/// -log2 of the largest atom.
double renyi_entropy(std::span<const double> dist, double alpha);

/// Smooth Renyi entropy over the trace-norm ball {sigma : ||rho - sigma||_1
/// <= eps} of normalized states, for classical rho and alpha in {0, inf}.
/// Moving probability mass delta costs 2 delta in trace norm, so the mass
/// budget is eps / 2:
///   alpha = 0:   drop the smallest atoms whose total mass fits the budget
///                (inf over the ball);
///   alpha = inf: cap the largest atoms at the water level that sheds
///                exactly the budget, floored at 1/dim (sup over the ball).
/// Both are the exact optimizers for diagonal states. Zero entries of
/// `dist` count toward the dimension.
double smooth_renyi(std::span<const double> dist, double alpha, double eps);

/// Smooth Renyi entropy per symbol of the n-fold product of `single`,
/// computed over type classes so the product support is never materialized.
/// Atoms of equal probability are merged, so e.g. a depolarizing channel's
/// three equal outcomes cost one slot. Guarded by the number of type
/// classes, not by n.
double smooth_renyi_iid(std::span<const double> single, std::uint64_t n, double alpha,
                        double eps);

/// Same, but the total over all n symbols.
double smooth_renyi_iid_total(std::span<const double> single, std::uint64_t n, double alpha,
                              double eps);

}  // namespace pcss
