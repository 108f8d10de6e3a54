#ifndef OL_COMBINAT_HPP
#define OL_COMBINAT_HPP

#include <span>

#include "ol/averaging.hpp"
#include "ol/orlicz.hpp"
#include "ol/report.hpp"
#include "ol/spaces.hpp"

namespace ol {

/// Orlicz function N with (N*)^{-1}(l/n) prescribed by the weight formula
///   (l/n)^{1/p*} ((1/n) sum_{i<=l} a_i^p)^{1/p}
///     + (l/n)^{1/r*} ((1/n) sum_{i>l} a_i^r)^{1/r},
/// needs 1 <= p < r.
ConcaveInverseBuild ks_orlicz_build(const WeightSequence& a, double p, double r);
OrliczFunction ks_orlicz_from_weights(const WeightSequence& a, double p, double r);

/// ( Ave_pi ( sum_i |x_i a_{pi(i)}|^r )^{p/r} )^{1/p}. The root is applied to
/// the averaged mean; a Monte Carlo standard error is pushed through the root
/// by the first-order delta method and flagged approximate.
Estimate ks_average(std::span<const double> x, const WeightSequence& a, double r, double p,
                    const AveragingPlan& plan);

struct SchuettSides {
    Estimate lhs; // ( Ave_pi ( sum_{i <= floor(n/k)} x_{pi(i)}^2 )^{p/2} )^{1/p}
    double rhs;   // ((1/k) sum_{i<=k} (x*_i)^p)^{1/p} + ((1/k) sum_{i>k} (x*_i)^2)^{1/2}
};

SchuettSides schuett_sides(std::span<const double> x, int k, double p, const AveragingPlan& plan);

/// Exact scans of the partial-sum and tail bounds for z_i = (n/i)^{1/p}:
/// upper head bound with constant 2/(1-1/p), lower head bound with constant
/// 1, and the tail bound with constant (2/p-1)^{-1/2}, for every m <= n.
VerificationReport corollary_bounds_check(int n, double p);

/// Ave over (pi, sigma, eta) in S_n^3 of
///   ( sum_{i,k} |x_i c^k_{pi(i)} d_{sigma(k)} z_{eta(k)}|^2 )^{1/2},
/// where z_i = (n/i)^{1/p} and c^k holds a_k in its first floor(n/k)
/// coordinates. Exact when (n!)^3 n^2 fits the budget.
Estimate theorem31_average(std::span<const double> x, const WeightSequence& d,
                           const WeightSequence& a, double p, const AveragingPlan& plan);

/// The Orlicz function tied to a non-increasing weight vector d in the triple
/// average: the weight-formula construction with exponents (1, p).
OrliczFunction md_from_weights(const WeightSequence& d, double p);

} // namespace ol

#endif
