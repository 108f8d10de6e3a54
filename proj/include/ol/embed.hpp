#ifndef OL_EMBED_HPP
#define OL_EMBED_HPP

#include <span>
#include <string>
#include <vector>

#include "ol/averaging.hpp"
#include "ol/combinat.hpp"
#include "ol/orlicz.hpp"
#include "ol/report.hpp"
#include "ol/spaces.hpp"

namespace ol {

/// d_l = n [ (M*)^{-1}(l/n) - (M*)^{-1}((l-1)/n) ], validated non-increasing
/// within 1e-12 slack and clamped monotone. Throws a range error when the
/// conjugate cannot reach level 1 (bounded-range conjugates).
WeightSequence build_d(const OrliczFunction& M, int n);

/// Builds d from M, forms M_d through the weight formula with exponents
/// (1, p), and checks that (M_d*)^{-1} / (M*)^{-1} stays within
/// `spread_bound` on the grid l/n. Requires M(t)/t^{p-eps} non-increasing.
VerificationReport verify_md_equivalence(const OrliczFunction& M, int n, double p, double eps,
                                         double spread_bound = 16.0);

/// Everything needed to evaluate the map into the normalized L1 space of
/// dimension n!^3 4^n: x -> ( sum_{i,k} x_i c^k_{pi(i)} d_{sigma(k)}
/// z_{eta(k)} eps_i delta_k ) over three permutations and two sign vectors.
struct EmbeddingSpec {
    int n;
    double p;
    OrliczFunction M;
    WeightSequence a;
    WeightSequence d;           // derived from M
    std::vector<double> z;      // z_i = (n/i)^{1/p}
    std::vector<int> c_support; // floor(n/k) for k = 1..n; level is a_k

    static EmbeddingSpec build(int n, double p, const OrliczFunction& M, const WeightSequence& a);
    nlohmann::json to_json() const;
};

/// Normalized L1 norm of the embedded vector: average of
/// |sum_{i,k} x_i c^k_{pi(i)} d_{sigma(k)} z_{eta(k)} eps_i delta_k| over all
/// (pi, sigma, eta, eps, delta). Exact when (n!)^3 4^n n^2 fits the budget.
Estimate psi_l1_norm(const EmbeddingSpec& spec, std::span<const double> x,
                     const AveragingPlan& plan);

/// Materialized coordinates in (pi, sigma, eta, eps, delta) order, the sign
/// indices encoded little-endian (bit i set means coordinate i is negated).
/// Only sensible for n <= 3.
std::vector<double> psi_coordinates(const EmbeddingSpec& spec, std::span<const double> x);

/// Ave_{eps,delta} |sum_{i,k} eps_i delta_k b_{ik}| / (sum b_{ik}^2)^{1/2};
/// never exceeds 1. Exact over the 4^n sign pairs when within budget.
Estimate khintchine_ratio(const std::vector<std::vector<double>>& b, const AveragingPlan& plan);

struct DistortionReport {
    std::vector<std::string> labels;
    std::vector<double> ratios; // ||psi x||_1 / ||x||_{M,a}
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double distortion = 0.0; // max/min, >= 1
    bool exact = true;
    double max_se = 0.0; // largest numerator standard error (MC mode)
    std::uint64_t samples_per_vector = 0;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
};

/// e1, the all-ones vector, three power decays, 20 Gaussian and 10 sparse
/// seeded vectors.
std::vector<std::vector<double>> default_distortion_sample(int n, std::uint64_t seed);

DistortionReport distortion_report(const EmbeddingSpec& spec,
                                   const std::vector<std::vector<double>>& sample,
                                   const AveragingPlan& plan);

} // namespace ol

#endif
