#ifndef OL_SPACES_HPP
#define OL_SPACES_HPP

#include <span>
#include <vector>

#include "ol/orlicz.hpp"
#include "ol/report.hpp"

namespace ol {

/// Non-increasing positive weights a_1 >= ... >= a_n > 0, validated at
/// construction.
class WeightSequence {
public:
    explicit WeightSequence(std::vector<double> values);

    static WeightSequence constant(std::size_t n, double value = 1.0);
    /// a_i = i^{-alpha}
    static WeightSequence power_decay(std::size_t n, double alpha);
    /// a_i = i^{p/q - 1}, the l_{q,p} Lorentz weights (needs p <= q).
    static WeightSequence lorentz_qp(std::size_t n, double q, double p);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; } // 0-based
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// Non-increasing rearrangement of |x_i|; ties keep original index order.
std::vector<double> rearrange(std::span<const double> x);

double lp_norm(std::span<const double> x, double p);

/// (sum a_i (x*_i)^p)^{1/p}
double lorentz_norm(std::span<const double> x, const WeightSequence& a, double p);

/// The unique rho with sum M(|x_i|/rho) = 1, by bracketing plus bisection to
/// 1e-12 relative tolerance. Returns 0 for x = 0. Accepts degenerate
/// (conjugate-type) functions; the defining sum still has a unique crossing.
double luxemburg_norm(const OrliczFunction& M, std::span<const double> x);

/// Luxemburg norm of (a_i x*_i).
double orlicz_lorentz_norm(const OrliczFunction& M, const WeightSequence& a,
                           std::span<const double> x);

enum class HardyKind {
    HeadMean,      // H1: running p-th power mean of the head
    TailQuadratic, // H2: quadratic mean of the tail, 0 at k = n
};

std::vector<double> hardy_operator(std::span<const double> x, double p, HardyKind which);

/// Max over the sample of ||H x||_{M,a} / ||x||_{M,a}; a lower bound on the
/// Hardy inequality constant.
VerificationReport empirical_hardy_constant(const OrliczFunction& M, const WeightSequence& a,
                                            double p, HardyKind which,
                                            const std::vector<std::vector<double>>& sample);

enum class WeightDecay {
    Slow, // decay not too slow: tail sums of a_i/i^{1/p} against a_k k^{1-1/p}
    Fast, // decay not too fast: head sums of a_i^r/i^{p/2} against a_k^r k^{1-p/2}
};

VerificationReport weight_condition(const WeightSequence& a, double p, double r,
                                    WeightDecay variant);

} // namespace ol

#endif
