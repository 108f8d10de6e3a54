#include "ol/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ol {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WeightSequence::WeightSequence(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty())
        throw std::invalid_argument("weight sequence must be non-empty");
    double prev = kInf;
    for (double a : values_) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("weights must be positive and finite");
        if (a > prev * (1.0 + 1e-12))
            throw std::invalid_argument("weights must be non-increasing");
        prev = a;
    }
}

WeightSequence WeightSequence::constant(std::size_t n, double value) {
    return WeightSequence(std::vector<double>(n, value));
}

WeightSequence WeightSequence::power_decay(std::size_t n, double alpha) {
    if (alpha < 0.0)
        throw std::invalid_argument("power_decay needs alpha >= 0");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::pow(static_cast<double>(i + 1), -alpha);
    return WeightSequence(std::move(v));
}

WeightSequence WeightSequence::lorentz_qp(std::size_t n, double q, double p) {
    if (!(p >= 1.0) || !(q >= p))
        throw std::invalid_argument("lorentz_qp needs 1 <= p <= q");
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::pow(static_cast<double>(i + 1), p / q - 1.0);
    return WeightSequence(std::move(v));
}

std::vector<double> rearrange(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::abs(x[i]);
    std::stable_sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

double lp_norm(std::span<const double> x, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm needs p >= 1");
    double sum = 0.0;
    for (double xi : x)
        sum += std::pow(std::abs(xi), p);
    return std::pow(sum, 1.0 / p);
}

double lorentz_norm(std::span<const double> x, const WeightSequence& a, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lorentz_norm needs p >= 1");
    if (x.size() != a.size())
        throw std::invalid_argument("vector and weight dimensions differ");
    std::vector<double> xs = rearrange(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        sum += a[i] * std::pow(xs[i], p);
    return std::pow(sum, 1.0 / p);
}

double luxemburg_norm(const OrliczFunction& M, std::span<const double> x) {
    double xmax = 0.0;
    for (double xi : x)
        xmax = std::max(xmax, std::abs(xi));
    if (xmax == 0.0)
        return 0.0;

    double minv1 = M.inverse(1.0);
    if (!std::isfinite(minv1) || minv1 <= 0.0)
        throw std::invalid_argument("Orlicz function cannot reach level 1; norm undefined");

    auto unit_sum = [&](double rho) {
        double s = 0.0;
        for (double xi : x) {
            s += M(std::abs(xi) / rho);
            if (s == kInf)
                return kInf;
        }
        return s;
    };

    // bracket the crossing of sum = 1; the heuristic start is exact for a
    // single non-zero coordinate
    double lo = xmax / minv1;
    double hi = lo;
    int guard = 0;
    while (unit_sum(hi) > 1.0) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("luxemburg_norm: failed to bracket from above");
    }
    guard = 0;
    while (lo > 0.0 && unit_sum(lo) < 1.0) {
        lo *= 0.5;
        if (++guard > 200) {
            lo = 0.0;
            break;
        }
    }

    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (unit_sum(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    if (hi - lo > 1e-9 * hi) {
        std::ostringstream os;
        os << "luxemburg_norm: bisection failed to converge (bracket [" << lo << ", " << hi << "])";
        throw std::runtime_error(os.str());
    }
    return hi;
}

double orlicz_lorentz_norm(const OrliczFunction& M, const WeightSequence& a,
                           std::span<const double> x) {
    if (x.size() != a.size())
        throw std::invalid_argument("vector and weight dimensions differ");
    std::vector<double> xs = rearrange(x);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] *= a[i];
    return luxemburg_norm(M, xs);
}

std::vector<double> hardy_operator(std::span<const double> x, double p, HardyKind which) {
    std::size_t n = x.size();
    if (n == 0)
        throw std::invalid_argument("hardy_operator needs a non-empty vector");
    if (which == HardyKind::HeadMean && !(p > 1.0 && p < 2.0))
        throw std::invalid_argument("head-mean Hardy operator needs p in (1, 2)");
    std::vector<double> xs = rearrange(x);
    std::vector<double> out(n);
    if (which == HardyKind::HeadMean) {
        double run = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            run += std::pow(xs[k], p);
            out[k] = std::pow(run / static_cast<double>(k + 1), 1.0 / p);
        }
    } else {
        double tail = 0.0;
        out[n - 1] = 0.0;
        for (std::size_t k = n - 1; k-- > 0;) {
            tail += xs[k + 1] * xs[k + 1];
            out[k] = std::sqrt(tail / static_cast<double>(k + 1));
        }
    }
    return out;
}

VerificationReport empirical_hardy_constant(const OrliczFunction& M, const WeightSequence& a,
                                            double p, HardyKind which,
                                            const std::vector<std::vector<double>>& sample) {
    if (sample.empty())
        throw std::invalid_argument("empirical_hardy_constant needs a non-empty sample");

    VerificationReport report;
    report.command = "empirical_hardy_constant";
    report.params["orlicz"] = format_orlicz(M);
    report.params["which"] = which == HardyKind::HeadMean ? "H1" : "H2";
    report.params["p"] = p;
    report.params["n"] = a.size();
    report.params["sample_size"] = sample.size();

    double best = 0.0;
    std::size_t best_idx = 0;
    for (std::size_t j = 0; j < sample.size(); ++j) {
        const auto& x = sample[j];
        double den = orlicz_lorentz_norm(M, a, x);
        if (den == 0.0)
            throw std::invalid_argument("sample contains a zero vector");
        double num = orlicz_lorentz_norm(M, a, hardy_operator(x, p, which));
        double ratio = num / den;
        if (ratio > best) {
            best = ratio;
            best_idx = j;
        }
    }
    report.results["constant"] = best;
    report.results["maximizer_index"] = best_idx;
    report.results["note"] = "sample maximum; lower bound on the true constant";
    report.passed = std::isfinite(best);
    return report;
}

VerificationReport weight_condition(const WeightSequence& a, double p, double r,
                                    WeightDecay variant) {
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("weight_condition needs p in (1, 2)");
    if (variant == WeightDecay::Fast && !(r > 1.0 && r < p))
        throw std::invalid_argument("fast-decay condition needs 1 < r < p");

    std::size_t n = a.size();
    VerificationReport report;
    report.command = "weight_condition";
    report.params["variant"] = variant == WeightDecay::Slow ? "slow" : "fast";
    report.params["p"] = p;
    report.params["n"] = n;
    if (variant == WeightDecay::Fast)
        report.params["r"] = r;

    double best = 0.0;
    std::size_t best_k = 0;
    if (variant == WeightDecay::Slow) {
        // C = max_k [sum_{i>k} a_i / i^{1/p}] / [a_k k^{1-1/p}]
        std::vector<double> tail(n + 1, 0.0);
        for (std::size_t i = n; i-- > 0;)
            tail[i] = tail[i + 1] + a[i] / std::pow(static_cast<double>(i + 1), 1.0 / p);
        for (std::size_t k = 0; k < n; ++k) {
            double den = a[k] * std::pow(static_cast<double>(k + 1), 1.0 - 1.0 / p);
            double ratio = tail[k + 1] / den;
            if (ratio > best) {
                best = ratio;
                best_k = k + 1;
            }
        }
    } else {
        // C = max_k [sum_{i<=k} a_i^r / i^{p/2}] / [a_k^r k^{1-p/2}]
        double head = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            head += std::pow(a[k], r) / std::pow(static_cast<double>(k + 1), p / 2.0);
            double den = std::pow(a[k], r) * std::pow(static_cast<double>(k + 1), 1.0 - p / 2.0);
            double ratio = head / den;
            if (ratio > best) {
                best = ratio;
                best_k = k + 1;
            }
        }
    }
    report.results["constant"] = best;
    report.results["maximizer_k"] = best_k;
    report.passed = std::isfinite(best);
    return report;
}

} // namespace ol
