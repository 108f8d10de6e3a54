#include "ol/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ol {

namespace {

void check_dims(std::size_t x, std::size_t a) {
    if (x != a)
        throw std::invalid_argument("vector and weight dimensions differ");
}

std::vector<double> z_vector(int n, double p) {
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::pow(double(n) / double(i + 1), 1.0 / p);
    return z;
}

// Steps through S_n x S_n x S_n in lexicographic order of the flattened
// index; each block evaluation owns one cursor.
struct TripleCursor {
    int n;
    std::uint64_t fact;
    std::vector<int> pi, sigma, eta;

    explicit TripleCursor(int n_) : n(n_), fact(factorial(n_)) {}

    void seek(std::uint64_t t) {
        pi = nth_permutation(n, t / (fact * fact));
        sigma = nth_permutation(n, (t / fact) % fact);
        eta = nth_permutation(n, t % fact);
    }

    // returns which levels changed: 2 = pi, 1 = sigma, 0 = eta only
    int advance() {
        if (std::next_permutation(eta.begin(), eta.end()))
            return 0;
        if (std::next_permutation(sigma.begin(), sigma.end()))
            return 1;
        std::next_permutation(pi.begin(), pi.end());
        return 2;
    }
};

Estimate rooted(Estimate raw, double p) {
    Estimate out = raw;
    out.mean = std::pow(raw.mean, 1.0 / p);
    if (!raw.exact && raw.mean > 0.0) {
        out.se = raw.se * std::pow(raw.mean, 1.0 / p - 1.0) / p;
        out.se_approximate = true;
    }
    return out;
}

} // namespace

ConcaveInverseBuild ks_orlicz_build(const WeightSequence& a, double p, double r) {
    if (!(p >= 1.0) || !(r > p) || !std::isfinite(r))
        throw std::invalid_argument("weight-formula construction needs 1 <= p < r < inf");
    std::size_t n = a.size();
    double nd = double(n);

    std::vector<double> head(n + 1, 0.0), tail(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        head[i + 1] = head[i] + std::pow(a[i], p);
    for (std::size_t i = n; i-- > 0;)
        tail[i] = tail[i + 1] + std::pow(a[i], r);

    double pstar_exp = 1.0 - 1.0 / p; // 1/p*
    double rstar_exp = 1.0 - 1.0 / r;

    std::vector<std::pair<double, double>> samples;
    samples.reserve(n);
    for (std::size_t l = 1; l <= n; ++l) {
        double s = double(l) / nd;
        double phi = std::pow(s, pstar_exp) * std::pow(head[l] / nd, 1.0 / p);
        if (l < n)
            phi += std::pow(s, rstar_exp) * std::pow(tail[l] / nd, 1.0 / r);
        samples.emplace_back(s, phi);
    }
    return pl_from_concave_inverse(samples);
}

OrliczFunction ks_orlicz_from_weights(const WeightSequence& a, double p, double r) {
    return ks_orlicz_build(a, p, r).n_function;
}

OrliczFunction md_from_weights(const WeightSequence& d, double p) {
    return ks_orlicz_build(d, 1.0, p).n_function;
}

Estimate ks_average(std::span<const double> x, const WeightSequence& a, double r, double p,
                    const AveragingPlan& plan) {
    if (!(p >= 1.0) || !(r > p))
        throw std::invalid_argument("ks_average needs 1 <= p < r");
    check_dims(x.size(), a.size());
    int n = int(x.size());

    auto f = [&](std::span<const int> perm) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += std::pow(std::abs(x[i]) * a[perm[i]], r);
        return std::pow(s, p / r);
    };
    return rooted(average_over_perms(f, n, plan), p);
}

SchuettSides schuett_sides(std::span<const double> x, int k, double p, const AveragingPlan& plan) {
    int n = int(x.size());
    if (k < 1 || k > n)
        throw std::invalid_argument("schuett_sides needs 1 <= k <= n");
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("schuett_sides needs p in [1, 2]");

    int m = n / k;
    auto f = [&](std::span<const int> perm) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            double xi = x[perm[i]];
            s += xi * xi;
        }
        return std::pow(s, p / 2.0);
    };
    Estimate lhs = rooted(average_over_perms(f, n, plan), p);

    std::vector<double> xs = rearrange(x);
    double headp = 0.0;
    for (int i = 0; i < k; ++i)
        headp += std::pow(xs[i], p);
    double tail2 = 0.0;
    for (int i = k; i < n; ++i)
        tail2 += xs[i] * xs[i];
    double rhs = std::pow(headp / k, 1.0 / p) + std::sqrt(tail2 / k);
    return SchuettSides{lhs, rhs};
}

VerificationReport corollary_bounds_check(int n, double p) {
    if (n < 1)
        throw std::invalid_argument("corollary_bounds_check needs n >= 1");
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("corollary_bounds_check needs p in (1, 2)");

    VerificationReport report;
    report.command = "corollary_bounds_check";
    report.params["n"] = n;
    report.params["p"] = p;

    double nd = double(n);
    std::vector<double> z = z_vector(n, p);
    std::vector<double> head(n + 1, 0.0), tail2(n + 1, 0.0);
    for (int i = 0; i < n; ++i)
        head[i + 1] = head[i] + z[i];
    for (int i = n; i-- > 0;)
        tail2[i] = tail2[i + 1] + z[i] * z[i];

    double upper_c = 2.0 / (1.0 - 1.0 / p);
    double tail_c = 1.0 / std::sqrt(2.0 / p - 1.0);
    double pstar_exp = 1.0 - 1.0 / p;
    constexpr double slack = 1e-12;

    bool ok_upper = true, ok_lower = true, ok_tail = true;
    double worst_upper = 0.0, worst_lower = 0.0, worst_tail = 0.0;
    int bad_m = 0;
    for (int m = 1; m <= n; ++m) {
        double frac = std::pow(m / nd, pstar_exp);
        double head_avg = head[m] / nd;
        double u = head_avg / (upper_c * frac);
        double lo = head_avg / frac;
        double t = std::sqrt(m / nd) * std::sqrt(tail2[m] / nd) / (tail_c * frac);
        worst_upper = std::max(worst_upper, u);
        worst_lower = std::max(worst_lower, 1.0 / lo);
        worst_tail = std::max(worst_tail, t);
        bool here = u <= 1.0 + slack && lo >= 1.0 - slack && t <= 1.0 + slack;
        if (!here && bad_m == 0)
            bad_m = m;
        ok_upper = ok_upper && u <= 1.0 + slack;
        ok_lower = ok_lower && lo >= 1.0 - slack;
        ok_tail = ok_tail && t <= 1.0 + slack;
    }
    report.results["upper_head_bound"] = {{"constant", upper_c}, {"worst_fill", worst_upper}, {"passed", ok_upper}};
    report.results["lower_head_bound"] = {{"constant", 1.0}, {"worst_fill", worst_lower}, {"passed", ok_lower}};
    report.results["tail_bound"] = {{"constant", tail_c}, {"worst_fill", worst_tail}, {"passed", ok_tail}};
    if (bad_m)
        report.results["first_failing_m"] = bad_m;
    report.passed = ok_upper && ok_lower && ok_tail;
    return report;
}

Estimate theorem31_average(std::span<const double> x, const WeightSequence& d,
                           const WeightSequence& a, double p, const AveragingPlan& plan) {
    int n = int(x.size());
    check_dims(x.size(), d.size());
    check_dims(x.size(), a.size());
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("theorem31_average needs p in (1, 2)");

    std::vector<double> z = z_vector(n, p);
    std::vector<double> z2(n), d2(n), a2(n);
    std::vector<int> support(n);
    for (int k = 0; k < n; ++k) {
        z2[k] = z[k] * z[k];
        d2[k] = d[k] * d[k];
        a2[k] = a[k] * a[k];
        support[k] = n / (k + 1); // c^k has floor(n/k) non-zero entries
    }

    // prefix[m] = sum of x_i^2 over coordinates that pi sends into {1..m}
    auto prefixes = [&, n](std::span<const int> pi, std::vector<double>& prefix) {
        std::vector<double> by_pos(n, 0.0);
        for (int i = 0; i < n; ++i)
            by_pos[pi[i]] = x[i] * x[i];
        prefix.assign(n + 1, 0.0);
        for (int j = 0; j < n; ++j)
            prefix[j + 1] = prefix[j] + by_pos[j];
    };

    if (plan.mode == AveragingPlan::Mode::Exact) {
        long double terms = 1.0L;
        for (int i = 2; i <= n; ++i)
            terms *= i;
        terms = terms * terms * terms * n * n;
        if (n > 20 || terms > static_cast<long double>(plan.budget)) {
            std::ostringstream os;
            os << "exact triple enumeration needs (" << n << "!)^3 * " << n * n
               << " terms, over the budget of " << plan.budget << "; use a MonteCarlo plan";
            throw std::runtime_error(os.str());
        }
        std::uint64_t fact = factorial(n);
        std::uint64_t count = fact * fact * fact;

        auto eval = [&, n](std::uint64_t begin, std::uint64_t end, double* out) {
            TripleCursor cur(n);
            cur.seek(begin);
            std::vector<double> prefix, q(n), rk(n);
            int dirty = 2;
            for (std::uint64_t t = begin; t < end; ++t) {
                if (dirty >= 2) {
                    prefixes(cur.pi, prefix);
                    for (int k = 0; k < n; ++k)
                        q[k] = a2[k] * prefix[support[k]];
                }
                if (dirty >= 1) {
                    for (int k = 0; k < n; ++k)
                        rk[k] = q[k] * d2[cur.sigma[k]];
                }
                double s = 0.0;
                for (int k = 0; k < n; ++k)
                    s += rk[k] * z2[cur.eta[k]];
                out[t - begin] = std::sqrt(s);
                if (t + 1 < end)
                    dirty = cur.advance();
            }
        };
        Estimate est;
        est.mean = exact_mean(count, eval, plan.threads);
        est.n_samples = count;
        est.exact = true;
        return est;
    }

    auto one = [&, n](Rng& rng) {
        std::vector<int> pi(n), sigma(n), eta(n);
        std::iota(pi.begin(), pi.end(), 0);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::iota(eta.begin(), eta.end(), 0);
        rng.shuffle(pi);
        rng.shuffle(sigma);
        rng.shuffle(eta);
        std::vector<double> prefix;
        prefixes(pi, prefix);
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += a2[k] * prefix[support[k]] * d2[sigma[k]] * z2[eta[k]];
        return std::sqrt(s);
    };
    McMoments m = mc_mean(plan, one);
    Estimate est;
    est.mean = m.mean;
    est.se = m.se;
    est.n_samples = m.n;
    est.exact = false;
    return est;
}

} // namespace ol
