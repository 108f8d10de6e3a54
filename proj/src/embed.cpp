#include "ol/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ol {

namespace {

// shared by the exact enumerators below
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

    int advance() {
        if (std::next_permutation(eta.begin(), eta.end()))
            return 0;
        if (std::next_permutation(sigma.begin(), sigma.end()))
            return 1;
        std::next_permutation(pi.begin(), pi.end());
        return 2;
    }
};

long double exact_psi_terms(int n) {
    long double t = 1.0L;
    for (int i = 2; i <= n; ++i)
        t *= i;
    t = t * t * t;
    for (int i = 0; i < n; ++i)
        t *= 4.0L;
    return t * n * n;
}

} // namespace

WeightSequence build_d(const OrliczFunction& M, int n) {
    if (n < 1)
        throw std::invalid_argument("build_d needs n >= 1");
    if (M.is_degenerate())
        throw std::invalid_argument("build_d needs a strict Orlicz function");
    OrliczFunction conj = M.conjugate();
    if (conj.sup_value() < 1.0)
        throw std::domain_error("conjugate range does not reach 1; d-sequence would degenerate");

    std::vector<double> d(n);
    double prev_inv = 0.0;
    for (int l = 1; l <= n; ++l) {
        double inv = conj.inverse(double(l) / double(n));
        d[l - 1] = double(n) * (inv - prev_inv);
        prev_inv = inv;
    }
    // (M*)^{-1} is concave, so d is non-increasing up to rounding
    for (int l = 1; l < n; ++l) {
        if (d[l] > d[l - 1] * (1.0 + 1e-12))
            throw std::runtime_error("build_d: conjugate inverse produced a non-concave increment");
        d[l] = std::min(d[l], d[l - 1]);
    }
    if (!(d[n - 1] > 0.0))
        throw std::domain_error("build_d: d-sequence is not strictly positive");
    return WeightSequence(std::move(d));
}

VerificationReport verify_md_equivalence(const OrliczFunction& M, int n, double p, double eps,
                                         double spread_bound) {
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("verify_md_equivalence needs p in (1, 2)");
    if (!(eps > 0.0 && eps < p - 1.0))
        throw std::invalid_argument("verify_md_equivalence needs eps in (0, p-1)");

    Grid hyp_grid = Grid::log_spaced(1e-3, 1e3, 241);
    VerificationReport hyp = check_power_ratio_monotone(M, p - eps, hyp_grid);
    if (!hyp.passed) {
        std::ostringstream os;
        os << "hypothesis failed: M(t)/t^" << (p - eps) << " increases";
        if (hyp.results.contains("failing_point"))
            os << " at t = " << hyp.results["failing_point"].get<double>();
        throw std::invalid_argument(os.str());
    }

    WeightSequence d = build_d(M, n);
    ConcaveInverseBuild md = ks_orlicz_build(d, 1.0, p);
    OrliczFunction m_conj = M.conjugate();

    std::vector<double> grid_pts(n);
    for (int l = 1; l <= n; ++l)
        grid_pts[l - 1] = double(l) / double(n);
    auto [lo, hi] = equivalence_ratio(md.n_conjugate, m_conj, Grid(std::move(grid_pts)));

    VerificationReport report;
    report.command = "verify_md_equivalence";
    report.params["orlicz"] = format_orlicz(M);
    report.params["n"] = n;
    report.params["p"] = p;
    report.params["eps"] = eps;
    report.params["spread_bound"] = spread_bound;
    report.results["ratio_lo"] = lo;
    report.results["ratio_hi"] = hi;
    report.results["spread"] = hi / lo;
    report.results["d"] = d.values();
    report.results["majorized"] = md.majorized;
    report.results["tail_flattened"] = md.tail_flattened;
    report.passed = hi / lo <= spread_bound;
    return report;
}

EmbeddingSpec EmbeddingSpec::build(int n, double p, const OrliczFunction& M,
                                   const WeightSequence& a) {
    if (!(p > 1.0 && p < 2.0))
        throw std::invalid_argument("embedding needs p in (1, 2)");
    if (a.size() != std::size_t(n))
        throw std::invalid_argument("weight dimension must equal n");

    EmbeddingSpec spec{n, p, M, a, build_d(M, n), {}, {}};
    spec.z.resize(n);
    spec.c_support.resize(n);
    for (int i = 0; i < n; ++i) {
        spec.z[i] = std::pow(double(n) / double(i + 1), 1.0 / p);
        spec.c_support[i] = n / (i + 1);
    }

    // construction identity: partial means of d reproduce the conjugate inverse
    OrliczFunction conj = M.conjugate();
    double run = 0.0;
    for (int l = 1; l <= n; ++l) {
        run += spec.d[l - 1];
        double expected = conj.inverse(double(l) / double(n));
        if (std::abs(run / double(n) - expected) > 1e-10 * (1.0 + expected))
            throw std::runtime_error("embedding spec: telescoping identity violated");
    }
    return spec;
}

nlohmann::json EmbeddingSpec::to_json() const {
    return nlohmann::json{
        {"n", n},
        {"p", p},
        {"orlicz", format_orlicz(M)},
        {"weights", a.values()},
        {"d", d.values()},
        {"z", z},
        {"c_supports", c_support},
    };
}

Estimate psi_l1_norm(const EmbeddingSpec& spec, std::span<const double> x,
                     const AveragingPlan& plan) {
    int n = spec.n;
    if (x.size() != std::size_t(n))
        throw std::invalid_argument("vector dimension must equal n");

    std::uint64_t sign_pairs = std::uint64_t(1) << (2 * n);
    const auto& a = spec.a;
    const auto& d = spec.d;
    const auto& z = spec.z;
    const auto& support = spec.c_support;

    // signed prefix sums in pi-order for every sign vector eps:
    // table[e][m] = sum over coordinates i with pi(i) <= m of eps_i x_i
    auto sign_prefixes = [&, n](std::span<const int> pi, std::vector<double>& table) {
        std::uint64_t rows = std::uint64_t(1) << n;
        std::vector<double> by_pos(n);
        std::vector<int> coord_at(n);
        for (int i = 0; i < n; ++i)
            coord_at[pi[i]] = i;
        table.assign(rows * std::uint64_t(n + 1), 0.0);
        for (std::uint64_t e = 0; e < rows; ++e) {
            double* row = table.data() + e * std::uint64_t(n + 1);
            double run = 0.0;
            row[0] = 0.0;
            for (int j = 0; j < n; ++j) {
                int i = coord_at[j];
                double v = (e >> i & 1u) ? -x[i] : x[i];
                run += v;
                row[j + 1] = run;
            }
        }
    };

    // averaged |.| over the 4^n sign pairs for fixed (pi, sigma, eta)
    auto sign_average = [&, n](const std::vector<double>& table, const std::vector<double>& w) {
        std::uint64_t rows = std::uint64_t(1) << n;
        double total = 0.0;
        std::vector<double> g(n);
        for (std::uint64_t e = 0; e < rows; ++e) {
            const double* row = table.data() + e * std::uint64_t(n + 1);
            for (int k = 0; k < n; ++k)
                g[k] = w[k] * row[support[k]];
            for (std::uint64_t dd = 0; dd < rows; ++dd) {
                double s = 0.0;
                for (int k = 0; k < n; ++k)
                    s += (dd >> k & 1u) ? -g[k] : g[k];
                total += std::abs(s);
            }
        }
        return total / double(sign_pairs);
    };

    if (plan.mode == AveragingPlan::Mode::Exact) {
        if (n > 20 || exact_psi_terms(n) > static_cast<long double>(plan.budget)) {
            std::ostringstream os;
            os << "exact evaluation needs (" << n << "!)^3 * 4^" << n << " * " << n * n
               << " terms, over the budget of " << plan.budget << "; use a MonteCarlo plan";
            throw std::runtime_error(os.str());
        }
        std::uint64_t fact = factorial(n);
        std::uint64_t triples = fact * fact * fact;

        auto eval = [&, n](std::uint64_t begin, std::uint64_t end, double* out) {
            TripleCursor cur(n);
            cur.seek(begin);
            std::vector<double> table, w(n);
            int dirty = 2;
            for (std::uint64_t t = begin; t < end; ++t) {
                if (dirty >= 2)
                    sign_prefixes(cur.pi, table);
                for (int k = 0; k < n; ++k)
                    w[k] = a[k] * d[cur.sigma[k]] * z[cur.eta[k]];
                out[t - begin] = sign_average(table, w);
                if (t + 1 < end)
                    dirty = cur.advance();
            }
        };
        Estimate est;
        est.mean = exact_mean(triples, eval, plan.threads);
        est.n_samples = triples * sign_pairs;
        est.exact = true;
        return est;
    }

    auto one = [&, n](Rng& rng) {
        std::vector<int> pi(n), sigma(n), eta(n), eps(n), delta(n);
        std::iota(pi.begin(), pi.end(), 0);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::iota(eta.begin(), eta.end(), 0);
        rng.shuffle(pi);
        rng.shuffle(sigma);
        rng.shuffle(eta);
        rng.signs(eps);
        rng.signs(delta);
        std::vector<double> by_pos(n);
        for (int i = 0; i < n; ++i)
            by_pos[pi[i]] = eps[i] * x[i];
        std::vector<double> prefix(n + 1, 0.0);
        for (int j = 0; j < n; ++j)
            prefix[j + 1] = prefix[j] + by_pos[j];
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += delta[k] * a[k] * d[sigma[k]] * z[eta[k]] * prefix[support[k]];
        return std::abs(s);
    };
    McMoments m = mc_mean(plan, one);
    Estimate est;
    est.mean = m.mean;
    est.se = m.se;
    est.n_samples = m.n;
    est.exact = false;
    return est;
}

std::vector<double> psi_coordinates(const EmbeddingSpec& spec, std::span<const double> x) {
    int n = spec.n;
    if (n > 3)
        throw std::invalid_argument("coordinate dump supported for n <= 3 only");
    if (x.size() != std::size_t(n))
        throw std::invalid_argument("vector dimension must equal n");

    std::uint64_t fact = factorial(n);
    std::uint64_t rows = std::uint64_t(1) << n;
    std::vector<double> coords;
    coords.reserve(fact * fact * fact * rows * rows);

    TripleCursor cur(n);
    cur.seek(0);
    for (std::uint64_t t = 0; t < fact * fact * fact; ++t) {
        for (std::uint64_t e = 0; e < rows; ++e) {
            for (std::uint64_t dd = 0; dd < rows; ++dd) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) {
                    int pos = cur.pi[i];
                    double xi = (e >> i & 1u) ? -x[i] : x[i];
                    for (int k = 0; k < n; ++k) {
                        if (pos >= spec.c_support[k])
                            continue;
                        double term = xi * spec.a[k] * spec.d[cur.sigma[k]] * spec.z[cur.eta[k]];
                        s += (dd >> k & 1u) ? -term : term;
                    }
                }
                coords.push_back(s);
            }
        }
        if (t + 1 < fact * fact * fact)
            cur.advance();
    }
    return coords;
}

Estimate khintchine_ratio(const std::vector<std::vector<double>>& b, const AveragingPlan& plan) {
    int n = int(b.size());
    if (n < 1)
        throw std::invalid_argument("khintchine_ratio needs a non-empty matrix");
    double frob2 = 0.0;
    for (const auto& row : b) {
        if (row.size() != std::size_t(n))
            throw std::invalid_argument("khintchine_ratio needs a square matrix");
        for (double v : row)
            frob2 += v * v;
    }
    if (frob2 == 0.0)
        throw std::invalid_argument("khintchine_ratio of the zero matrix");
    double frob = std::sqrt(frob2);

    if (plan.mode == AveragingPlan::Mode::Exact) {
        if (n >= 32 || (std::uint64_t(1) << (2 * n)) > plan.budget) {
            std::ostringstream os;
            os << "exact sign enumeration needs 4^" << n << " terms, over the budget of "
               << plan.budget << "; use a MonteCarlo plan";
            throw std::runtime_error(os.str());
        }
        std::uint64_t rows = std::uint64_t(1) << n;
        std::uint64_t count = rows * rows; // flattened (delta, eps)

        auto eval = [&, n](std::uint64_t begin, std::uint64_t end, double* out) {
            std::vector<double> t(n);
            std::uint64_t cur_delta = rows; // invalid: force recompute
            for (std::uint64_t idx = begin; idx < end; ++idx) {
                std::uint64_t dd = idx >> n;
                std::uint64_t e = idx & (rows - 1);
                if (dd != cur_delta) {
                    for (int i = 0; i < n; ++i) {
                        double s = 0.0;
                        for (int k = 0; k < n; ++k)
                            s += (dd >> k & 1u) ? -b[i][k] : b[i][k];
                        t[i] = s;
                    }
                    cur_delta = dd;
                }
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    s += (e >> i & 1u) ? -t[i] : t[i];
                out[idx - begin] = std::abs(s);
            }
        };
        Estimate est;
        est.mean = exact_mean(count, eval, plan.threads) / frob;
        est.n_samples = count;
        est.exact = true;
        return est;
    }

    auto one = [&, n](Rng& rng) {
        std::vector<int> eps(n), delta(n);
        rng.signs(eps);
        rng.signs(delta);
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                s += eps[i] * delta[k] * b[i][k];
        return std::abs(s);
    };
    McMoments m = mc_mean(plan, one);
    Estimate est;
    est.mean = m.mean / frob;
    est.se = m.se / frob;
    est.n_samples = m.n;
    est.exact = false;
    return est;
}

nlohmann::json DistortionReport::to_json() const {
    nlohmann::json per_vector = nlohmann::json::array();
    for (std::size_t i = 0; i < ratios.size(); ++i)
        per_vector.push_back({{"label", labels[i]}, {"ratio", ratios[i]}});
    nlohmann::json j{
        {"per_vector", per_vector},
        {"min_ratio", min_ratio},
        {"max_ratio", max_ratio},
        {"distortion", distortion},
        {"mode", exact ? "exact" : "mc"},
        {"exact", exact},
        {"samples_per_vector", samples_per_vector},
        {"seed", seed},
    };
    if (!exact)
        j["max_se"] = max_se;
    return j;
}

std::vector<std::vector<double>> default_distortion_sample(int n, std::uint64_t seed) {
    std::vector<std::vector<double>> sample;
    std::vector<double> e1(n, 0.0);
    e1[0] = 1.0;
    sample.push_back(e1);
    sample.push_back(std::vector<double>(n, 1.0));
    for (double alpha : {0.5, 1.0, 2.0}) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = std::pow(double(i + 1), -alpha);
        sample.push_back(v);
    }
    for (int j = 0; j < 20; ++j) {
        Rng rng(derive_seed(seed, 100 + j));
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = rng.next_gaussian();
        sample.push_back(v);
    }
    for (int j = 0; j < 10; ++j) {
        Rng rng(derive_seed(seed, 200 + j));
        std::vector<double> v(n, 0.0);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            if (rng.next_u64() & 1u) {
                v[i] = rng.next_gaussian();
                nonzero = nonzero || v[i] != 0.0;
            }
        }
        if (!nonzero)
            v[0] = 1.0;
        sample.push_back(v);
    }
    return sample;
}

DistortionReport distortion_report(const EmbeddingSpec& spec,
                                   const std::vector<std::vector<double>>& sample,
                                   const AveragingPlan& plan) {
    if (sample.empty())
        throw std::invalid_argument("distortion_report needs a non-empty sample");

    DistortionReport report;
    report.seed = plan.seed;
    report.exact = plan.mode == AveragingPlan::Mode::Exact;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t j = 0; j < sample.size(); ++j) {
        const auto& x = sample[j];
        double den = orlicz_lorentz_norm(spec.M, spec.a, x);
        if (den == 0.0)
            throw std::invalid_argument("distortion sample contains a zero vector");
        Estimate num = psi_l1_norm(spec, x, plan);
        double ratio = num.mean / den;
        report.labels.push_back("x" + std::to_string(j));
        report.ratios.push_back(ratio);
        report.samples_per_vector = num.n_samples;
        report.max_se = std::max(report.max_se, num.se);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    report.min_ratio = lo;
    report.max_ratio = hi;
    report.distortion = hi / lo;
    return report;
}

} // namespace ol
