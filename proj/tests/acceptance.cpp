// Acceptance suite: one pass/fail line per criterion, exit code 0 only when
// everything holds within its stated tolerance and time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ol/combinat.hpp"
#include "ol/embed.hpp"
#include "ol/orlicz.hpp"
#include "ol/spaces.hpp"
#include "oracles.hpp"

using ol::AveragingPlan;
using ol::OrliczFunction;
using ol::WeightSequence;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0)
                detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0)
            detail << "; ";
        detail << what;
    }
};

int failures = 0;

void run_criterion(int number, const std::string& name, double time_limit_s,
                   const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& err) {
        out.ok = false;
        out.note(std::string("exception: ") + err.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > time_limit_s) {
        out.ok = false;
        out.note("time limit exceeded");
    }
    if (!out.ok)
        ++failures;
    std::printf("[%s] criterion %d: %s (%.2f s%s%s)\n", out.ok ? "PASS" : "FAIL", number,
                name.c_str(), elapsed, out.detail.tellp() > 0 ? "; " : "",
                out.detail.str().c_str());
    std::fflush(stdout);
}

std::vector<double> seeded_vector(int n, std::uint64_t stream) {
    ol::Rng rng(ol::derive_seed(9001, stream));
    return oracles::random_vector(rng, n);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

} // namespace

int main() {
    AveragingPlan exact = AveragingPlan::exact();

    // 1. Luxemburg norm of a power function recovers the lp norm.
    run_criterion(1, "luxemburg norm equals lp norm", 1.0, [&](Outcome& out) {
        double worst = 0.0;
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            auto M = OrliczFunction::power(p);
            for (int rep = 0; rep < 100; ++rep) {
                auto x = seeded_vector(10, 10 * std::uint64_t(p * 10) + rep);
                double expect = ol::lp_norm(x, p);
                double got = ol::luxemburg_norm(M, x);
                worst = std::max(worst, std::abs(got - expect) / expect);
            }
        }
        out.require(worst <= 1e-9, "relative error above 1e-9");
        out.note("max rel err " + fmt(worst));
    });

    // 2. Conjugation is an involution and the inverse product sandwich holds.
    run_criterion(2, "conjugate involution and duality sandwich", 1.0, [&](Outcome& out) {
        ol::Rng rng(4242);
        std::vector<OrliczFunction> pl_corpus;
        for (int i = 0; i < 10; ++i)
            pl_corpus.push_back(oracles::random_pl(rng));

        for (const auto& M : pl_corpus) {
            auto back = M.conjugate().conjugate();
            for (double t : M.as_piecewise_linear().t)
                out.require(std::abs(back(t) - M(t)) <= 1e-12 * (1.0 + M(t)),
                            "involution drift above 1e-12");
        }

        ol::Grid g = ol::Grid::log_spaced(1e-3, 1e3, 50);
        for (double p : {1.2, 1.5, 2.0, 3.0})
            out.require(ol::check_duality_product(OrliczFunction::power(p), g).passed,
                        "duality failed for a power function");
        for (const auto& M : pl_corpus)
            out.require(ol::check_duality_product(M, g).passed,
                        "duality failed for a piecewise-linear function");

        auto sq = OrliczFunction::power(2.0);
        auto sq_conj = sq.conjugate();
        for (double t : g.points) {
            double product = sq.inverse(t) * sq_conj.inverse(t);
            out.require(std::abs(product - 2.0 * t) <= 1e-12 * 2.0 * t,
                        "t^2 product differs from 2t");
        }
    });

    // 3. Exact partial-sum bound scans for the lp-generating weights.
    run_criterion(3, "partial-sum bound scans at n = 1000", 1.0, [&](Outcome& out) {
        for (double p : {1.2, 1.5, 1.8}) {
            auto report = ol::corollary_bounds_check(1000, p);
            out.require(report.passed, "scan failed at p = " + std::to_string(p));
        }
    });

    // 4. Mixed-norm permutation average against its two-term side.
    run_criterion(4, "mixed-norm average two-sided bounds", 30.0, [&](Outcome& out) {
        double lo = 1e300, hi = 0.0;
        for (int n = 4; n <= 8; ++n) {
            for (int rep = 0; rep < 50; ++rep) {
                auto x = seeded_vector(n, 40000 + 100 * n + rep);
                for (int k = 1; k <= n; ++k) {
                    auto sides = ol::schuett_sides(x, k, 1.5, exact);
                    double ratio = sides.lhs.mean / sides.rhs;
                    lo = std::min(lo, ratio);
                    hi = std::max(hi, ratio);
                    if (k == n)
                        out.require(std::abs(ratio - 1.0) <= 1e-12, "k = n ratio is not 1");
                    if (k == 1)
                        out.require(ratio >= 0.5 - 1e-12 && ratio <= 1.0 + 1e-12,
                                    "k = 1 ratio outside [1/2, 1]");
                }
            }
        }
        out.require(lo >= 1.0 / 8.0 && hi <= 8.0, "ratio left [1/8, 8]");
        out.note("ratio range [" + fmt(lo) + ", " + fmt(hi) + "]");
    });

    // 5. Weight-average pipeline: exact flat-weight case, function
    //    equivalence, and the two-sided sandwich.
    run_criterion(5, "weight-average sandwich pipeline", 60.0, [&](Outcome& out) {
        for (int rep = 0; rep < 10; ++rep) {
            auto x = seeded_vector(6, 50000 + rep);
            double r = 2.0 + 0.3 * rep;
            auto e = ol::ks_average(x, WeightSequence::constant(6), r, 1.5, exact);
            double expect = ol::lp_norm(x, r);
            out.require(std::abs(e.mean - expect) <= 1e-12 * expect,
                        "flat-weight average differs from the lp norm");
        }

        auto N = ol::ks_orlicz_from_weights(WeightSequence::constant(64), 1.0, 2.0);
        auto [qlo, qhi] = ol::equivalence_ratio(N, OrliczFunction::power(2.0),
                                                ol::Grid::log_spaced(0.01, 1.0, 80));
        out.require(qhi / qlo <= 4.0, "equivalence spread above 4");
        out.note("equivalence spread " + fmt(qhi / qlo));

        double lo = 1e300, hi = 0.0;
        double p = 1.0, r = 2.0;
        for (int n = 4; n <= 8; ++n) {
            auto a = WeightSequence::power_decay(n, 0.5);
            auto Nn = ol::ks_orlicz_from_weights(a, p, r);
            for (int rep = 0; rep < 50; ++rep) {
                auto x = seeded_vector(n, 51000 + 100 * n + rep);
                double avg = ol::ks_average(x, a, r, p, exact).mean;
                double ratio = avg / ol::luxemburg_norm(Nn, x);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        out.require(std::log(hi / lo) <= 2.5, "sandwich log-spread above 2.5");
        out.note("sandwich log-spread " + fmt(std::log(hi / lo)));
    });

    // 6. Triple permutation average: brute-force agreement and norm ratio.
    run_criterion(6, "triple average vs orlicz-lorentz norm", 300.0, [&](Outcome& out) {
        double p = 1.6;
        for (int n : {2, 3, 4}) {
            auto d = ol::build_d(OrliczFunction::power(1.3), n);
            auto a = WeightSequence::power_decay(n, 1.0);
            for (int rep = 0; rep < 3; ++rep) {
                auto x = seeded_vector(n, 60000 + 10 * n + rep);
                double expect = oracles::theorem31_brute(x, d.values(), a.values(), p);
                double got = ol::theorem31_average(x, d, a, p, exact).mean;
                out.require(std::abs(got - expect) <= 1e-10 * expect,
                            "exact average differs from brute force");
            }
        }

        double lo = 1e300, hi = 0.0;
        for (int n : {3, 4, 5}) {
            auto d = ol::build_d(OrliczFunction::power(1.3), n);
            auto a = WeightSequence::power_decay(n, 1.0);
            // corpus qualifier: these weights pass the slow-decay checker
            auto wc = ol::weight_condition(a, p, 0.0, ol::WeightDecay::Slow);
            out.require(wc.results["constant"].get<double>() <= 2.5,
                        "weight corpus fails the slow-decay condition");
            auto Md = ol::md_from_weights(d, p);
            for (int rep = 0; rep < 50; ++rep) {
                auto x = seeded_vector(n, 61000 + 100 * n + rep);
                double avg = ol::theorem31_average(x, d, a, p, exact).mean;
                double ratio = avg / ol::orlicz_lorentz_norm(Md, a, x);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        out.require(std::log(hi / lo) <= 2.5, "norm-ratio log-spread above 2.5");
        out.note("log-spread " + fmt(std::log(hi / lo)));
    });

    // 7. The embedding: oracle agreement, norm structure, sign averages,
    //    and a finite stable distortion.
    run_criterion(7, "embedding norm and distortion", 300.0, [&](Outcome& out) {
        double p = 1.6;
        auto M = OrliczFunction::power(1.3);

        auto spec2 = ol::EmbeddingSpec::build(2, p, M, WeightSequence::power_decay(2, 1.0));
        for (int rep = 0; rep < 3; ++rep) {
            auto x = seeded_vector(2, 70000 + rep);
            double expect = oracles::psi_l1_brute(x, spec2.d.values(), spec2.a.values(), p);
            double got = ol::psi_l1_norm(spec2, x, exact).mean;
            out.require(std::abs(got - expect) <= 1e-10 * expect,
                        "embedded norm differs from brute force");
        }

        auto spec3 = ol::EmbeddingSpec::build(3, p, M, WeightSequence::power_decay(3, 1.0));
        {
            auto x = seeded_vector(3, 70100);
            std::vector<double> x2(x);
            for (auto& v : x2)
                v *= 2.0;
            out.require(ol::psi_l1_norm(spec3, x2, exact).mean ==
                            2.0 * ol::psi_l1_norm(spec3, x, exact).mean,
                        "homogeneity under doubling is not exact");
            std::vector<double> y{-x[1], x[2], -x[0]};
            double base = ol::psi_l1_norm(spec3, x, exact).mean;
            out.require(std::abs(ol::psi_l1_norm(spec3, y, exact).mean - base) <= 1e-12 * base,
                        "signed permutation changed the embedded norm");
        }

        ol::Rng rng(7777);
        for (int n = 1; n <= 5; ++n) {
            for (int rep = 0; rep < 20; ++rep) {
                std::vector<std::vector<double>> b(n, std::vector<double>(n));
                for (auto& row : b)
                    for (auto& v : row)
                        v = rng.next_gaussian();
                double ratio = ol::khintchine_ratio(b, exact).mean;
                out.require(ratio > 0.0 && ratio <= 1.0 + 1e-12, "sign ratio left (0, 1]");
            }
        }

        auto r3 = ol::distortion_report(spec3, ol::default_distortion_sample(3, 2024), exact);
        auto spec4 = ol::EmbeddingSpec::build(4, p, M, WeightSequence::power_decay(4, 1.0));
        auto r4 = ol::distortion_report(spec4, ol::default_distortion_sample(4, 2024), exact);
        out.require(std::isfinite(r3.distortion) && r3.distortion >= 1.0, "n=3 distortion not finite");
        out.require(std::isfinite(r4.distortion) && r4.distortion >= 1.0, "n=4 distortion not finite");
        out.require(std::abs(r4.distortion - r3.distortion) / r3.distortion <= 0.25,
                    "distortion moved more than 25% from n=3 to n=4");
        out.note("distortion n=3: " + fmt(r3.distortion) +
                 ", n=4: " + fmt(r4.distortion));
    });

    // 8. Hardy machinery: decay conditions and empirical constants.
    run_criterion(8, "hardy conditions and empirical constants", 60.0, [&](Outcome& out) {
        double prev = 0.0;
        for (int n : {8, 16, 32, 64}) {
            auto report =
                ol::weight_condition(WeightSequence::constant(n), 1.5, 0.0, ol::WeightDecay::Slow);
            double c = report.results["constant"].get<double>();
            out.require(c > prev, "flat-weight constant failed to grow");
            prev = c;
        }
        out.require(prev > 2.0, "flat-weight constant stayed small");

        for (int n : {100, 1000, 10000}) {
            auto report = ol::weight_condition(WeightSequence::power_decay(n, 1.0), 1.5, 0.0,
                                               ol::WeightDecay::Slow);
            out.require(report.results["constant"].get<double>() <= 1.5,
                        "harmonic-weight constant above 1.5");
        }

        auto M = OrliczFunction::power(1.3);
        double c16 = 0.0, c64 = 0.0;
        for (int n : {16, 64}) {
            auto sample = ol::default_distortion_sample(n, 808);
            auto report = ol::empirical_hardy_constant(M, WeightSequence::power_decay(n, 1.0), 1.6,
                                                       ol::HardyKind::HeadMean, sample);
            (n == 16 ? c16 : c64) = report.results["constant"].get<double>();
        }
        out.require(c64 <= 1.10 * c16, "empirical constant grew more than 10%");
        out.note("hardy constant n=16: " + fmt(c16) + ", n=64: " + fmt(c64));
    });

    // 9. Determinism of the Monte Carlo paths under fixed seeds and threads.
    run_criterion(9, "seeded monte carlo determinism", 60.0, [&](Outcome& out) {
        auto x = seeded_vector(6, 90000);
        auto d = WeightSequence::power_decay(6, 0.7);
        auto a = WeightSequence::power_decay(6, 1.0);

        auto plan = AveragingPlan::monte_carlo(50000, 31337);
        auto t1 = ol::theorem31_average(x, d, a, 1.6, plan);
        auto t2 = ol::theorem31_average(x, d, a, 1.6, plan);
        out.require(t1.mean == t2.mean && t1.se == t2.se, "triple average is not reproducible");
        plan.threads = 4;
        auto t4 = ol::theorem31_average(x, d, a, 1.6, plan);
        out.require(t1.mean == t4.mean && t1.se == t4.se, "triple average depends on threads");

        auto spec = ol::EmbeddingSpec::build(6, 1.6, OrliczFunction::power(1.3), a);
        plan.threads = 1;
        auto p1 = ol::psi_l1_norm(spec, x, plan);
        plan.threads = 4;
        auto p4 = ol::psi_l1_norm(spec, x, plan);
        out.require(p1.mean == p4.mean && p1.se == p4.se, "embedded norm depends on threads");

        plan.threads = 1;
        auto k1 = ol::ks_average(x, a, 2.0, 1.5, plan);
        plan.threads = 4;
        auto k4 = ol::ks_average(x, a, 2.0, 1.5, plan);
        out.require(k1.mean == k4.mean && k1.se == k4.se, "weight average depends on threads");
    });

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
