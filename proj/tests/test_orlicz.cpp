#include "doctest.h"

#include <cmath>
#include <limits>

#include "ol/orlicz.hpp"
#include "oracles.hpp"

using ol::Grid;
using ol::OrliczFunction;

namespace {
const double inf = std::numeric_limits<double>::infinity();
}

TEST_SUITE_BEGIN("orlicz");

TEST_CASE("eval") {
    auto sq = OrliczFunction::power(2.0);
    CHECK(sq(3.0) == doctest::Approx(9.0).epsilon(1e-15));
    CHECK(sq(0.0) == 0.0);

    auto pl = OrliczFunction::piecewise_linear({{0, 0}, {1, 1}, {2, 3}});
    CHECK(pl(1.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(pl(0.0) == 0.0);
    CHECK(pl(3.0) == doctest::Approx(5.0).epsilon(1e-15)); // final slope 2

    CHECK_THROWS_AS(sq(-1.0), std::invalid_argument);
}

TEST_CASE("eval past a domain bound is infinite") {
    auto f = OrliczFunction::piecewise_linear({0.0, 1.0}, {0.0, 0.5}, 1.0, 2.0);
    CHECK(f(2.0) == doctest::Approx(1.5));
    CHECK(f(2.0000001) == inf);
}

TEST_CASE("inverse") {
    auto sq = OrliczFunction::power(2.0);
    CHECK(sq.inverse(4.0) == doctest::Approx(2.0).epsilon(1e-15));

    auto pl = OrliczFunction::piecewise_linear({{0, 0}, {1, 1}, {2, 3}});
    CHECK(pl.inverse(2.0) == doctest::Approx(1.5).epsilon(1e-15));

    // round trip for strictly increasing functions
    CHECK(sq.inverse(sq(0.7)) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(pl.inverse(pl(0.7)) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("inverse resolves flats to their right endpoint") {
    // conjugate of t -> 2t: zero on [0,2], +inf past it
    auto f = OrliczFunction::power(1.0, 2.0).conjugate();
    CHECK(f.inverse(0.0) == doctest::Approx(2.0));
    CHECK(f.inverse(0.5) == doctest::Approx(2.0)); // saturates at the bound
}

TEST_CASE("generalized inverse is a right inverse") {
    ol::Rng rng(11);
    std::vector<OrliczFunction> corpus{OrliczFunction::power(1.2), OrliczFunction::power(1.5),
                                       OrliczFunction::power(2.0), OrliczFunction::power(3.0)};
    for (int i = 0; i < 6; ++i)
        corpus.push_back(oracles::random_pl(rng));
    for (const auto& M : corpus) {
        for (double s : {0.05, 0.3, 1.0, 4.7, 20.0}) {
            double t = M.inverse(s);
            CHECK(M(t) <= s * (1.0 + 1e-12));
            double delta = 1e-8 * (1.0 + t);
            CHECK(M(t + delta) > s);
        }
    }
}

TEST_CASE("conjugate of powers is analytic") {
    // t^p / p pairs with t^q / q
    for (double p : {1.5, 2.0, 3.0}) {
        double q = p / (p - 1.0);
        auto conj = OrliczFunction::power(p, 1.0 / p).conjugate();
        REQUIRE(conj.is_power());
        CHECK(conj.as_power().p == doctest::Approx(q).epsilon(1e-14));
        CHECK(conj.as_power().c == doctest::Approx(1.0 / q).epsilon(1e-14));
    }
    // t^2 pairs with x^2/4
    auto conj = OrliczFunction::power(2.0).conjugate();
    REQUIRE(conj.is_power());
    CHECK(conj.as_power().p == doctest::Approx(2.0));
    CHECK(conj.as_power().c == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("piecewise-linear conjugate matches the grid-supremum oracle") {
    ol::Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        auto M = oracles::random_pl(rng);
        auto conj = M.conjugate();
        const auto& pl = conj.as_piecewise_linear();
        double x_hi = pl.domain_bound ? *pl.domain_bound : pl.t.back() * 2.0;
        double t_hi = M.as_piecewise_linear().t.back() * 3.0;
        for (int j = 0; j < 10; ++j) {
            double x = x_hi * rng.next_unit();
            double expected = oracles::conjugate_by_grid(M, x, t_hi);
            CHECK(conj(x) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("conjugate involution on breakpoints") {
    ol::Rng rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        auto M = oracles::random_pl(rng);
        auto back = M.conjugate().conjugate();
        for (double t : M.as_piecewise_linear().t)
            CHECK(std::abs(back(t) - M(t)) <= 1e-12 * (1.0 + M(t)));
    }
}

TEST_CASE("conjugate of a bounded function materializes the extension segment") {
    // M: slope 1/2 to (1, 1/2), slope 1 up to the bound 2, +inf beyond
    auto M = OrliczFunction::piecewise_linear({0.0, 1.0}, {0.0, 0.5}, 1.0, 2.0);
    auto conj = M.conjugate();
    // sup over t <= 2 of (xt - M(t)), checked against direct candidates
    for (double x : {0.1, 0.5, 0.8, 1.0, 1.7, 3.0, 10.0}) {
        double expect = std::max({0.0, x * 1.0 - 0.5, x * 2.0 - 1.5});
        CHECK(conj(x) == doctest::Approx(expect).epsilon(1e-13));
    }
    // the conjugate keeps growing (slope = domain bound), no bound of its own
    CHECK(conj.sup_value() == inf);

    auto back = conj.conjugate();
    for (double t : {0.0, 0.5, 1.0, 1.5, 2.0})
        CHECK(back(t) == doctest::Approx(M(t)).epsilon(1e-13));
    CHECK(back(2.5) == inf);
}

TEST_CASE("constructed functions are convex on a grid") {
    ol::Rng rng(29);
    auto convex_on_grid = [](const OrliczFunction& M) {
        Grid g = Grid::log_spaced(1e-3, 50.0, 80);
        double prev_slope = -inf, prev_t = 0.0, prev_v = 0.0;
        for (double t : g.points) {
            double v = M(t);
            if (v == inf)
                break;
            double slope = (v - prev_v) / (t - prev_t);
            CHECK(slope >= prev_slope * (1.0 - 1e-9) - 1e-12);
            prev_slope = slope;
            prev_t = t;
            prev_v = v;
        }
    };
    for (int rep = 0; rep < 6; ++rep) {
        auto M = oracles::random_pl(rng);
        convex_on_grid(M);
        convex_on_grid(M.conjugate());
    }
    convex_on_grid(OrliczFunction::power(1.7));
}

TEST_CASE("duality product sandwich") {
    Grid g = Grid::log_spaced(1e-3, 1e3, 50);

    SUBCASE("t^2 attains the upper bound everywhere") {
        auto report = ol::check_duality_product(OrliczFunction::power(2.0), g);
        CHECK(report.passed);
        // M^{-1}(t) (M*)^{-1}(t) = sqrt(t) * 2 sqrt(t) = 2t
        CHECK(report.results["min_product_over_t"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(report.results["max_product_over_t"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("t^2/2 is self-conjugate with product 2t") {
        auto report = ol::check_duality_product(OrliczFunction::power(2.0, 0.5), g);
        CHECK(report.passed);
        CHECK(report.results["min_product_over_t"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("random piecewise-linear corpus") {
        ol::Rng rng(31);
        for (int rep = 0; rep < 10; ++rep) {
            auto report = ol::check_duality_product(oracles::random_pl(rng), g);
            CHECK(report.passed);
        }
    }

    SUBCASE("degenerate functions are rejected") {
        auto degenerate = OrliczFunction::power(1.0).conjugate();
        CHECK_THROWS_AS(ol::check_duality_product(degenerate, g), std::invalid_argument);
    }
}

TEST_CASE("power ratio monotonicity") {
    Grid g = Grid::log_spaced(1e-2, 1e2, 60);
    CHECK(ol::check_power_ratio_monotone(OrliczFunction::power(1.2), 1.4, g).passed);
    CHECK_FALSE(ol::check_power_ratio_monotone(OrliczFunction::power(2.0), 1.4, g).passed);
    CHECK(ol::check_power_ratio_monotone(OrliczFunction::power(1.4, 3.0), 1.4, g).passed);

    // piecewise-linear path: any convex pl grows at least linearly near 0+,
    // so M(t)/t^q with q < 1 increases there
    auto pl = OrliczFunction::piecewise_linear({{0, 0}, {1, 1}, {2, 3}});
    CHECK(ol::check_power_ratio_monotone(pl, 2.5, g).passed);
    CHECK_FALSE(ol::check_power_ratio_monotone(pl, 0.5, g).passed);
}

TEST_CASE("equivalence ratio") {
    Grid g = Grid::log_spaced(0.01, 1.0, 40);
    auto sq = OrliczFunction::power(2.0);

    auto [lo1, hi1] = ol::equivalence_ratio(sq, sq, g);
    CHECK(lo1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hi1 == doctest::Approx(1.0).epsilon(1e-14));

    // N(t) = 4 t^2 has N^{-1}(s) = sqrt(s)/2
    auto [lo2, hi2] = ol::equivalence_ratio(sq, OrliczFunction::power(2.0, 4.0), g);
    CHECK(lo2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(hi2 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("concave inverse construction") {
    SUBCASE("single sample") {
        double a1 = 0.75;
        auto built = ol::pl_from_concave_inverse({{1.0, a1}});
        CHECK(built.n_conjugate.inverse(1.0) == doctest::Approx(a1).epsilon(1e-15));
        CHECK_FALSE(built.majorized);
    }

    SUBCASE("concave data is reproduced unchanged") {
        std::vector<std::pair<double, double>> samples;
        int n = 8;
        for (int l = 1; l <= n; ++l)
            samples.push_back({double(l) / n, std::sqrt(double(l) / n)});
        auto built = ol::pl_from_concave_inverse(samples);
        CHECK_FALSE(built.majorized);
        CHECK_FALSE(built.tail_flattened);
        for (auto& [s, phi] : samples)
            CHECK(built.n_conjugate.inverse(s) == doctest::Approx(phi).epsilon(1e-13));
    }

    SUBCASE("partial means of a non-increasing sequence are already concave") {
        ol::Rng rng(37);
        for (int rep = 0; rep < 10; ++rep) {
            int n = 4 + int(rng.below(8));
            std::vector<double> d(n);
            double cur = 1.0 + rng.next_unit();
            for (int i = 0; i < n; ++i) {
                d[i] = cur;
                cur *= 0.4 + 0.6 * rng.next_unit();
            }
            std::vector<std::pair<double, double>> samples;
            double run = 0.0;
            for (int l = 1; l <= n; ++l) {
                run += d[l - 1];
                samples.push_back({double(l) / n, run / n});
            }
            auto built = ol::pl_from_concave_inverse(samples);
            CHECK_FALSE(built.majorized);
            for (auto& [s, phi] : samples)
                CHECK(built.n_conjugate.inverse(s) == doctest::Approx(phi).epsilon(1e-12));
        }
    }

    SUBCASE("non-concave samples are lifted to the majorant") {
        // middle point pulled below the chord
        auto built = ol::pl_from_concave_inverse({{1.0 / 3, 0.2}, {2.0 / 3, 0.25}, {1.0, 0.9}});
        CHECK(built.majorized);
        CHECK(built.n_conjugate.inverse(1.0) == doctest::Approx(0.9).epsilon(1e-13));
        CHECK(built.n_conjugate.inverse(1.0 / 3) >= 0.2);
    }

    SUBCASE("non-positive samples are rejected") {
        CHECK_THROWS_AS(ol::pl_from_concave_inverse({{0.5, 0.3}, {1.0, -0.1}}), std::invalid_argument);
        CHECK_THROWS_AS(ol::pl_from_concave_inverse({{0.25, 0.3}, {1.0, 0.4}}), std::invalid_argument);
    }
}

TEST_CASE("grammar round trip") {
    auto p = ol::parse_orlicz("power:p=1.5");
    CHECK(p.is_power());
    CHECK(p.as_power().p == 1.5);
    CHECK(p.as_power().c == 1.0);

    auto p2 = ol::parse_orlicz("power:p=2,c=0.5");
    CHECK(p2.as_power().c == 0.5);

    auto pl = ol::parse_orlicz("pl:[[0,0],[1,1],[2,3]]");
    CHECK(pl(1.5) == doctest::Approx(2.0));

    auto again = ol::parse_orlicz(ol::format_orlicz(pl));
    CHECK(again(1.2345) == doctest::Approx(pl(1.2345)).epsilon(1e-15));

    auto bounded = ol::parse_orlicz(ol::format_orlicz(OrliczFunction::power(1.0, 2.0).conjugate()));
    CHECK(bounded(1.0) == 0.0);
    CHECK(bounded(2.5) == inf);

    CHECK_THROWS_AS(ol::parse_orlicz("power:c=2"), std::invalid_argument);
    CHECK_THROWS_AS(ol::parse_orlicz("nope:1"), std::invalid_argument);
    CHECK_THROWS_AS(ol::parse_orlicz("pl:[[0,0]"), std::invalid_argument);
}

TEST_SUITE_END();
