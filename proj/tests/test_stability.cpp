#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "polymap/errors.hpp"
#include "polymap/stability.hpp"

using namespace polymap;

namespace {

CanonicalMap make_canonical(int degree, int s, std::vector<double> xs) {
    CanonicalMap c;
    c.degree_n = degree;
    c.sign_s = s;
    c.nonzero_fixed_points = std::move(xs);
    return c;
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("classify hyperbolic fixed points") {
    // superstable nonzero point of the quadratic map
    CHECK(classify_fixed_point(make_canonical(2, 1, {1.0}), 1).kind == StabilityKind::Attractor);
    CHECK(classify_fixed_point(make_canonical(2, 1, {1.0}), 0).kind == StabilityKind::Repellor);
    CHECK(classify_fixed_point(make_canonical(2, 1, {-0.5}), 0).kind == StabilityKind::Attractor);
}

TEST_CASE("classify nonhyperbolic and semistable points") {
    SUBCASE("quadratic double zero is semistable from the right") {
        const StabilityClass s = classify_fixed_point(make_canonical(2, 1, {0.0}), 0);
        CHECK(s.kind == StabilityKind::SemistableRight);
        CHECK(s.multiplier == doctest::Approx(1.0));
    }
    SUBCASE("cubic double point x1 = x2 = 1 with M > 0 is semistable from the left") {
        const StabilityClass s = classify_fixed_point(make_canonical(3, 1, {1.0, 1.0}), 1);
        CHECK(s.kind == StabilityKind::SemistableLeft);
    }
    SUBCASE("cubic triple zero: stable for M < 0, unstable for M > 0") {
        CHECK(classify_fixed_point(make_canonical(3, -1, {0.0, 0.0}), 0).kind ==
              StabilityKind::NonhyperbolicStable);
        CHECK(classify_fixed_point(make_canonical(3, 1, {0.0, 0.0}), 0).kind ==
              StabilityKind::NonhyperbolicUnstable);
    }
    SUBCASE("multiplier -1 with negative Schwarzian is stable") {
        // quadratic with x1 = -2: zero point has multiplier -1, S < 0 everywhere
        const StabilityClass s = classify_fixed_point(make_canonical(2, 1, {-2.0}), 0);
        CHECK(s.kind == StabilityKind::NonhyperbolicStable);
    }
}

TEST_CASE("cqm_two_cycle") {
    SUBCASE("collapses onto the fixed point at x1 = 2") {
        auto cyc = cqm_two_cycle(2.0);
        REQUIRE(cyc.has_value());
        CHECK(cyc->points[0] == doctest::Approx(2.0));
        CHECK(cyc->points[1] == doctest::Approx(2.0));
    }
    SUBCASE("x1 = 3") {
        auto cyc = cqm_two_cycle(3.0);
        REQUIRE(cyc.has_value());
        CHECK(cyc->points[0] == doctest::Approx((5.0 + std::sqrt(5.0)) / 2.0));
        CHECK(cyc->points[1] == doctest::Approx((5.0 - std::sqrt(5.0)) / 2.0));
        CHECK(cyc->multiplier == doctest::Approx(-4.0));
    }
    SUBCASE("not real below the threshold") { CHECK(!cqm_two_cycle(1.0).has_value()); }
}

TEST_CASE("two-cycle closure and multiplier identity") {
    for (double x1 = 2.0; x1 <= 2.4; x1 += 0.02) {
        for (double sign : {1.0, -1.0}) {
            const double v = sign * x1;
            auto cyc = cqm_two_cycle(v);
            REQUIRE(cyc.has_value());
            const CanonicalMap c = make_canonical(2, 1, {v});
            CHECK(c.eval(cyc->points[0]) == doctest::Approx(cyc->points[1]).epsilon(1e-9));
            CHECK(c.eval(cyc->points[1]) == doctest::Approx(cyc->points[0]).epsilon(1e-9));
            const double mult = cycle_multiplier(c, {cyc->points[0], cyc->points[1]});
            CHECK(mult == doctest::Approx(5.0 - v * v).epsilon(1e-9));
            CHECK(cyc->multiplier == doctest::Approx(5.0 - v * v).epsilon(1e-12));
        }
    }
}

TEST_CASE("cycle_multiplier") {
    SUBCASE("singleton orbit equals the fixed point multiplier") {
        const CanonicalMap c = make_canonical(2, 1, {1.4});
        CHECK(cycle_multiplier(c, {1.4}) == doctest::Approx(multiplier_fixed(c, 1)));
    }
    SUBCASE("x1 = 2.2 two-cycle") {
        const CanonicalMap c = make_canonical(2, 1, {2.2});
        auto cyc = cqm_two_cycle(2.2);
        REQUIRE(cyc.has_value());
        CHECK(cycle_multiplier(c, {cyc->points[0], cyc->points[1]}) == doctest::Approx(0.16).epsilon(1e-9));
    }
    SUBCASE("bifurcation onset at sqrt(6)") {
        const double x1 = std::sqrt(6.0);
        const CanonicalMap c = make_canonical(2, 1, {x1});
        auto cyc = cqm_two_cycle(x1);
        REQUIRE(cyc.has_value());
        CHECK(cycle_multiplier(c, {cyc->points[0], cyc->points[1]}) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("non-closing orbit throws") {
        const CanonicalMap c = make_canonical(2, 1, {2.2});
        CHECK_THROWS_AS(cycle_multiplier(c, {0.3, 0.4}), NotACycle);
    }
}

TEST_CASE("exchange of stability at the first bifurcation value") {
    const double eps = 1e-6;
    const CanonicalMap below = make_canonical(2, 1, {2.0 - eps});
    const CanonicalMap above = make_canonical(2, 1, {2.0 + eps});
    CHECK(std::abs(multiplier_fixed(below, 1)) < 1.0);
    CHECK(std::abs(multiplier_fixed(above, 1)) > 1.0);
    auto cyc = cqm_two_cycle(2.0 + eps);
    REQUIRE(cyc.has_value());
    CHECK(cyc->multiplier < 1.0);
    CHECK(cyc->multiplier > -1.0);
}

TEST_CASE("singer_bound") {
    SUBCASE("quadratic map: one critical point") {
        CHECK(singer_bound(make_canonical(2, 1, {1.8})) == 3);
    }
    SUBCASE("cubic with two real critical points") {
        CHECK(singer_bound(make_canonical(3, 1, {2.0, -2.0})) == 4);
    }
    SUBCASE("positive Schwarzian sample is not applicable") {
        // x + x^3 has S(0) = 6 > 0 and no real critical points
        CHECK(!singer_bound(make_canonical(3, 1, {0.0, 0.0})).has_value());
    }
}

TEST_CASE("sarkovskii_precedes") {
    CHECK(sarkovskii_precedes(3, 5));
    CHECK(sarkovskii_precedes(2, 1));
    CHECK(!sarkovskii_precedes(7, 7));
    CHECK(sarkovskii_precedes(3, 1024));
    CHECK(sarkovskii_precedes(6, 4));   // 2*3 before 2^2
    CHECK(sarkovskii_precedes(12, 8));  // 4*3 before 2^3
    CHECK(!sarkovskii_precedes(4, 12));
    CHECK(sarkovskii_precedes(8, 4));
    CHECK(sarkovskii_precedes(5, 10));  // odds before 2*odds
}

TEST_CASE("sarkovskii ordering is a strict total order on 1..64") {
    for (int k = 1; k <= 64; ++k) {
        CHECK(!sarkovskii_precedes(k, k));
        for (int l = 1; l <= 64; ++l) {
            if (k == l) continue;
            CHECK(sarkovskii_precedes(k, l) != sarkovskii_precedes(l, k));  // total + antisymmetric
        }
    }
    for (int a = 1; a <= 64; ++a)
        for (int b = 1; b <= 64; ++b) {
            if (!sarkovskii_precedes(a, b)) continue;
            for (int c = 1; c <= 64; ++c)
                if (sarkovskii_precedes(b, c)) CHECK(sarkovskii_precedes(a, c));
        }
}

TEST_CASE("band tables") {
    const BandTable& quad = builtin_band_table(2);
    CHECK(quad.thresholds[0] == 2.0);
    CHECK(quad.thresholds[1] == doctest::Approx(std::sqrt(6.0)));
    const BandTable& cubic = builtin_band_table(3);
    CHECK(cubic.thresholds[0] == 2.0);
    for (std::size_t i = 1; i < quad.thresholds.size(); ++i)
        CHECK(quad.thresholds[i] > quad.thresholds[i - 1]);
    for (std::size_t i = 1; i < cubic.thresholds.size(); ++i)
        CHECK(cubic.thresholds[i] > cubic.thresholds[i - 1]);
    CHECK_THROWS_AS(builtin_band_table(4), UnsupportedDegree);
}

TEST_CASE("band_lookup") {
    const BandTable& quad = builtin_band_table(2);
    SUBCASE("type 1 inside the stability interval") {
        const RegionType t = band_lookup(quad, -1.0);
        CHECK(t.kind == RegionType::Kind::Type);
        CHECK(t.k == 1);
        CHECK(!t.boundary);
    }
    SUBCASE("type 2 between the first two thresholds") {
        const RegionType t = band_lookup(quad, -2.3);
        CHECK(t.k == 2);
    }
    SUBCASE("degree 3 table") {
        const RegionType t = band_lookup(builtin_band_table(3), -3.1);
        CHECK(t.k == 3);
    }
    SUBCASE("outside for nonnegative pdf") {
        CHECK(band_lookup(quad, 0.0).kind == RegionType::Kind::Outside);
        CHECK(band_lookup(quad, 1.5).kind == RegionType::Kind::Outside);
    }
    SUBCASE("infinity past the accumulation value") {
        CHECK(band_lookup(quad, -2.6).kind == RegionType::Kind::TypeInfinity);
    }
    SUBCASE("exact closed-form threshold belongs to the deeper band") {
        CHECK(band_lookup(quad, -2.0).k == 2);
    }
    SUBCASE("within measured uncertainty reports the lower band flagged") {
        const RegionType t = band_lookup(quad, -2.54401);  // inside b_3 +/- 5e-4
        CHECK(t.k == 3);
        CHECK(t.boundary);
    }
    SUBCASE("deeper than the last resolved threshold is flagged") {
        const RegionType t = band_lookup(quad, -2.56993);  // past b_7, short of b_inf
        CHECK(t.kind == RegionType::Kind::Type);
        CHECK(t.boundary);
    }
}

TEST_CASE("classification agrees with band membership for hyperbolic points") {
    std::mt19937_64 gen = oracles::rng(999);
    std::uniform_int_distribution<int> deg_dist(2, 4);
    std::uniform_real_distribution<double> dist(-2.5, 2.5);
    std::bernoulli_distribution coin(0.5);
    // degree 4 has no built-in table; the type-1 edge is closed-form at 2
    BandTable quartic;
    quartic.degree = 4;
    quartic.thresholds = {2.0};
    quartic.uncertainties = {0.0};
    quartic.b_inf = 1e9;
    quartic.b_inf_uncertainty = 0.0;

    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 1000; ++trial) {
        const int deg = deg_dist(gen);
        CanonicalMap c;
        c.degree_n = deg;
        c.sign_s = coin(gen) ? 1 : -1;
        for (int i = 0; i < deg - 1; ++i) c.nonzero_fixed_points.push_back(dist(gen));
        const BandTable& table = (deg == 4) ? quartic : builtin_band_table(deg);
        for (int k = 0; k < deg; ++k) {
            const double m = multiplier_fixed(c, k);
            if (std::abs(std::abs(m) - 1.0) <= 1e-6) continue;
            const StabilityClass cls = classify_fixed_point(c, k);
            const RegionType region = band_lookup(table, pdf(c, k));
            const bool is_type1 = region.kind == RegionType::Kind::Type && region.k == 1;
            CHECK((cls.kind == StabilityKind::Attractor) == is_type1);
            ++checked;
        }
    }
    CHECK(checked == 1000);
}

TEST_CASE("semistability is honored by orbits of the double-zero quadratic map") {
    const CanonicalMap c = make_canonical(2, 1, {0.0});  // g(x) = x - x^2
    SUBCASE("from the right the orbit creeps into the fixed point") {
        double x = 1e-3;
        for (int i = 0; i < 100000; ++i) x = c.eval(x);
        CHECK(x > 0.0);
        CHECK(x < 1e-4);
    }
    SUBCASE("from the left the orbit leaves (-0.1, 0.1)") {
        double x = -1e-3;
        bool left = false;
        for (int i = 0; i < 100000; ++i) {
            x = c.eval(x);
            if (std::abs(x) >= 0.1) {
                left = true;
                break;
            }
        }
        CHECK(left);
    }
}

}  // TEST_SUITE
