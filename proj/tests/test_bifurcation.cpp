#include <cmath>
#include <cstdlib>

#include <doctest.h>

#include "oracles.hpp"
#include "polymap/bifurcation.hpp"
#include "polymap/errors.hpp"
#include "polymap/stability.hpp"

using namespace polymap;

namespace {

CanonicalFamily family_of(int degree, int s, std::vector<std::string> exprs, double lo, double hi) {
    CanonicalFamily fam;
    fam.degree = degree;
    fam.sign_s = s;
    for (const auto& e : exprs) fam.x_exprs.push_back(ParamExpr::parse(e));
    fam.domain_lo = lo;
    fam.domain_hi = hi;
    return fam;
}

int period_at(const CanonicalFamily& fam, double lam, int n_transient = 1 << 17) {
    OrbitParams params;
    params.n_transient = n_transient;
    params.n_keep = 512;
    SweepDataset data = sweep(fam, {lam, lam + 1e-9}, SeedPolicy{}, params);
    return data.points[0].attracting_period;
}

}  // namespace

TEST_SUITE("bifurcation") {

TEST_CASE("make_seeds includes the documented sources") {
    CanonicalMap c;
    c.degree_n = 2;
    c.sign_s = 1;
    c.nonzero_fixed_points = {2.2};
    const std::vector<double> seeds = make_seeds(c, SeedPolicy{});
    auto contains = [&](double v) {
        for (double s : seeds)
            if (std::abs(s - v) < 1e-12) return true;
        return false;
    };
    CHECK(contains(0.9));
    CHECK(contains(-0.01));
    CHECK(contains(1e-3));
    CHECK(contains(-1e-3));
    CHECK(contains(2.2 + 1e-3));
    CHECK(contains((2.2 + 1.0) / 2.0));  // the critical point
}

TEST_CASE("sweep of the logistic family") {
    OrbitParams params;
    params.n_transient = 1 << 15;
    params.n_keep = 256;
    const SweepDataset data = sweep(preset("logistic"), linspace(2.5, 3.2, 200), SeedPolicy{}, params);
    REQUIRE(data.points.size() == 200);

    int last_period1 = -1, first_period2 = -1;
    for (int i = 0; i < 200; ++i) {
        const SweepPoint& pt = data.points[i];
        REQUIRE(!pt.poisoned);
        if (pt.attracting_period == 1) last_period1 = i;
        if (pt.attracting_period == 2 && first_period2 < 0) first_period2 = i;
    }
    REQUIRE(last_period1 >= 0);
    REQUIRE(first_period2 >= 0);
    // single branch splits into two at lambda = 3 within the grid spacing
    const double spacing = data.grid[1] - data.grid[0];
    CHECK(data.grid[static_cast<std::size_t>(last_period1)] < 3.0 + spacing);
    CHECK(data.grid[static_cast<std::size_t>(first_period2)] > 3.0 - 2.0 * spacing);
    CHECK(data.points[0].branch_count == 1);
    CHECK(data.points[199].branch_count == 2);
}

TEST_CASE("bump family has its 2-cycle exactly on (1, 2)") {
    const CanonicalFamily fam = family_of(2, 1, {"lambda*(3-lambda)"}, 0.0, 3.0);
    CHECK(period_at(fam, 0.90) == 1);
    CHECK(period_at(fam, 1.10) == 2);
    CHECK(period_at(fam, 1.50) == 2);
    CHECK(period_at(fam, 1.90) == 2);
    CHECK(period_at(fam, 2.10) == 1);
}

TEST_CASE("quartic zero branch destabilizes at lambda = 1") {
    const CanonicalFamily fam = preset("quartic_demo");
    SeedPolicy near_zero;
    near_zero.critical_points = false;
    near_zero.appendix_seeds = false;
    near_zero.fixed_point_perturbations = false;
    near_zero.extra = {1e-3, -1e-3};
    OrbitParams params;
    params.n_transient = 1 << 16;
    params.n_keep = 128;
    const SweepDataset below = sweep(fam, {0.98}, near_zero, params);
    const SweepDataset above = sweep(fam, {1.02}, near_zero, params);
    CHECK(below.points[0].attracting_period == 1);
    CHECK(above.points[0].attracting_period == 2);
}

TEST_CASE("detected period per band (grid check)") {
    const CanonicalFamily slice = canonical_search_slice(2);
    const double b3 = 2.544;
    const double eps = 1e-3;
    // |x1| in (0, 2-eps): period 1
    CHECK(period_at(slice, 1.0) == 1);
    CHECK(period_at(slice, 2.0 - eps) == 1);
    // (2+eps, sqrt6-eps): period 2
    CHECK(period_at(slice, 2.0 + eps) == 2);
    CHECK(period_at(slice, std::sqrt(6.0) - eps) == 2);
    // (sqrt6+eps, b3-eps): period 4
    CHECK(period_at(slice, std::sqrt(6.0) + eps) == 4);
    CHECK(period_at(slice, b3 - eps) == 4);
}

TEST_CASE("sweep determinism across thread counts") {
    const CanonicalFamily fam = preset("logistic");
    const std::vector<double> grid = linspace(2.9, 3.5, 40);
    OrbitParams params;
    params.n_transient = 4096;
    params.n_keep = 64;

    setenv("POLYMAP_THREADS", "1", 1);
    const SweepDataset serial = sweep(fam, grid, SeedPolicy{}, params);
    setenv("POLYMAP_THREADS", "4", 1);
    const SweepDataset parallel = sweep(fam, grid, SeedPolicy{}, params);
    unsetenv("POLYMAP_THREADS");

    REQUIRE(serial.points.size() == parallel.points.size());
    for (std::size_t i = 0; i < serial.points.size(); ++i) {
        const SweepPoint& a = serial.points[i];
        const SweepPoint& b = parallel.points[i];
        CHECK(a.attracting_period == b.attracting_period);
        CHECK(a.branch_count == b.branch_count);
        REQUIRE(a.plotted.size() == b.plotted.size());
        for (std::size_t s = 0; s < a.plotted.size(); ++s) {
            REQUIRE(a.plotted[s].size() == b.plotted[s].size());
            for (std::size_t j = 0; j < a.plotted[s].size(); ++j)
                CHECK(a.plotted[s][j] == b.plotted[s][j]);  // bit identical
        }
    }
}

TEST_CASE("converged cycles are attracting (period consistency)") {
    OrbitParams params;
    params.n_transient = 1 << 15;
    params.n_keep = 256;
    const SweepDataset data = sweep(preset("logistic"), linspace(2.6, 3.55, 60), SeedPolicy{}, params);
    for (const SweepPoint& pt : data.points) {
        if (pt.attracting_period == 0) continue;
        for (std::size_t s = 0; s < pt.plotted.size(); ++s) {
            if (pt.seed_periods[s] == 0) continue;
            const CanonicalMap c = family_at(preset("logistic"), pt.lambda);
            const double mult = cycle_multiplier(c, pt.plotted[s], 1e-5);
            CHECK(std::abs(mult) <= 1.0 + 1e-3);
        }
    }
}

TEST_CASE("singer consistency over a sweep") {
    OrbitParams params;
    params.n_transient = 1 << 14;
    params.n_keep = 256;
    const SweepDataset data = sweep(preset("logistic"), linspace(2.6, 3.5, 30), SeedPolicy{}, params);
    for (const SweepPoint& pt : data.points) {
        const CanonicalMap c = family_at(preset("logistic"), pt.lambda);
        const auto bound = singer_bound(c);
        if (bound) CHECK(pt.distinct_cycles <= *bound);
    }
}

TEST_CASE("find_bifurcation_value closed forms") {
    const CanonicalFamily slice = canonical_search_slice(2);
    const BifurcationEstimate b1 = find_bifurcation_value(2, slice, 1, 0.0, 1.0);
    CHECK(b1.value == 2.0);
    CHECK(b1.method == BifurcationEstimate::Method::ClosedForm);
    const BifurcationEstimate b2 = find_bifurcation_value(2, slice, 2, 0.0, 1.0);
    CHECK(b2.value == std::sqrt(6.0));
    const BifurcationEstimate c1 = find_bifurcation_value(3, canonical_search_slice(3), 1, 0.0, 1.0);
    CHECK(c1.value == 2.0);
}

TEST_CASE("find_bifurcation_value by bisection, first doubling") {
    const CanonicalFamily slice = canonical_search_slice(2);
    const BifurcationEstimate est = find_bifurcation_value(2, slice, 1, 1.5, 2.5, 1e-5, true);
    CHECK(est.method == BifurcationEstimate::Method::Bisection);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(est.half_width < 1e-3);
}

TEST_CASE("find_bifurcation_value rejects bad brackets") {
    const CanonicalFamily slice = canonical_search_slice(2);
    CHECK_THROWS_AS(find_bifurcation_value(2, slice, 1, 0.5, 1.0, 1e-5, true), BracketInvalid);
    CHECK_THROWS_AS(find_bifurcation_value(2, slice, 1, 2.5, 1.5, 1e-5, true), BracketInvalid);
}

TEST_CASE("feigenbaum_predict") {
    CHECK(feigenbaum_predict(2.0, 2.0) == 2.0);
    const double predicted = feigenbaum_predict(2.0, std::sqrt(6.0));
    CHECK(predicted == doctest::Approx(2.5457).epsilon(1e-4));
    // iterating the predictor converges to roughly 2.57
    double prev = 2.0, cur = std::sqrt(6.0);
    for (int i = 0; i < 60; ++i) {
        const double next = feigenbaum_predict(prev, cur);
        prev = cur;
        cur = next;
    }
    CHECK(cur == doctest::Approx(2.572).epsilon(2e-3));
}

TEST_CASE("feigenbaum_delta") {
    SUBCASE("geometric sequence recovers the ratio") {
        std::vector<double> values;
        double gap = 1.0, v = 0.0;
        for (int i = 0; i < 6; ++i) {
            values.push_back(v);
            v += gap;
            gap /= kFeigenbaumDelta;
        }
        for (double d : feigenbaum_delta(values)) CHECK(d == doctest::Approx(kFeigenbaumDelta).epsilon(1e-12));
    }
    SUBCASE("paper-level values give a ratio near the constant") {
        const std::vector<double> b = {2.0, std::sqrt(6.0), 2.5440, 2.5642, 2.56871};
        const std::vector<double> deltas = feigenbaum_delta(b);
        // delta_3 = (b4 - b3) / (b5 - b4)
        CHECK(deltas[2] == doctest::Approx(4.7).epsilon(0.1));
    }
    SUBCASE("degenerate gap") {
        CHECK_THROWS_AS(feigenbaum_delta({1.0, 2.0, 2.0}), DegenerateGap);
    }
    SUBCASE("needs three values") {
        CHECK_THROWS_AS(feigenbaum_delta({1.0, 2.0}), Error);
    }
}

TEST_CASE("verify_period_doubling") {
    SUBCASE("zero point of x1(lambda) = lambda at lambda0 = -2") {
        const CanonicalFamily fam = family_of(2, 1, {"lambda"}, -3.0, 3.0);
        const PeriodDoublingCheck r = verify_period_doubling(fam, 0, -2.0);
        CHECK(r.verified);
    }
    SUBCASE("logistic x1 point at lambda0 = 3") {
        const PeriodDoublingCheck r = verify_period_doubling(preset("logistic"), 1, 3.0);
        CHECK(r.verified);
    }
    SUBCASE("frozen family fails the transversality condition") {
        const CanonicalFamily fam = family_of(2, 1, {"-2"}, -3.0, 3.0);
        const PeriodDoublingCheck r = verify_period_doubling(fam, 0, 0.5);
        CHECK(!r.verified);
        CHECK(r.failed_condition == 3);
    }
    SUBCASE("multiplier away from -1 fails condition 2") {
        const PeriodDoublingCheck r = verify_period_doubling(preset("logistic"), 1, 2.5);
        CHECK(!r.verified);
        CHECK(r.failed_condition == 2);
    }
}

}  // TEST_SUITE
