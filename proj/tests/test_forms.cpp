#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "polymap/errors.hpp"
#include "polymap/forms.hpp"

using namespace polymap;

namespace {

Polynomial logistic_f(double lam) { return Polynomial{0.0, lam, -lam}; }  // lam*y*(1-y)

CanonicalMap make_canonical(int degree, int s, std::vector<double> xs) {
    CanonicalMap c;
    c.degree_n = degree;
    c.sign_s = s;
    c.nonzero_fixed_points = std::move(xs);
    return c;
}

/// Random canonical map with fixed points spread out enough to be distinct.
CanonicalMap random_canonical(std::mt19937_64& gen, int degree) {
    std::uniform_real_distribution<double> dist(-2.5, 2.5);
    std::bernoulli_distribution sign(0.5);
    std::vector<double> xs;
    while (static_cast<int>(xs.size()) < degree - 1) {
        const double x = dist(gen);
        bool ok = std::abs(x) > 1e-3;
        for (double other : xs) ok = ok && std::abs(x - other) > 1e-3;
        if (ok) xs.push_back(x);
    }
    return make_canonical(degree, sign(gen) ? 1 : -1, std::move(xs));
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("from_coefficients") {
    SUBCASE("logistic at lambda = 4") {
        GeneralMap g = from_coefficients(logistic_f(4.0));
        CHECK(g.degree() == 2);
        CHECK(g.q.coeff(0) == 0.0);
        CHECK(g.q.coeff(1) == 3.0);
        CHECK(g.q.coeff(2) == -4.0);
    }
    SUBCASE("cubic stated in factored form") {
        // f = y + y(y-1)(y+1) has Q = y^3 - y
        const Polynomial f = Polynomial::identity() + Polynomial::from_roots(1.0, {0.0, 1.0, -1.0});
        GeneralMap g = from_coefficients(f);
        CHECK(g.q.coeff(0) == 0.0);
        CHECK(g.q.coeff(1) == -1.0);
        CHECK(g.q.coeff(3) == 1.0);
    }
    SUBCASE("harvesting map") {
        const double r = 0.8, b = 0.1;
        GeneralMap g = from_coefficients(Polynomial{-b, 1.0 + r, -r});
        CHECK(g.q.coeff(0) == doctest::Approx(-b));
        CHECK(g.q.coeff(1) == doctest::Approx(r));
        CHECK(g.q.coeff(2) == doctest::Approx(-r));
    }
    SUBCASE("affine maps are degenerate") {
        CHECK_THROWS_AS(from_coefficients(Polynomial{1.0, 2.0}), DegenerateMap);
        CHECK_THROWS_AS(from_coefficients(Polynomial{0.0, 1.0}), DegenerateMap);
    }
}

TEST_CASE("to_linear_factors") {
    SUBCASE("logistic at lambda = 4") {
        LinearFactorsMap lff = to_linear_factors(from_coefficients(logistic_f(4.0)));
        CHECK(lff.sign_s == 1);
        CHECK(lff.m_tilde == doctest::Approx(4.0));
        REQUIRE(lff.fixed_points.size() == 2);
        CHECK(lff.fixed_points[0] == doctest::Approx(0.0));
        CHECK(lff.fixed_points[1] == doctest::Approx(0.75));
    }
    SUBCASE("odd cubic") {
        GeneralMap g{Polynomial{0, -1, 0, 1}};
        LinearFactorsMap lff = to_linear_factors(g);
        CHECK(lff.sign_s == 1);
        CHECK(lff.m_tilde == doctest::Approx(1.0));
        REQUIRE(lff.fixed_points.size() == 3);
        CHECK(lff.fixed_points[0] == doctest::Approx(-1.0));
        CHECK(lff.fixed_points[2] == doctest::Approx(1.0));
    }
    SUBCASE("complex fixed points are reported with the pair count") {
        GeneralMap g{Polynomial{1, 0, 1}};  // y^2 + 1
        CHECK_THROWS_AS(to_linear_factors(g), ComplexFixedPoints);
        try {
            to_linear_factors(g);
        } catch (const ComplexFixedPoints& e) {
            CHECK(e.pair_count == 1);
        }
    }
}

TEST_CASE("to_canonical") {
    SUBCASE("logistic anchored at zero") {
        LinearFactorsMap lff = to_linear_factors(from_coefficients(logistic_f(3.2)));
        auto [c, t] = to_canonical(lff, 0);
        REQUIRE(c.nonzero_fixed_points.size() == 1);
        CHECK(c.nonzero_fixed_points[0] == doctest::Approx(2.2));  // lambda - 1
        CHECK(t.offset == doctest::Approx(0.0));
        CHECK(t.scale == doctest::Approx(1.0 / 3.2));
    }
    SUBCASE("harvesting: x1 = sqrt(r(r-4b))") {
        const double r = 0.8, b = 0.1;
        LinearFactorsMap lff = to_linear_factors(from_coefficients(Polynomial{-b, 1.0 + r, -r}));
        auto [c, t] = to_canonical(lff, 0);  // anchor y_-
        CHECK(c.nonzero_fixed_points[0] == doctest::Approx(std::sqrt(r * (r - 4.0 * b))));
        CHECK(t.offset == doctest::Approx((1.0 - std::sqrt(1.0 - 4.0 * b / r)) / 2.0));
    }
    SUBCASE("symmetric cubic anchored at the middle fixed point") {
        LinearFactorsMap lff = to_linear_factors(GeneralMap{Polynomial{0, -1, 0, 1}});
        auto [c, t] = to_canonical(lff, 1);  // the zero root
        REQUIRE(c.nonzero_fixed_points.size() == 2);
        CHECK(c.nonzero_fixed_points[0] == doctest::Approx(-1.0));
        CHECK(c.nonzero_fixed_points[1] == doctest::Approx(1.0));
        CHECK(t.offset == doctest::Approx(0.0));
    }
    SUBCASE("bad anchor index") {
        LinearFactorsMap lff = to_linear_factors(from_coefficients(logistic_f(3.2)));
        CHECK_THROWS_AS(to_canonical(lff, 5), BadAnchor);
        CHECK_THROWS_AS(to_canonical(lff, -1), BadAnchor);
    }
}

TEST_CASE("canonical_eval") {
    const CanonicalMap cqm = make_canonical(2, 1, {2.2});
    CHECK(canonical_eval(cqm, 0.0) == 0.0);
    CHECK(canonical_eval(cqm, 2.2) == doctest::Approx(2.2));

    // two-cycle of the quadratic map with x1 = 3, verified by orbit closure
    const CanonicalMap c3 = make_canonical(2, 1, {3.0});
    const double hi = (5.0 + std::sqrt(5.0)) / 2.0;
    const double lo = (5.0 - std::sqrt(5.0)) / 2.0;
    CHECK(canonical_eval(c3, hi) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(canonical_eval(c3, lo) == doctest::Approx(hi).epsilon(1e-12));
}

TEST_CASE("verify_conjugacy") {
    SUBCASE("logistic chain") {
        LinearFactorsMap lff = to_linear_factors(from_coefficients(logistic_f(3.5)));
        auto [c, t] = to_canonical(lff, 0);
        CHECK(verify_conjugacy(lff, c, t).max_error <= 1e-9);
    }
    SUBCASE("identity transform against itself") {
        const CanonicalMap c = make_canonical(2, 1, {1.7});
        LinearFactorsMap as_lff;
        as_lff.sign_s = 1;
        as_lff.m_tilde = 1.0;
        as_lff.fixed_points = {0.0, 1.7};
        CHECK(verify_conjugacy(as_lff, c, ConjugacyTransform{1.0, 0.0}).max_error == 0.0);
    }
    SUBCASE("cubic chain") {
        LinearFactorsMap lff = to_linear_factors(GeneralMap{Polynomial{0, -1, 0, 1}});
        auto [c, t] = to_canonical(lff, 0);
        CHECK(verify_conjugacy(lff, c, t).max_error <= 1e-9);
    }
}

TEST_CASE("pdf") {
    SUBCASE("quartic example") {
        const CanonicalMap q = make_canonical(4, 1, {1.0, -1.0, 2.0});  // lambda = 1
        CHECK(pdf(q, 0) == doctest::Approx(-2.0));
        CHECK(pdf(q, 3) == doctest::Approx(-6.0));  // (0-2)(1-2)(-1-2)
    }
    SUBCASE("quadratic: D0 = x1, D1 = -x1") {
        const double lam = 3.1;
        const CanonicalMap c = make_canonical(2, 1, {lam - 1.0});
        CHECK(pdf(c, 0) == doctest::Approx(lam - 1.0));
        CHECK(pdf(c, 1) == doctest::Approx(1.0 - lam));
    }
    SUBCASE("symmetric cubic zero point") {
        const CanonicalMap c = make_canonical(3, 1, {1.0, -1.0});
        CHECK(pdf(c, 0) == doctest::Approx(-1.0));
    }
    SUBCASE("index range") {
        const CanonicalMap c = make_canonical(2, 1, {1.0});
        CHECK_THROWS_AS(pdf(c, 2), IndexOutOfRange);
        CHECK_THROWS_AS(pdf(c, -1), IndexOutOfRange);
    }
}

TEST_CASE("multiplier_fixed") {
    CHECK(multiplier_fixed(make_canonical(2, 1, {1.5}), 1) == doctest::Approx(-0.5));  // 1 - x1
    CHECK(multiplier_fixed(make_canonical(2, 1, {0.5}), 0) == doctest::Approx(1.5));   // x1 + 1
    CHECK(multiplier_fixed(make_canonical(3, 1, {1.0, -1.0}), 0) == doctest::Approx(0.0));
}

TEST_CASE("round trip general -> linear factors -> general") {
    std::mt19937_64 gen = oracles::rng(55);
    std::uniform_real_distribution<double> root_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> lead_dist(0.2, 2.0);
    std::uniform_int_distribution<int> deg_dist(2, 5);
    std::bernoulli_distribution sign(0.5);
    for (int trial = 0; trial < 50; ++trial) {
        const int deg = deg_dist(gen);
        std::vector<double> roots;
        while (static_cast<int>(roots.size()) < deg) {
            const double r = root_dist(gen);
            bool ok = true;
            for (double other : roots) ok = ok && std::abs(r - other) > 1e-2;
            if (ok) roots.push_back(r);
        }
        const double lead = (sign(gen) ? 1.0 : -1.0) * lead_dist(gen);
        const GeneralMap g{Polynomial::from_roots(lead, roots)};
        const GeneralMap back = to_linear_factors(g).to_general();
        REQUIRE(back.q.degree() == g.q.degree());
        for (int i = 0; i <= g.q.degree(); ++i) {
            const double scale = std::max(1.0, std::abs(g.q.coeff(i)));
            CHECK(std::abs(back.q.coeff(i) - g.q.coeff(i)) / scale < 1e-8);
        }
    }
}

TEST_CASE("conjugacy commutation on random maps") {
    std::mt19937_64 gen = oracles::rng(77);
    std::uniform_real_distribution<double> root_dist(-2.0, 2.0);
    std::uniform_real_distribution<double> lead_dist(0.3, 1.5);
    std::uniform_int_distribution<int> deg_dist(2, 5);
    std::bernoulli_distribution sign(0.5);
    int samples = 0;
    for (int trial = 0; trial < 100 && samples < 1000; ++trial) {
        const int deg = deg_dist(gen);
        std::vector<double> roots;
        while (static_cast<int>(roots.size()) < deg) {
            const double r = root_dist(gen);
            bool ok = true;
            for (double other : roots) ok = ok && std::abs(r - other) > 5e-2;
            if (ok) roots.push_back(r);
        }
        const GeneralMap g{Polynomial::from_roots((sign(gen) ? 1.0 : -1.0) * lead_dist(gen), roots)};
        LinearFactorsMap lff = to_linear_factors(g);
        auto [c, t] = to_canonical(lff, 0);

        std::uniform_real_distribution<double> x_dist(-2.0, 2.0);
        for (int i = 0; i < 10; ++i, ++samples) {
            const double x = x_dist(gen);
            const double y = t.apply(x);
            const double err = std::abs(lff.eval(y) - t.apply(c.eval(x)));
            CHECK(err <= 1e-8 * (1.0 + std::abs(y)));
        }
    }
    CHECK(samples == 1000);
}

TEST_CASE("multiplier equals 1 + pdf equals expanded derivative") {
    std::mt19937_64 gen = oracles::rng(99);
    std::uniform_int_distribution<int> deg_dist(2, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const CanonicalMap c = random_canonical(gen, deg_dist(gen));
        const Polynomial dg = c.expanded().derivative();
        const std::vector<double> fps = c.all_fixed_points();
        for (int k = 0; k < c.degree_n; ++k) {
            const double m = multiplier_fixed(c, k);
            CHECK(m == doctest::Approx(1.0 + pdf(c, k)).epsilon(1e-12));
            const double direct = dg(fps[static_cast<std::size_t>(k)]);
            CHECK(std::abs(m - direct) / std::max(1.0, std::abs(m)) < 1e-9);
        }
    }
}

TEST_CASE("attractivity is exactly pdf in (-2, 0)") {
    std::mt19937_64 gen = oracles::rng(123);
    std::uniform_int_distribution<int> deg_dist(2, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const CanonicalMap c = random_canonical(gen, deg_dist(gen));
        for (int k = 0; k < c.degree_n; ++k) {
            const double d = pdf(c, k);
            const double m = multiplier_fixed(c, k);
            CHECK((std::abs(m) < 1.0) == (d > -2.0 && d < 0.0));
        }
    }
}

TEST_CASE("necessary condition: odd count of fixed points below a stable one") {
    std::mt19937_64 gen = oracles::rng(321);
    std::uniform_int_distribution<int> deg_dist(2, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const CanonicalMap c = random_canonical(gen, deg_dist(gen));
        const bool applies = (c.degree_n % 2 == 0) || c.sign_s == 1;
        if (!applies) continue;
        const std::vector<double> fps = c.all_fixed_points();
        for (int k = 0; k < c.degree_n; ++k) {
            if (pdf(c, k) >= 0.0) continue;
            int below = 0;
            for (int i = 0; i < c.degree_n; ++i)
                if (i != k && fps[static_cast<std::size_t>(i)] < fps[static_cast<std::size_t>(k)]) ++below;
            CHECK(below % 2 == 1);
        }
    }
}

}  // TEST_SUITE
