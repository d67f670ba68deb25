#include "polymap/forms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polymap/errors.hpp"

namespace polymap {

namespace {

double parity_sign(int n) { return (n % 2 == 0) ? -1.0 : 1.0; }  // (-1)^(n-1)

}  // namespace

double LinearFactorsMap::eval(double y) const {
    double prod = 1.0;
    for (double yi : fixed_points) prod *= (y - yi);
    return y + parity_sign(degree()) * sign_s * m_tilde * prod;
}

GeneralMap LinearFactorsMap::to_general() const {
    const double m = sign_s * m_tilde;
    Polynomial q = Polynomial::from_roots(parity_sign(degree()) * m, fixed_points);
    return GeneralMap{q};
}

double CanonicalMap::product_sign() const {
    double s_pow = (degree_n % 2 == 0) ? 1.0 : static_cast<double>(sign_s);  // s^n
    return parity_sign(degree_n) * s_pow;
}

double CanonicalMap::eval(double x) const {
    double prod = x;
    for (double xi : nonzero_fixed_points) prod *= (x - xi);
    return x + product_sign() * prod;
}

std::vector<double> CanonicalMap::all_fixed_points() const {
    std::vector<double> fps{0.0};
    fps.insert(fps.end(), nonzero_fixed_points.begin(), nonzero_fixed_points.end());
    return fps;
}

Polynomial CanonicalMap::expanded() const {
    std::vector<double> roots = all_fixed_points();
    return Polynomial::identity() + Polynomial::from_roots(product_sign(), roots);
}

GeneralMap from_coefficients(const Polynomial& f) {
    Polynomial q = f - Polynomial::identity();
    if (q.degree() < 2) throw DegenerateMap("map is affine: fixed-points polynomial has degree < 2");
    return GeneralMap{q};
}

LinearFactorsMap to_linear_factors(const GeneralMap& g, double tol) {
    const int n = g.degree();
    RootSet rs = real_roots(g.q, tol);
    if (rs.complex_pair_count > 0) throw ComplexFixedPoints(rs.complex_pair_count);
    const double m = parity_sign(n) * g.q.leading();
    LinearFactorsMap lff;
    lff.sign_s = (m >= 0.0) ? 1 : -1;
    lff.m_tilde = std::abs(m);
    lff.fixed_points = rs.values_with_multiplicity();
    return lff;
}

std::pair<CanonicalMap, ConjugacyTransform> to_canonical(const LinearFactorsMap& lff, int anchor_index) {
    const int n = lff.degree();
    if (anchor_index < 0 || anchor_index >= n) throw BadAnchor("anchor index out of range");
    const double y0 = lff.fixed_points[static_cast<std::size_t>(anchor_index)];
    const double stretch = lff.sign_s * std::pow(lff.m_tilde, 1.0 / (n - 1));

    CanonicalMap c;
    c.degree_n = n;
    c.sign_s = lff.sign_s;
    for (int i = 0; i < n; ++i) {
        if (i == anchor_index) continue;
        c.nonzero_fixed_points.push_back(stretch * (lff.fixed_points[static_cast<std::size_t>(i)] - y0));
    }

    ConjugacyTransform t;
    t.scale = lff.sign_s * std::pow(lff.m_tilde, -1.0 / (n - 1));
    t.offset = y0;
    return {c, t};
}

double canonical_eval(const CanonicalMap& c, double x) { return c.eval(x); }

ConjugacyReport verify_conjugacy(const LinearFactorsMap& lff, const CanonicalMap& c, const ConjugacyTransform& t,
                                 int sample_count) {
    double radius = 2.0;
    for (double xi : c.nonzero_fixed_points) radius = std::max(radius, 2.0 + 2.0 * std::abs(xi));

    std::mt19937_64 rng(0x706d6170u);  // fixed seed, deterministic report
    std::uniform_real_distribution<double> dist(-radius, radius);
    ConjugacyReport report;
    for (int i = 0; i < sample_count; ++i) {
        const double x = dist(rng);
        const double y = t.apply(x);
        const double err = std::abs(lff.eval(y) - t.apply(c.eval(x))) / (1.0 + std::abs(y));
        report.max_error = std::max(report.max_error, err);
    }
    return report;
}

double pdf(const CanonicalMap& c, int k) {
    const int n = c.degree_n;
    if (k < 0 || k >= n) throw IndexOutOfRange("fixed point index out of range");
    const std::vector<double> fps = c.all_fixed_points();
    const double xk = fps[static_cast<std::size_t>(k)];
    double prod = (n % 2 == 0) ? 1.0 : static_cast<double>(c.sign_s);  // s^n
    for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        prod *= (fps[static_cast<std::size_t>(i)] - xk);
    }
    return prod;
}

double multiplier_fixed(const CanonicalMap& c, int k) { return 1.0 + pdf(c, k); }

}  // namespace polymap
