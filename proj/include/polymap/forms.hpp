#pragma once

#include <utility>
#include <vector>

#include "polymap/polynomial.hpp"

namespace polymap {

/// A polynomial map f(y) = y + Q(y) stored through its fixed-points part Q.
/// The roots of Q are exactly the fixed points of f. Q has degree n >= 2.
struct GeneralMap {
    Polynomial q;

    int degree() const { return q.degree(); }
    /// Full map polynomial f = identity + Q.
    Polynomial map_polynomial() const { return q + Polynomial::identity(); }
    double eval(double y) const { return y + q(y); }
};

/// f(y) = y + (-1)^(n-1) s*M~ * prod_i (y - y_i), all fixed points real.
/// Fixed points are kept in ascending order, repeated according to
/// multiplicity.
struct LinearFactorsMap {
    int sign_s = 1;      // sgn(M)
    double m_tilde = 1;  // |M| > 0
    std::vector<double> fixed_points;

    int degree() const { return static_cast<int>(fixed_points.size()); }
    double eval(double y) const;
    /// Expand back to the coefficient form.
    GeneralMap to_general() const;
};

/// g(x) = x + (-1)^(n-1) s^n x prod_{i=1}^{n-1} (x - x_i). The zero fixed
/// point is implicit; x_1..x_{n-1} are the remaining fixed points.
struct CanonicalMap {
    int degree_n = 2;
    int sign_s = 1;
    std::vector<double> nonzero_fixed_points;

    double eval(double x) const;
    /// (-1)^(n-1) s^n, the sign in front of the product.
    double product_sign() const;
    /// {0, x_1, ..., x_{n-1}}.
    std::vector<double> all_fixed_points() const;
    /// Fully expanded polynomial form of g.
    Polynomial expanded() const;
};

/// The linear conjugacy y = offset + scale * x between a canonical map and
/// the linear-factors map it came from; scale = s * M~^(-1/(n-1)), offset is
/// the anchor fixed point.
struct ConjugacyTransform {
    double scale = 1.0;
    double offset = 0.0;

    double apply(double x) const { return offset + scale * x; }
    double invert(double y) const { return (y - offset) / scale; }
};

/// Build a GeneralMap from the coefficients of f itself (not of Q).
/// Throws DegenerateMap when f - identity has degree < 2.
GeneralMap from_coefficients(const Polynomial& f);

/// Factor Q over the reals. M = (-1)^(n-1) * leading(Q); s = sgn(M),
/// M~ = |M|; the fixed points are the roots of Q. Throws ComplexFixedPoints
/// when Q has non-real roots.
LinearFactorsMap to_linear_factors(const GeneralMap& g, double tol = 1e-10);

/// Conjugate to canonical form about the fixed point at `anchor_index`
/// (default: the smallest). x_i = s*M~^(1/(n-1)) * (y_i - y_anchor).
std::pair<CanonicalMap, ConjugacyTransform> to_canonical(const LinearFactorsMap& lff, int anchor_index = 0);

double canonical_eval(const CanonicalMap& c, double x);

struct ConjugacyReport {
    double max_error = 0.0;
};

/// Max over deterministic samples of |f(T(x)) - T(g(x))| / (1 + |T(x)|),
/// with x drawn from [-R, R], R = 2 + 2*max|x_i|.
ConjugacyReport verify_conjugacy(const LinearFactorsMap& lff, const CanonicalMap& c, const ConjugacyTransform& t,
                                 int sample_count = 1000);

/// Product Distance Function D_{n,k} = s^n prod_{i != k} (x_i - x_k),
/// with x_0 = 0. The fixed point x_k attracts iff D is in (-2, 0).
double pdf(const CanonicalMap& c, int k);

/// Multiplier of the fixed point x_k: g'(x_k) = 1 + D_{n,k}.
double multiplier_fixed(const CanonicalMap& c, int k);

}  // namespace polymap
