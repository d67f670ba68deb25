#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace polymap {

/// Dense real polynomial in one variable, coefficients stored by ascending
/// power: coeffs()[i] multiplies y^i. The representation is normalized so the
/// trailing stored coefficient is nonzero, except for the zero polynomial
/// which is stored as {0}.
class Polynomial {
  public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs)
        : Polynomial(std::vector<double>(coeffs)) {}
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c) { return Polynomial{c}; }
    static Polynomial identity() { return Polynomial{0.0, 1.0}; }
    /// leading * prod_i (y - roots[i])
    static Polynomial from_roots(double leading, const std::vector<double>& roots);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    /// Coefficient of y^i; zero beyond the degree.
    double coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(i)] : 0.0;
    }
    double leading() const { return coeffs_.back(); }
    /// Largest absolute coefficient.
    double inf_norm() const;

    /// Horner evaluation.
    double operator()(double x) const;

    /// Coefficient-wise differentiation applied `order` times (order >= 1).
    Polynomial derivative(int order = 1) const;

    /// this(inner(y)); degree multiplies.
    Polynomial compose(const Polynomial& inner) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(double scalar) const;

    std::string to_string() const;

  private:
    std::vector<double> coeffs_;
};

inline Polynomial operator*(double scalar, const Polynomial& p) { return p * scalar; }

struct RealRoot {
    double value;
    int multiplicity;
};

/// Real roots of a polynomial with multiplicities, plus the number of
/// non-real conjugate pairs. sum(multiplicities) + 2*complex_pair_count
/// equals the degree; real_roots are sorted ascending.
struct RootSet {
    std::vector<RealRoot> real_roots;
    int complex_pair_count = 0;
    /// max |p(r)| over the reported real roots.
    double residual = 0.0;

    std::vector<double> values_with_multiplicity() const;
};

/// All real roots of p (degree >= 1). Degrees 1-2 use the closed formulas,
/// degree 3 the discriminant-split closed form (trigonometric branch for
/// three distinct real roots), degree >= 4 Aberth-Ehrlich simultaneous
/// iteration followed by one Newton polish per root. Near-real roots are
/// snapped to the axis and clusters within 1e-7*(1+max|r|) are merged into
/// multiplicities. Throws NonConvergence if the iteration budget runs out.
RootSet real_roots(const Polynomial& p, double tol = 1e-10);

enum class SchwarzianKind { Finite, NegInfinity, Indeterminate };

/// Value of the Schwarzian derivative at a point. At a critical point the
/// value is -infinity (Singer's theorem admits this); if the first three
/// derivatives all vanish the quantity is genuinely indeterminate.
struct SchwarzianValue {
    SchwarzianKind kind;
    double value;  // finite value, or -inf for the NegInfinity case

    bool is_finite() const { return kind == SchwarzianKind::Finite; }
    /// True when the value is usable as "negative" in Singer-style arguments.
    bool negative() const {
        return kind == SchwarzianKind::NegInfinity || (kind == SchwarzianKind::Finite && value < 0.0);
    }
};

/// Sf(x) = f'''/f' - (3/2)(f''/f')^2.
SchwarzianValue schwarzian(const Polynomial& f, double x);

}  // namespace polymap
