#include "polymap/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "polymap/errors.hpp"

namespace polymap {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::from_roots(double leading, const std::vector<double>& roots) {
    std::vector<double> c{leading};
    for (double r : roots) {
        // multiply by (y - r)
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return Polynomial(std::move(c));
}

double Polynomial::inf_norm() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Polynomial Polynomial::derivative(int order) const {
    if (order < 1) throw Error("derivative order must be >= 1");
    std::vector<double> c = coeffs_;
    for (int k = 0; k < order; ++k) {
        if (c.size() == 1) {
            c = {0.0};
            continue;
        }
        std::vector<double> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
        c = std::move(d);
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
    // Horner with polynomial coefficients.
    Polynomial acc = Polynomial::constant(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * inner + Polynomial::constant(coeffs_[i]);
    }
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<double> c(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] += rhs.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<double> c(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) c[i] -= rhs.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<double> c(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double scalar) const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v *= scalar;
    return Polynomial(std::move(c));
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ", ";
        os << coeffs_[i];
    }
    os << "]";
    return os.str();
}

std::vector<double> RootSet::values_with_multiplicity() const {
    std::vector<double> out;
    for (const auto& r : real_roots)
        for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value);
    return out;
}

namespace {

using cplx = std::complex<double>;

cplx horner(const std::vector<double>& c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

/// Cube root preserving sign for real arguments.
double real_cbrt(double x) { return std::cbrt(x); }

/// Closed-form roots of a monic cubic y^3 + p y^2 + q y + r, split on the
/// discriminant D = Q^3 + R^2 (trigonometric branch when all roots are real
/// and distinct).
std::vector<cplx> cubic_roots(double p, double q, double r) {
    const double Q = (3.0 * q - p * p) / 9.0;
    const double R = (9.0 * p * q - 27.0 * r - 2.0 * p * p * p) / 54.0;
    const double D = Q * Q * Q + R * R;
    const double shift = p / 3.0;
    std::vector<cplx> roots;
    // Scale-aware zero test for the discriminant; exact multiplicities are
    // recovered by the caller's clustering anyway.
    const double scale = std::max({std::abs(Q * Q * Q), std::abs(R * R), 1e-300});
    if (D > 1e-14 * scale) {
        const double sq = std::sqrt(D);
        const double S = real_cbrt(R + sq);
        const double T = real_cbrt(R - sq);
        roots.push_back(cplx(S + T - shift, 0.0));
        const double re = -0.5 * (S + T) - shift;
        const double im = 0.5 * std::sqrt(3.0) * (S - T);
        roots.push_back(cplx(re, im));
        roots.push_back(cplx(re, -im));
    } else if (D < -1e-14 * scale) {
        const double sqmq3 = std::sqrt(-Q * Q * Q);
        double cosarg = R / sqmq3;
        cosarg = std::clamp(cosarg, -1.0, 1.0);
        const double theta = std::acos(cosarg);
        const double amp = 2.0 * std::sqrt(-Q);
        for (int k = 0; k < 3; ++k) {
            const double ang = (theta + 2.0 * std::numbers::pi * k) / 3.0;
            roots.push_back(cplx(amp * std::cos(ang) - shift, 0.0));
        }
    } else {
        // Repeated real roots.
        const double S = real_cbrt(R);
        roots.push_back(cplx(2.0 * S - shift, 0.0));
        roots.push_back(cplx(-S - shift, 0.0));
        roots.push_back(cplx(-S - shift, 0.0));
    }
    return roots;
}

/// Aberth-Ehrlich simultaneous iteration for all roots of a monic polynomial.
std::vector<cplx> aberth_roots(const std::vector<double>& monic, double tol) {
    const int n = static_cast<int>(monic.size()) - 1;
    std::vector<double> dcoef(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) dcoef[static_cast<std::size_t>(i - 1)] = i * monic[static_cast<std::size_t>(i)];

    // Initial guesses on a circle scaled by the Cauchy bound, with an angular
    // offset so no guess starts on the real axis.
    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(monic[static_cast<std::size_t>(i)]));
    const double radius = 1.0 + bound;
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / n + 0.35;
        z[static_cast<std::size_t>(k)] = radius * cplx(std::cos(ang), std::sin(ang));
    }

    const int max_iter = 200;
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
        converged = true;
        for (int k = 0; k < n; ++k) {
            const cplx zk = z[static_cast<std::size_t>(k)];
            const cplx pv = horner(monic, zk);
            const cplx dv = horner(dcoef, zk);
            cplx w;
            if (dv == cplx(0.0, 0.0)) {
                w = cplx(tol * (1.0 + std::abs(zk)), tol);  // nudge off the exact critical point
            } else {
                w = pv / dv;
            }
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                const cplx diff = zk - z[static_cast<std::size_t>(j)];
                if (diff != cplx(0.0, 0.0)) sum += 1.0 / diff;
            }
            const cplx denom = 1.0 - w * sum;
            const cplx corr = (denom == cplx(0.0, 0.0)) ? w : w / denom;
            z[static_cast<std::size_t>(k)] = zk - corr;
            if (std::abs(corr) > tol * (1.0 + std::abs(z[static_cast<std::size_t>(k)]))) converged = false;
        }
    }

    // One Newton polish per root.
    for (auto& zk : z) {
        const cplx dv = horner(dcoef, zk);
        if (dv != cplx(0.0, 0.0)) zk -= horner(monic, zk) / dv;
    }
    return z;
}

/// Multiple roots splatter the simultaneous iteration into a star of radius
/// ~eps^(1/m). Detect them through the derivative-magnitude ladder and
/// re-polish on the (m-1)-th derivative, whose root there is simple (or at
/// least of lower multiplicity). Returns the detected multiplicity.
int refit_multiple_root(const std::vector<std::vector<double>>& derivs, int degree, cplx& z) {
    const double tau = 1e-7;
    int m = 1;
    for (; m < degree; ++m) {
        const auto& d = derivs[static_cast<std::size_t>(m)];
        double norm = 0.0;
        for (double c : d) norm = std::max(norm, std::abs(c));
        const double scale = norm * std::pow(std::max(1.0, std::abs(z)), static_cast<double>(d.size()) - 1.0);
        const double rel = std::abs(horner(d, z)) / std::max(scale, 1e-300);
        if (rel > tau) break;
    }
    if (m < 2) return 1;
    const auto& target = derivs[static_cast<std::size_t>(m - 1)];
    std::vector<double> target_d(target.size() - 1);
    for (std::size_t i = 1; i < target.size(); ++i) target_d[i - 1] = static_cast<double>(i) * target[i];
    for (int it = 0; it < 60; ++it) {
        const cplx dv = horner(target_d, z);
        if (dv == cplx(0.0, 0.0)) break;
        const cplx step = horner(target, z) / dv;
        z -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return m;
}

}  // namespace

RootSet real_roots(const Polynomial& p, double tol) {
    const int n = p.degree();
    if (n < 1) throw Error("real_roots requires degree >= 1");
    const auto& c = p.coeffs();

    std::vector<cplx> roots;
    if (n == 1) {
        roots.push_back(cplx(-c[0] / c[1], 0.0));
    } else if (n == 2) {
        const double a = c[2], b = c[1], c0 = c[0];
        const double disc = b * b - 4.0 * a * c0;
        if (disc >= 0.0) {
            // Stable quadratic formula.
            const double sq = std::sqrt(disc);
            const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            double r0 = qq / a;
            double r1 = (qq != 0.0) ? c0 / qq : -b / a - r0;
            roots.push_back(cplx(r0, 0.0));
            roots.push_back(cplx(r1, 0.0));
        } else {
            const double re = -b / (2.0 * a);
            const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
            roots.push_back(cplx(re, im));
            roots.push_back(cplx(re, -im));
        }
    }

    std::vector<int> snap_boost;
    if (n == 3) {
        roots = cubic_roots(c[2] / c[3], c[1] / c[3], c[0] / c[3]);
    } else if (n >= 4) {
        std::vector<double> monic(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i] / c.back();
        roots = aberth_roots(monic, tol);

        // derivative ladder for multiplicity refitting
        std::vector<std::vector<double>> derivs{monic};
        for (int k = 1; k < n; ++k) {
            const auto& prev = derivs.back();
            std::vector<double> d(prev.size() - 1);
            for (std::size_t i = 1; i < prev.size(); ++i) d[i - 1] = static_cast<double>(i) * prev[i];
            derivs.push_back(std::move(d));
        }
        snap_boost.assign(roots.size(), 0);
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (refit_multiple_root(derivs, n, roots[i]) >= 2) snap_boost[i] = 1;
    }

    // Snap near-real roots to the axis. Roots refitted as multiple are known
    // only to the clustering resolution, so their imaginary splatter snaps at
    // that radius too.
    std::vector<double> reals;
    std::vector<cplx> complexes;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const cplx& z = roots[i];
        double snap_tol = tol * (1.0 + std::abs(z));
        if (i < snap_boost.size() && snap_boost[i]) snap_tol = std::max(snap_tol, 1e-7 * (1.0 + std::abs(z)));
        if (std::abs(z.imag()) <= snap_tol) {
            reals.push_back(z.real());
        } else {
            complexes.push_back(z);
        }
    }
    // Non-real roots of a real polynomial come in conjugate pairs; if rounding
    // left an odd count, the straggler closest to the axis is in fact real.
    if (complexes.size() % 2 != 0) {
        auto it = std::min_element(complexes.begin(), complexes.end(),
                                   [](const cplx& a, const cplx& b) { return std::abs(a.imag()) < std::abs(b.imag()); });
        reals.push_back(it->real());
        complexes.erase(it);
    }

    std::sort(reals.begin(), reals.end());

    RootSet out;
    out.complex_pair_count = static_cast<int>(complexes.size() / 2);
    if (!reals.empty()) {
        double scale = 1.0;
        for (double r : reals) scale = std::max(scale, 1.0 + std::abs(r));
        const double cluster_tol = 1e-7 * scale;
        std::size_t i = 0;
        while (i < reals.size()) {
            std::size_t j = i + 1;
            double sum = reals[i];
            while (j < reals.size() && reals[j] - reals[j - 1] <= cluster_tol) {
                sum += reals[j];
                ++j;
            }
            out.real_roots.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
            i = j;
        }
    }

    double residual = 0.0;
    for (const auto& r : out.real_roots) residual = std::max(residual, std::abs(p(r.value)));
    out.residual = residual;

    // Residual gate: the iterative path must have actually placed the roots.
    if (n >= 4) {
        for (const auto& r : out.real_roots) {
            const double bound = 10.0 * std::max(tol, 1e-10) * p.inf_norm() * std::pow(1.0 + std::abs(r.value), n);
            if (std::abs(p(r.value)) > bound) throw NonConvergence(out.residual);
        }
    }
    return out;
}

SchwarzianValue schwarzian(const Polynomial& f, double x) {
    const Polynomial d1 = f.derivative();
    const Polynomial d2 = d1.derivative();
    const Polynomial d3 = d2.derivative();
    const double f1 = d1(x), f2 = d2(x), f3 = d3(x);
    if (f1 == 0.0) {
        if (f2 == 0.0 && f3 == 0.0) return {SchwarzianKind::Indeterminate, std::nan("")};
        return {SchwarzianKind::NegInfinity, -std::numeric_limits<double>::infinity()};
    }
    const double ratio = f2 / f1;
    const double v = f3 / f1 - 1.5 * ratio * ratio;
    if (!std::isfinite(v)) return {SchwarzianKind::NegInfinity, -std::numeric_limits<double>::infinity()};
    return {SchwarzianKind::Finite, v};
}

}  // namespace polymap
