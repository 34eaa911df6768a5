#pragma once

// Exact factorization of real operator polynomials into rational linear
// factors D - r and irreducible quadratics (D - a)^2 + b^2 with rational a, b.
// Succeeds iff every root lies in Q(i). Never approximates a root.

#include "operator.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace dopsolve {

class UnfactorableOverGaussianRationals : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer integer_lcm(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

/// Primitive integer coefficients proportional to a rational polynomial.
inline std::vector<Integer> primitive_integer_coeffs(const OperatorPoly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) l = integer_lcm(l, c.re().den());
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        out.push_back(c.re().num() * (l / c.re().den()));
        g = boost::multiprecision::gcd(g, out.back());
    }
    if (g > 1)
        for (auto& v : out) v /= g;
    if (!out.empty() && out.back() < 0)
        for (auto& v : out) v = -v;
    return out;
}

/// Positive divisors of |n| (n != 0), by trial division.
inline std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> small;
    std::vector<Integer> large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline bool is_perfect_square(const Integer& n, Integer& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

struct SquareFreePart {
    OperatorPoly poly;  // monic, square-free
    unsigned multiplicity;
};

/// Yun's algorithm over Q.
inline std::vector<SquareFreePart> square_free_decomposition(const OperatorPoly& monic) {
    std::vector<SquareFreePart> parts;
    if (monic.degree() == 0) return parts;
    const OperatorPoly d = formal_derivative(monic);
    const OperatorPoly a0 = poly_gcd(monic, d);
    OperatorPoly b = divmod(monic, a0).first;
    OperatorPoly c = divmod(d, a0).first;
    OperatorPoly dd = c - formal_derivative(b);
    for (unsigned i = 1; b.degree() > 0; ++i) {
        OperatorPoly a = poly_gcd(b, dd);
        b = divmod(b, a).first;
        c = divmod(dd, a).first;
        dd = c - formal_derivative(b);
        if (a.degree() > 0) parts.push_back({a.leading().inv() * a, i});
    }
    return parts;
}

struct RootSplit {
    std::vector<Rational> roots;
    std::vector<std::pair<Rational, Rational>> quadratics;  // (alpha, beta)
};

/// Splits a square-free rational polynomial; throws when a root lies outside Q(i).
inline RootSplit split_square_free(OperatorPoly p) {
    RootSplit out;
    if (p.coeff(0).is_zero()) {
        out.roots.emplace_back(0);
        p = p.strip_d_power(1);
    }
    // Rational roots p/q with p | a0, q | an.
    if (p.degree() > 0) {
        auto ints = primitive_integer_coeffs(p);
        auto num_divs = divisors(ints.front());
        auto den_divs = divisors(ints.back());
        for (const auto& q : den_divs) {
            for (const auto& n : num_divs) {
                for (int s : {1, -1}) {
                    if (p.degree() == 0) break;
                    Rational r(Integer(n * s), q);
                    if (!evaluate(p, GaussianRational(r)).is_zero()) continue;
                    if (std::find(out.roots.begin(), out.roots.end(), r) != out.roots.end()) continue;
                    out.roots.push_back(r);
                    p = divmod(p, OperatorPoly::linear(GaussianRational(r))).first;
                }
            }
        }
    }
    // Remaining roots come in conjugate pairs alpha +/- i beta; the primitive
    // quadratic q D^2 + r D + s has q | lead, s | const, r^2 < 4qs, and
    // 4qs - r^2 a perfect square.
    while (p.degree() > 0) {
        if (p.degree() == 1)
            throw UnfactorableOverGaussianRationals("operator has a root outside Q(i)");
        auto ints = primitive_integer_coeffs(p);
        bool found = false;
        for (const auto& q : divisors(ints.back())) {
            for (const auto& s : divisors(ints.front())) {
                if (ints.front() * ints.back() < 0) break;
                Integer bound = boost::multiprecision::sqrt(Integer(4 * q * s));
                for (Integer r = -bound; r <= bound && !found; ++r) {
                    Integer disc = 4 * q * s - r * r;
                    Integer root;
                    if (disc <= 0 || !is_perfect_square(disc, root)) continue;
                    OperatorPoly cand({GaussianRational(Rational(s)), GaussianRational(Rational(r)),
                                       GaussianRational(Rational(q))});
                    auto [quot, rem] = divmod(p, cand);
                    if (!rem.is_zero()) continue;
                    Rational alpha(Integer(-r), Integer(2 * q));
                    Rational beta(root, Integer(2 * q));
                    out.quadratics.emplace_back(alpha, beta);
                    p = std::move(quot);
                    found = true;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) throw UnfactorableOverGaussianRationals("operator has a root outside Q(i)");
    }
    return out;
}

}  // namespace detail

/// Complete factorization of a nonzero real operator. Linear factors come
/// first in increasing root order, then quadratics by (alpha, beta).
inline FactoredOperator factor_exact(const OperatorPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_exact: zero operator");
    if (!p.is_real()) throw std::invalid_argument("factor_exact: operator must have real coefficients");
    FactoredOperator f;
    f.leading = p.leading();
    const OperatorPoly monic = p.leading().inv() * p;
    std::vector<OperatorFactor> linear;
    std::vector<OperatorFactor> quadratic;
    for (const auto& part : detail::square_free_decomposition(monic)) {
        auto split = detail::split_square_free(part.poly);
        for (auto& r : split.roots) linear.push_back(OperatorFactor::linear(GaussianRational(r), part.multiplicity));
        for (auto& [a, b] : split.quadratics) quadratic.push_back(OperatorFactor::quadratic(a, b, part.multiplicity));
    }
    std::sort(linear.begin(), linear.end(),
              [](const OperatorFactor& a, const OperatorFactor& b) { return a.root < b.root; });
    std::sort(quadratic.begin(), quadratic.end(), [](const OperatorFactor& a, const OperatorFactor& b) {
        return a.alpha != b.alpha ? a.alpha < b.alpha : a.beta < b.beta;
    });
    f.factors = std::move(linear);
    f.factors.insert(f.factors.end(), quadratic.begin(), quadratic.end());
    return f;
}

}  // namespace dopsolve
