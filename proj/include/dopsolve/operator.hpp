#pragma once

/**
 * @file operator.hpp
 * @brief Constant-coefficient operator polynomials P(D) = sum a_j D^j.
 *
 * Composition of such operators is ordinary polynomial multiplication, so
 * OperatorPoly doubles as the generic dense polynomial type over Q(i) used by
 * the series inversion and the factorizer. Coefficients are stored low to
 * high; the zero operator has no coefficients.
 */

#include "expr.hpp"

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dopsolve {

class OperatorPoly {
public:
    OperatorPoly() = default;
    explicit OperatorPoly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    OperatorPoly(std::initializer_list<GaussianRational> coeffs) : coeffs_(coeffs) { trim(); }

    static OperatorPoly constant(const GaussianRational& c) { return OperatorPoly({c}); }
    static OperatorPoly d() { return OperatorPoly({GaussianRational(0), GaussianRational(1)}); }
    /// D^n
    static OperatorPoly d_power(unsigned n) {
        std::vector<GaussianRational> c(n + 1);
        c[n] = GaussianRational(1);
        return OperatorPoly(std::move(c));
    }
    /// D - r
    static OperatorPoly linear(const GaussianRational& root) { return OperatorPoly({-root, GaussianRational(1)}); }
    /// (D - alpha)^2 + beta^2
    static OperatorPoly quadratic(const Rational& alpha, const Rational& beta) {
        return OperatorPoly({GaussianRational(alpha * alpha + beta * beta), GaussianRational(Rational(-2) * alpha),
                             GaussianRational(1)});
    }

    const std::vector<GaussianRational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; the zero operator reports 0.
    unsigned degree() const { return coeffs_.empty() ? 0 : static_cast<unsigned>(coeffs_.size() - 1); }
    const GaussianRational& leading() const { return coeffs_.back(); }

    GaussianRational coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : GaussianRational(); }

    bool is_real() const {
        for (const auto& c : coeffs_)
            if (!c.is_real()) return false;
        return true;
    }

    OperatorPoly conj() const {
        std::vector<GaussianRational> c;
        c.reserve(coeffs_.size());
        for (const auto& a : coeffs_) c.push_back(a.conj());
        return OperatorPoly(std::move(c));
    }

    /// Number of vanishing low-order coefficients, i.e. the power of D that
    /// divides this operator.
    unsigned trailing_zeros() const {
        unsigned n = 0;
        while (n < coeffs_.size() && coeffs_[n].is_zero()) ++n;
        return n;
    }

    /// Divides by D^n; the low n coefficients must be zero.
    OperatorPoly strip_d_power(unsigned n) const {
        if (n > trailing_zeros()) throw std::invalid_argument("operator is not divisible by the requested power of D");
        return OperatorPoly(std::vector<GaussianRational>(coeffs_.begin() + n, coeffs_.end()));
    }

    OperatorPoly operator-() const { return GaussianRational(-1) * *this; }

    friend OperatorPoly operator+(const OperatorPoly& a, const OperatorPoly& b) {
        std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(j) + b.coeff(j);
        return OperatorPoly(std::move(c));
    }
    friend OperatorPoly operator-(const OperatorPoly& a, const OperatorPoly& b) { return a + (-b); }

    /// Composition P(D) Q(D) is coefficient convolution.
    friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return OperatorPoly(std::move(c));
    }
    friend OperatorPoly operator*(const GaussianRational& s, const OperatorPoly& a) {
        std::vector<GaussianRational> c;
        c.reserve(a.coeffs_.size());
        for (const auto& x : a.coeffs_) c.push_back(s * x);
        return OperatorPoly(std::move(c));
    }

    OperatorPoly& operator+=(const OperatorPoly& b) { return *this = *this + b; }
    OperatorPoly& operator*=(const OperatorPoly& b) { return *this = *this * b; }

    friend bool operator==(const OperatorPoly&, const OperatorPoly&) = default;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

inline OperatorPoly op_mul(const OperatorPoly& p, const OperatorPoly& q) { return p * q; }

inline OperatorPoly pow(const OperatorPoly& p, unsigned n) {
    OperatorPoly result = OperatorPoly::constant(1);
    for (unsigned i = 0; i < n; ++i) result *= p;
    return result;
}

/// Horner evaluation P(lambda). P(D) e^(lambda x) = P(lambda) e^(lambda x).
inline GaussianRational evaluate(const OperatorPoly& p, const GaussianRational& lambda) {
    GaussianRational acc;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lambda + *it;
    return acc;
}

/// Coefficients of P(D + lambda). Satisfies
/// P(D)[e^(lambda x) f] = e^(lambda x) P(D + lambda) f.
inline OperatorPoly shift(const OperatorPoly& p, const GaussianRational& lambda) {
    if (lambda.is_zero()) return p;
    const OperatorPoly d_plus = OperatorPoly({lambda, GaussianRational(1)});
    OperatorPoly acc;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * d_plus + OperatorPoly::constant(*it);
    return acc;
}

/// sum a_j D^j f
inline ComplexExpr apply(const OperatorPoly& p, const ComplexExpr& f) {
    ComplexExpr out;
    ComplexExpr derivative = f;
    const auto& c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (derivative.is_zero()) break;
        if (!c[j].is_zero()) out += c[j] * derivative;
        if (j + 1 < c.size()) derivative = differentiate(derivative);
    }
    return out;
}

/// d/dD of the coefficient polynomial.
inline OperatorPoly formal_derivative(const OperatorPoly& p, unsigned times = 1) {
    std::vector<GaussianRational> c = p.coeffs();
    for (unsigned t = 0; t < times && !c.empty(); ++t) {
        for (std::size_t j = 1; j < c.size(); ++j) c[j - 1] = c[j] * Rational(static_cast<long long>(j));
        c.pop_back();
    }
    return OperatorPoly(std::move(c));
}

/// Largest k with (D - lambda)^k dividing P, read off as the number of
/// vanishing low-order coefficients of P(D + lambda).
inline unsigned multiplicity_at(const OperatorPoly& p, const GaussianRational& lambda) {
    if (p.is_zero()) throw std::invalid_argument("multiplicity_at: zero operator");
    return shift(p, lambda).trailing_zeros();
}

/// Euclidean division over Q(i): a = q*b + r with deg r < deg b.
inline std::pair<OperatorPoly, OperatorPoly> divmod(const OperatorPoly& a, const OperatorPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    std::vector<GaussianRational> rem = a.coeffs();
    const std::size_t db = b.degree();
    if (rem.size() <= db) return {OperatorPoly(), a};
    std::vector<GaussianRational> quot(rem.size() - db);
    const GaussianRational lead_inv = b.leading().inv();
    for (std::size_t i = rem.size(); i-- > db;) {
        GaussianRational q = rem[i] * lead_inv;
        quot[i - db] = q;
        if (q.is_zero()) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeffs()[j];
    }
    rem.resize(db);
    return {OperatorPoly(std::move(quot)), OperatorPoly(std::move(rem))};
}

/// Monic gcd over Q(i).
inline OperatorPoly poly_gcd(OperatorPoly a, OperatorPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.leading().inv() * a;
}

// ---------------------------------------------------------------------------

/// One factor over R with rational data: (D - r)^m or ((D - alpha)^2 + beta^2)^m, beta > 0.
struct OperatorFactor {
    enum class Kind { Linear, Quadratic };

    Kind kind = Kind::Linear;
    GaussianRational root;  // Linear
    Rational alpha;         // Quadratic
    Rational beta;          // Quadratic
    unsigned multiplicity = 1;

    static OperatorFactor linear(GaussianRational r, unsigned m = 1) {
        OperatorFactor f;
        f.root = std::move(r);
        f.multiplicity = m;
        return f;
    }
    static OperatorFactor quadratic(Rational a, Rational b, unsigned m = 1) {
        if (b.sign() <= 0) throw std::invalid_argument("quadratic factor needs beta > 0");
        OperatorFactor f;
        f.kind = Kind::Quadratic;
        f.alpha = std::move(a);
        f.beta = std::move(b);
        f.multiplicity = m;
        return f;
    }

    bool is_linear() const { return kind == Kind::Linear; }

    OperatorPoly base() const {
        return is_linear() ? OperatorPoly::linear(root) : OperatorPoly::quadratic(alpha, beta);
    }

    friend bool operator==(const OperatorFactor&, const OperatorFactor&) = default;
};

struct FactoredOperator {
    GaussianRational leading{1};
    std::vector<OperatorFactor> factors;

    OperatorPoly expand() const {
        OperatorPoly out = OperatorPoly::constant(leading);
        for (const auto& f : factors) out *= pow(f.base(), f.multiplicity);
        return out;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& f : factors) d += (f.is_linear() ? 1U : 2U) * f.multiplicity;
        return d;
    }

    friend bool operator==(const FactoredOperator&, const FactoredOperator&) = default;
};

}  // namespace dopsolve
