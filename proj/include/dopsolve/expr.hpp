#pragma once

/**
 * @file expr.hpp
 * @brief The expression space: finite sums  sum c * x^k * e^(lambda x)
 *        with c, lambda in Q(i).
 *
 * This space is closed under +, * and d/dx, which makes it the single
 * canonical form for every right-hand side and every solution. Sines and
 * cosines only exist in the presentation type RealExpr; converting between
 * the two is Euler's formula.
 */

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace dopsolve {

/// Key of one monomial x^k e^(lambda x). Ordered by lambda.re, lambda.im, k.
struct Monomial {
    GaussianRational lambda;
    unsigned k = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.lambda <=> b.lambda; c != 0) return c;
        return a.k <=> b.k;
    }
};

class ComplexExpr {
public:
    using TermMap = std::map<Monomial, GaussianRational>;

    ComplexExpr() = default;

    static ComplexExpr constant(const GaussianRational& c) { return term(c, 0, GaussianRational()); }
    static ComplexExpr x_power(unsigned k) { return term(GaussianRational(1), k, GaussianRational()); }
    static ComplexExpr exponential(const GaussianRational& lambda) { return term(GaussianRational(1), 0, lambda); }
    static ComplexExpr term(const GaussianRational& c, unsigned k, const GaussianRational& lambda) {
        ComplexExpr e;
        e.add_term(c, k, lambda);
        return e;
    }

    /// Adds c * x^k e^(lambda x), pruning the entry if it cancels.
    void add_term(const GaussianRational& c, unsigned k, const GaussianRational& lambda) {
        if (c.is_zero()) return;
        Monomial key{lambda, k};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of x^k e^(lambda x); zero when absent.
    GaussianRational coeff(unsigned k, const GaussianRational& lambda) const {
        auto it = terms_.find(Monomial{lambda, k});
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// True when every term has lambda = 0.
    bool is_polynomial() const {
        for (const auto& [m, c] : terms_)
            if (!m.lambda.is_zero()) return false;
        return true;
    }

    /// Largest power of x across all terms (0 for the zero expression).
    unsigned x_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.k);
        return d;
    }

    /// Splits into e^(lambda x) * p_lambda(x) with p_lambda a polynomial
    /// (lambda = 0 terms), keyed by lambda in canonical order.
    std::map<GaussianRational, ComplexExpr> by_frequency() const {
        std::map<GaussianRational, ComplexExpr> groups;
        for (const auto& [m, c] : terms_) groups[m.lambda].add_term(c, m.k, GaussianRational());
        return groups;
    }

    /// Multiplies every term by e^(lambda x).
    ComplexExpr shifted_by(const GaussianRational& lambda) const {
        ComplexExpr out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.lambda + lambda, m.k}, c);
        return out;
    }

    ComplexExpr conj() const {
        ComplexExpr out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.lambda.conj(), m.k}, c.conj());
        return out;
    }

    /// c(k, conj lambda) == conj(c(k, lambda)) for every term.
    bool is_conjugation_symmetric() const { return conj() == *this; }

    ComplexExpr operator-() const {
        ComplexExpr out = *this;
        for (auto& [m, c] : out.terms_) c = -c;
        return out;
    }

    ComplexExpr& operator+=(const ComplexExpr& b) {
        for (const auto& [m, c] : b.terms_) add_term(c, m.k, m.lambda);
        return *this;
    }
    ComplexExpr& operator-=(const ComplexExpr& b) {
        for (const auto& [m, c] : b.terms_) add_term(-c, m.k, m.lambda);
        return *this;
    }
    friend ComplexExpr operator+(ComplexExpr a, const ComplexExpr& b) { return a += b; }
    friend ComplexExpr operator-(ComplexExpr a, const ComplexExpr& b) { return a -= b; }

    friend ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b) {
        ComplexExpr out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ca * cb, ma.k + mb.k, ma.lambda + mb.lambda);
        return out;
    }
    friend ComplexExpr operator*(const GaussianRational& s, const ComplexExpr& a) {
        if (s.is_zero()) return {};
        ComplexExpr out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
        return out;
    }
    ComplexExpr& operator*=(const ComplexExpr& b) { return *this = *this * b; }

    friend bool operator==(const ComplexExpr&, const ComplexExpr&) = default;

private:
    TermMap terms_;
};

inline ComplexExpr pow(const ComplexExpr& f, unsigned n) {
    ComplexExpr result = ComplexExpr::constant(1);
    for (unsigned i = 0; i < n; ++i) result *= f;
    return result;
}

/// D(x^k e^(lambda x)) = k x^(k-1) e^(lambda x) + lambda x^k e^(lambda x)
inline ComplexExpr differentiate(const ComplexExpr& f) {
    ComplexExpr out;
    for (const auto& [m, c] : f.terms()) {
        if (m.k > 0) out.add_term(c * Rational(static_cast<long long>(m.k)), m.k - 1, m.lambda);
        if (!m.lambda.is_zero()) out.add_term(c * m.lambda, m.k, m.lambda);
    }
    return out;
}

inline std::complex<double> to_complex_double(const GaussianRational& z) {
    return {static_cast<double>(z.re()), static_cast<double>(z.im())};
}

/// Floating-point evaluation; overflow propagates as inf/nan.
inline std::complex<double> eval_numeric(const ComplexExpr& f, double x) {
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : f.terms()) {
        sum += to_complex_double(c) * std::pow(x, static_cast<int>(m.k)) * std::exp(to_complex_double(m.lambda) * x);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Real presentation form

enum class Trig { None, Cos, Sin };

/// coeff * x^k * e^(alpha x) * trig(beta x); beta > 0 iff trig != None.
struct RealTerm {
    Rational coeff;
    unsigned k = 0;
    Rational alpha;
    Rational beta;
    Trig trig = Trig::None;

    friend bool operator==(const RealTerm&, const RealTerm&) = default;
};

/// Ordering key: alpha, beta, k, trig (cos before sin).
inline std::strong_ordering key_order(const RealTerm& a, const RealTerm& b) {
    if (auto c = a.alpha <=> b.alpha; c != 0) return c;
    if (auto c = a.beta <=> b.beta; c != 0) return c;
    if (auto c = a.k <=> b.k; c != 0) return c;
    return static_cast<int>(a.trig) <=> static_cast<int>(b.trig);
}

class RealizationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class RealExpr {
public:
    RealExpr() = default;

    /// Adds a term, folding sin(-bx) = -sin(bx), cos(-bx) = cos(bx), and
    /// merging with an existing term of the same key.
    void add(RealTerm t) {
        if (t.trig == Trig::None && !t.beta.is_zero())
            throw std::invalid_argument("real term without trig must have beta = 0");
        if (t.trig != Trig::None && t.beta.is_zero()) {
            if (t.trig == Trig::Sin) return;
            t.trig = Trig::None;
        }
        if (t.beta.sign() < 0) {
            t.beta = -t.beta;
            if (t.trig == Trig::Sin) t.coeff = -t.coeff;
        }
        if (t.coeff.is_zero()) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                                   [](const RealTerm& a, const RealTerm& b) { return key_order(a, b) < 0; });
        if (it != terms_.end() && key_order(*it, t) == 0) {
            it->coeff += t.coeff;
            if (it->coeff.is_zero()) terms_.erase(it);
            return;
        }
        terms_.insert(it, std::move(t));
    }

    const std::vector<RealTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const RealExpr&, const RealExpr&) = default;

private:
    std::vector<RealTerm> terms_;
};

/// Euler's formula: cos bx = (e^(ibx) + e^(-ibx))/2, sin bx = (e^(ibx) - e^(-ibx))/(2i).
inline ComplexExpr to_complex(const RealExpr& f) {
    ComplexExpr out;
    const Rational half(1, 2);
    for (const auto& t : f.terms()) {
        switch (t.trig) {
        case Trig::None:
            out.add_term(GaussianRational(t.coeff), t.k, GaussianRational(t.alpha));
            break;
        case Trig::Cos:
            out.add_term(GaussianRational(t.coeff * half), t.k, GaussianRational(t.alpha, t.beta));
            out.add_term(GaussianRational(t.coeff * half), t.k, GaussianRational(t.alpha, -t.beta));
            break;
        case Trig::Sin:
            out.add_term(GaussianRational(Rational(), -t.coeff * half), t.k, GaussianRational(t.alpha, t.beta));
            out.add_term(GaussianRational(Rational(), t.coeff * half), t.k, GaussianRational(t.alpha, -t.beta));
            break;
        }
    }
    return out;
}

/// Inverse of to_complex. Each conjugate pair c e^((a+ib)x) + conj(c) e^((a-ib)x)
/// becomes 2 Re(c) e^(ax) cos bx - 2 Im(c) e^(ax) sin bx.
/// Throws RealizationError when f is not conjugation-symmetric.
inline RealExpr to_real(const ComplexExpr& f) {
    RealExpr out;
    for (const auto& [m, c] : f.terms()) {
        const auto& lambda = m.lambda;
        if (lambda.im().is_zero()) {
            if (!c.is_real())
                throw RealizationError("complex coefficient " + c.pretty() + " on a real exponential");
            out.add({c.re(), m.k, lambda.re(), Rational(), Trig::None});
            continue;
        }
        if (f.coeff(m.k, lambda.conj()) != c.conj())
            throw RealizationError("term with lambda = " + lambda.pretty() + " has no conjugate partner");
        if (lambda.im().sign() < 0) continue;
        out.add({Rational(2) * c.re(), m.k, lambda.re(), lambda.im(), Trig::Cos});
        out.add({Rational(-2) * c.im(), m.k, lambda.re(), lambda.im(), Trig::Sin});
    }
    return out;
}

/// Direct real evaluation of the presentation form.
inline double eval_numeric(const RealExpr& f, double x) {
    double sum = 0.0;
    for (const auto& t : f.terms()) {
        double v = static_cast<double>(t.coeff) * std::pow(x, static_cast<int>(t.k)) *
                   std::exp(static_cast<double>(t.alpha) * x);
        double bx = static_cast<double>(t.beta) * x;
        if (t.trig == Trig::Cos) v *= std::cos(bx);
        if (t.trig == Trig::Sin) v *= std::sin(bx);
        sum += v;
    }
    return sum;
}

}  // namespace dopsolve
