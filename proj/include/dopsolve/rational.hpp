#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational and Gaussian-rational arithmetic.
 *
 * Rational keeps numerator and denominator as arbitrary-precision integers,
 * always reduced, with the sign carried by the numerator. Zero is uniquely
 * 0/1, so structural equality is numeric equality.
 *
 * GaussianRational is a + bi over Rational, the field Q(i) where complexified
 * frequencies alpha +/- i*beta live.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dopsolve {

using Integer = boost::multiprecision::cpp_int;

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

class Rational {
    Integer num_{0};
    Integer den_{1};

    void normalize() {
        if (den_ == 0) throw DivisionByZero();
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

public:
    Rational() = default;
    Rational(int n) : num_(n) {}  // NOLINT: implicit by design of a number type
    Rational(long n) : num_(n) {}
    Rational(long long n) : num_(n) {}
    Rational(Integer n) : num_(std::move(n)) {}
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    /// Parses "a", "a/b", or a terminating decimal such as "-0.25".
    static Rational parse(std::string_view s);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    explicit operator double() const {
        // cpp_int -> double conversion of huge values saturates to inf; the
        // ratio of two huge values still needs to be finite, so go through the
        // exact rational type when either side is large.
        if (boost::multiprecision::msb(boost::multiprecision::abs(num_) + 1) < 1000 &&
            boost::multiprecision::msb(den_) < 1000) {
            return num_.convert_to<double>() / den_.convert_to<double>();
        }
        boost::multiprecision::cpp_rational q(num_, den_);
        return q.convert_to<double>();
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return Rational(a.num_ - b.num_, a.den_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_zero() || b.is_zero()) return Rational();
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZero();
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    Rational reciprocal() const {
        if (is_zero()) throw DivisionByZero();
        return Rational(den_, num_);
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        Integer lhs = a.num_ * b.den_;
        Integer rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "5", "-91/16".
    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }
    /// Always "n/d", including "3/1".
    std::string fraction_str() const { return num_.str() + "/" + den_.str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }
};

inline Rational Rational::parse(std::string_view s) {
    auto fail = [&] { return std::invalid_argument("not a rational literal: '" + std::string(s) + "'"); };
    if (s.empty()) throw fail();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto n = s.substr(0, slash);
        auto d = s.substr(slash + 1);
        if (n.empty() || d.empty()) throw fail();
        return parse(n) / parse(d);
    }
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        i = 1;
    }
    Integer digits = 0;
    Integer scale = 1;
    bool seen_point = false;
    bool seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
        seen_digit = true;
        digits = digits * 10 + (c - '0');
        if (seen_point) scale *= 10;
    }
    if (!seen_digit) throw fail();
    return Rational(negative ? Integer(-digits) : digits, scale);
}

class GaussianRational {
    Rational re_;
    Rational im_;

public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
    GaussianRational(int re) : re_(re) {}                   // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inv() const {
        if (is_zero()) throw DivisionByZero();
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational operator-() const { return {-re_, -im_}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        if (a.im_.is_zero() && b.im_.is_zero()) return {a.re_ * b.re_, Rational()};
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.im_.is_zero()) {
            if (b.re_.is_zero()) throw DivisionByZero();
            return {a.re_ / b.re_, a.im_ / b.re_};
        }
        return a * b.inv();
    }

    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

    /// Lexicographic (re, im); used only for deterministic term ordering.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        if (auto c = a.re_ <=> b.re_; c != 0) return c;
        return a.im_ <=> b.im_;
    }

    /// Wire form "3/1+2/1i".
    std::string str() const {
        std::string s = re_.fraction_str();
        s += im_.sign() < 0 ? "-" : "+";
        s += im_.abs().fraction_str();
        s += "i";
        return s;
    }

    /// Human form: "3", "-i", "1/2+3i", "4i".
    std::string pretty() const {
        if (im_.is_zero()) return re_.str();
        auto im_part = [&](const Rational& v) {
            Rational a = v.abs();
            return a == Rational(1) ? std::string("i") : a.str() + "i";
        };
        if (re_.is_zero()) return (im_.sign() < 0 ? "-" : "") + im_part(im_);
        return re_.str() + (im_.sign() < 0 ? "-" : "+") + im_part(im_);
    }

    /// Parses the wire form "a/b+c/di" (also accepts plain rationals).
    static GaussianRational parse(std::string_view s);

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.pretty(); }
};

inline GaussianRational GaussianRational::parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty gaussian rational");
    if (s.back() != 'i') return GaussianRational(Rational::parse(s));
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size() - 1; i > 0; --i) {
        if (s[i] == '+' || s[i] == '-') {
            split = i;
            break;
        }
    }
    auto imag_text = [](std::string_view t) -> Rational {
        if (t.empty() || t == "+") return Rational(1);
        if (t == "-") return Rational(-1);
        return Rational::parse(t);
    };
    if (split == std::string_view::npos) return {Rational(), imag_text(s.substr(0, s.size() - 1))};
    return {Rational::parse(s.substr(0, split)), imag_text(s.substr(split, s.size() - 1 - split))};
}

inline GaussianRational pow(const GaussianRational& z, unsigned n) {
    GaussianRational result(1);
    GaussianRational base = z;
    while (n) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n) base *= base;
    }
    return result;
}

}  // namespace dopsolve
