#pragma once

// Verification oracles. The exact checks re-apply P(D) symbolically and
// compare canonical forms; the numeric check differentiates the real form
// with the real product rule, without the complex representation, and
// evaluates in floating point.

#include "render.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace dopsolve {

struct Verdict {
    enum class Status { Exact, Residual };

    Status status = Status::Exact;
    RealExpr residual;   // nonzero iff Residual, except for kernel size mismatches
    std::string detail;  // human-readable reason when Residual

    bool exact() const { return status == Status::Exact; }

    static Verdict make_exact() { return {}; }
    static Verdict make_residual(RealExpr r, std::string why) { return {Status::Residual, std::move(r), std::move(why)}; }
};

inline Json to_json(const Verdict& v) {
    Json j = {{"status", v.exact() ? "exact" : "residual"}};
    if (!v.exact()) {
        j["residual"] = solution_json(v.residual);
        if (!v.detail.empty()) j["detail"] = v.detail;
    }
    return j;
}

/// apply(P, Y) - g computed in complex form, converted back.
inline RealExpr residual_of(const OperatorPoly& p, const RealExpr& g, const RealExpr& y) {
    ComplexExpr r = apply(p, to_complex(y)) - to_complex(g);
    if (p.is_real()) return to_real(r);
    // A complex operator may still leave a real residual; anything else is not a real answer.
    if (!r.is_conjugation_symmetric()) throw std::invalid_argument("residual_of: complex operator gives complex residual");
    return to_real(r);
}

inline Verdict check_particular(const OperatorPoly& p, const RealExpr& g, const RealExpr& y) {
    RealExpr r = residual_of(p, g, y);
    if (r.is_zero()) return Verdict::make_exact();
    return Verdict::make_residual(std::move(r), "P(D) y - g = " + to_text(r));
}

/// Exact iff every element is annihilated and there are exactly deg P of them.
inline Verdict check_kernel(const OperatorPoly& p, const KernelBasis& basis) {
    for (const auto& e : basis.elements) {
        RealExpr r = to_real(apply(p, to_complex(e)));
        if (!r.is_zero())
            return Verdict::make_residual(std::move(r), to_text(e) + " is not annihilated");
    }
    if (basis.size() != p.degree()) {
        return Verdict::make_residual(RealExpr(), "basis has " + std::to_string(basis.size()) +
                                                      " elements, operator has degree " + std::to_string(p.degree()));
    }
    return Verdict::make_exact();
}

// ---------------------------------------------------------------------------
// Floating-point spot check

inline const std::vector<double>& standard_points() {
    static const std::vector<double> points{0.0, 0.5, -0.5, 1.0, -1.0, 1.3, -1.3, 2.7};
    return points;
}

inline constexpr double numeric_tolerance = 1e-9;

namespace detail {

using NumericKey = std::tuple<Rational, Rational, unsigned, Trig>;  // alpha, beta, k, trig
using RealForm = std::map<NumericKey, Rational>;

inline RealForm real_form(const RealExpr& f) {
    RealForm out;
    for (const auto& t : f.terms()) out[{t.alpha, t.beta, t.k, t.trig}] += t.coeff;
    return out;
}

/// d/dx of c x^k e^(ax) T(bx) by the real product rule, term by term.
inline RealForm real_derivative(const RealForm& f) {
    RealForm out;
    for (const auto& [key, c] : f) {
        const auto& [alpha, beta, k, trig] = key;
        if (k > 0) out[{alpha, beta, k - 1, trig}] += c * Rational(static_cast<long long>(k));
        if (!alpha.is_zero()) out[{alpha, beta, k, trig}] += c * alpha;
        if (trig == Trig::Cos) out[{alpha, beta, k, Trig::Sin}] -= c * beta;
        if (trig == Trig::Sin) out[{alpha, beta, k, Trig::Cos}] += c * beta;
    }
    return out;
}

inline long double float_eval(const RealForm& f, long double x) {
    long double sum = 0;
    for (const auto& [key, c] : f) {
        const auto& [alpha, beta, k, trig] = key;
        long double v = static_cast<double>(c) * std::pow(x, static_cast<long double>(k)) *
                        std::exp(static_cast<long double>(static_cast<double>(alpha)) * x);
        if (trig == Trig::Cos) v *= std::cos(static_cast<long double>(static_cast<double>(beta)) * x);
        if (trig == Trig::Sin) v *= std::sin(static_cast<long double>(static_cast<double>(beta)) * x);
        sum += v;
    }
    return sum;
}

inline bool exponent_too_large(const RealExpr& f, double x) {
    for (const auto& t : f.terms())
        if (std::abs(static_cast<double>(t.alpha) * x) > 30.0) return true;
    return false;
}

}  // namespace detail

/// max over points of |P(D)Y - g| / (1 + |g|) in floating point. P(D)Y is
/// built by the real product rule (cos/sin kept as is, no Euler form), then
/// both sides are evaluated in long double. Points where some exponent
/// |alpha x| exceeds 30 are skipped. Real P only.
inline double numeric_spot_check(const OperatorPoly& p, const RealExpr& g, const RealExpr& y,
                                 const std::vector<double>& points = standard_points()) {
    if (!p.is_real()) throw std::invalid_argument("numeric_spot_check: operator must be real");
    detail::RealForm lhs;
    detail::RealForm derivative = detail::real_form(y);
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
        if (j > 0) derivative = detail::real_derivative(derivative);
        const Rational& a = p.coeffs()[j].re();
        if (a.is_zero()) continue;
        for (const auto& [key, c] : derivative) lhs[key] += a * c;
    }
    const auto rhs = detail::real_form(g);

    double worst = 0.0;
    for (double x : points) {
        if (detail::exponent_too_large(y, x) || detail::exponent_too_large(g, x)) continue;
        const long double l = detail::float_eval(lhs, x);
        const long double r = detail::float_eval(rhs, x);
        worst = std::max(worst, static_cast<double>(std::abs(l - r) / (1 + std::abs(r))));
    }
    return worst;
}

}  // namespace dopsolve
