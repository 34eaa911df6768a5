#pragma once

/**
 * @file render.hpp
 * @brief Text, LaTeX and JSON renderings of expressions, operators and traces.
 *
 * Text output is valid parser input, so every printed answer can be fed back
 * to parse_rhs. Both text and LaTeX group terms by frequency (alpha, beta)
 * and factor out the rational content of each group, e.g.
 *
 *   3/677*(26*cos(2*x) - sin(2*x))
 *   \frac{1}{24}\left[6x^2\cos 2x+x(8x^2-3)\sin 2x\right]
 *
 * The canonical RealExpr stays flat; grouping happens here only.
 */

#include "factor.hpp"
#include "solver.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace dopsolve {

namespace detail {

/// One (alpha, beta) frequency group in real form.
struct FrequencyGroup {
    Rational alpha;
    Rational beta;
    std::map<unsigned, Rational> cos_poly;  // also the plain polynomial when beta = 0
    std::map<unsigned, Rational> sin_poly;
};

inline std::vector<FrequencyGroup> group_terms(const RealExpr& f) {
    std::vector<FrequencyGroup> groups;
    for (const auto& t : f.terms()) {
        if (groups.empty() || groups.back().alpha != t.alpha || groups.back().beta != t.beta)
            groups.push_back({t.alpha, t.beta, {}, {}});
        auto& g = groups.back();
        (t.trig == Trig::Sin ? g.sin_poly : g.cos_poly)[t.k] = t.coeff;
    }
    return groups;
}

/// Positive rational gcd of the coefficients, signed like the leading
/// coefficient of the first printed polynomial (cos, or plain, before sin).
inline Rational group_content(const FrequencyGroup& g) {
    Integer num = 0;
    Integer den = 1;
    for (const auto* poly : {&g.cos_poly, &g.sin_poly}) {
        for (const auto& [k, c] : *poly) {
            num = boost::multiprecision::gcd(num, c.num());
            den = integer_lcm(den, c.den());
        }
    }
    Rational content(num, den);
    const auto& first = g.cos_poly.empty() ? g.sin_poly : g.cos_poly;
    if (first.rbegin()->second.sign() < 0) content = -content;
    return content;
}

struct Style {
    bool latex = false;
};

inline std::string rational_text(const Rational& q, const Style& s) {
    if (!s.latex || q.is_integer()) return q.str();
    std::string out = q.sign() < 0 ? "-" : "";
    return out + "\\frac{" + q.num().str().substr(q.sign() < 0 ? 1 : 0) + "}{" + q.den().str() + "}";
}

inline std::string x_power(unsigned k, const Style& s) {
    if (k == 0) return "";
    if (k == 1) return "x";
    if (s.latex && k >= 10) return "x^{" + std::to_string(k) + "}";
    return "x^" + std::to_string(k);
}

/// "a*x" in text ("x", "-x", "1/2*x"), "ax" in LaTeX.
inline std::string rate_text(const Rational& a, const Style& s) {
    if (a == Rational(1)) return "x";
    if (a == Rational(-1)) return "-x";
    return rational_text(a, s) + (s.latex ? "x" : "*x");
}

inline std::string exp_text(const Rational& alpha, const Style& s) {
    if (alpha.is_zero()) return "";
    if (s.latex) return "e^{" + rate_text(alpha, s) + "}";
    return "exp(" + rate_text(alpha, s) + ")";
}

inline std::string trig_text(Trig trig, const Rational& beta, const Style& s) {
    if (trig == Trig::None) return "";
    const char* name = trig == Trig::Cos ? "cos" : "sin";
    if (s.latex) {
        std::string arg = beta == Rational(1) ? "x" : rational_text(beta, s) + "x";
        return std::string("\\") + name + (beta.is_integer() ? " " : "") + arg;
    }
    return std::string(name) + "(" + rate_text(beta, s) + ")";
}

/// Joins factors with '*' (text) or juxtaposition (LaTeX), skipping empties.
inline std::string product(const std::vector<std::string>& parts, const Style& s) {
    std::string out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!out.empty() && !s.latex) out += "*";
        out += p;
    }
    return out;
}

/// Coefficient c as a prefix factor: "" for 1, "-" for -1.
inline std::string coefficient_prefix(const Rational& c, const std::string& rest, const Style& s) {
    if (rest.empty()) return rational_text(c, s);
    if (c == Rational(1)) return rest;
    if (c == Rational(-1)) return "-" + rest;
    return product({rational_text(c, s), rest}, s);
}

/// Integer-coefficient polynomial, descending: "8*x^2 - 3" / "8x^2-3".
inline std::string polynomial_text(const std::map<unsigned, Rational>& poly, const Style& s) {
    std::string out;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        const auto& [k, c] = *it;
        std::string mono = coefficient_prefix(c.abs(), x_power(k, s), s);
        if (out.empty()) {
            out = (c.sign() < 0 ? "-" : "") + mono;
        } else if (s.latex) {
            out += (c.sign() < 0 ? "-" : "+") + mono;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + mono;
        }
    }
    return out;
}

inline std::string open(const Style& s, bool bracket) {
    if (!s.latex) return "(";
    return bracket ? "\\left[" : "\\left(";
}
inline std::string close(const Style& s, bool bracket) {
    if (!s.latex) return ")";
    return bracket ? "\\right]" : "\\right)";
}

/// Appends a signed summand to a running sum.
inline void append_signed(std::string& out, const std::string& term, const Style& s) {
    const bool negative = !term.empty() && term[0] == '-';
    const std::string body = negative ? term.substr(1) : term;
    if (out.empty()) {
        out = term;
    } else if (s.latex) {
        out += (negative ? "-" : "+") + body;
    } else {
        out += (negative ? " - " : " + ") + body;
    }
}

inline std::string render_group(const FrequencyGroup& g, const Style& s) {
    const Rational content = group_content(g);
    std::map<unsigned, Rational> cos_scaled;
    std::map<unsigned, Rational> sin_scaled;
    for (const auto& [k, c] : g.cos_poly) cos_scaled[k] = c / content;
    for (const auto& [k, c] : g.sin_poly) sin_scaled[k] = c / content;
    const Trig first_trig = g.beta.is_zero() ? Trig::None : Trig::Cos;
    const std::string e = exp_text(g.alpha, s);

    std::vector<std::pair<Trig, const std::map<unsigned, Rational>*>> parts;
    if (!cos_scaled.empty()) parts.emplace_back(first_trig, &cos_scaled);
    if (!sin_scaled.empty()) parts.emplace_back(Trig::Sin, &sin_scaled);

    // Every part a single monomial of one common power: c x^m e (a cos + b sin).
    bool common_monomial = true;
    const unsigned m = parts.front().second->begin()->first;
    for (const auto& [trig, poly] : parts)
        common_monomial = common_monomial && poly->size() == 1 && poly->begin()->first == m;

    if (common_monomial) {
        const std::string prefix = product({x_power(m, s), e}, s);
        if (parts.size() == 1) {
            const auto& [trig, poly] = parts.front();
            // content already carries the sign, the remaining coefficient is 1
            return coefficient_prefix(content, product({prefix, trig_text(trig, g.beta, s)}, s), s);
        }
        std::string inner;
        for (const auto& [trig, poly] : parts) {
            const Rational& c = poly->begin()->second;
            append_signed(inner, coefficient_prefix(c, trig_text(trig, g.beta, s), s), s);
        }
        return coefficient_prefix(content, product({prefix, open(s, false) + inner + close(s, false)}, s), s);
    }

    if (g.beta.is_zero()) {
        // c (poly) e^(alpha x)
        const auto& poly = *parts.front().second;
        if (e.empty() && content == Rational(1)) return polynomial_text(poly, s);
        std::string inner = open(s, false) + polynomial_text(poly, s) + close(s, false);
        return coefficient_prefix(content, product({inner, e}, s), s);
    }

    std::string inner;
    for (const auto& [trig, poly] : parts) {
        std::string term;
        if (poly->size() == 1) {
            const auto& [k, c] = *poly->begin();
            term = coefficient_prefix(c, product({x_power(k, s), trig_text(trig, g.beta, s)}, s), s);
        } else {
            const unsigned low = poly->begin()->first;
            std::map<unsigned, Rational> reduced;
            for (const auto& [k, c] : *poly) reduced[k - low] = c;
            bool flip = reduced.rbegin()->second.sign() < 0;
            if (flip)
                for (auto& [k, c] : reduced) c = -c;
            term = product({x_power(low, s), open(s, false) + polynomial_text(reduced, s) + close(s, false),
                            trig_text(trig, g.beta, s)},
                           s);
            if (s.latex) {
                // plain parentheses around the polynomial factor, as in x(8x^2-3)
                term = product({x_power(low, s), "(" + polynomial_text(reduced, s) + ")", trig_text(trig, g.beta, s)},
                               s);
            }
            if (flip) term = "-" + term;
        }
        append_signed(inner, term, s);
    }
    return coefficient_prefix(content, product({e, open(s, true) + inner + close(s, true)}, s), s);
}

inline std::string render_real(const RealExpr& f, const Style& s) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& g : group_terms(f)) append_signed(out, render_group(g, s), s);
    return out;
}

}  // namespace detail

/// Parser-compatible text, e.g. "1/14*x^3*exp(2*x)".
inline std::string to_text(const RealExpr& f) { return detail::render_real(f, {false}); }

/// amsmath-safe LaTeX, e.g. "\frac{5}{29}e^{3x}".
inline std::string to_latex(const RealExpr& f) { return detail::render_real(f, {true}); }

/// Flat text of a complex expression, for traces: "(1/2-i)*x^2*exp((2+i)*x)".
inline std::string to_text(const ComplexExpr& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::string> parts;
        std::string coeff;
        const bool complex_coeff = !c.is_real() && !c.re().is_zero();
        if (complex_coeff) {
            coeff = "(" + c.pretty() + ")";
        } else {
            coeff = c.pretty();
        }
        parts.push_back(detail::x_power(m.k, {false}));
        if (!m.lambda.is_zero()) {
            std::string rate =
                m.lambda.is_real() ? detail::rate_text(m.lambda.re(), {false}) : "(" + m.lambda.pretty() + ")*x";
            parts.push_back("exp(" + rate + ")");
        }
        std::string rest = detail::product(parts, {false});
        std::string term;
        if (rest.empty()) {
            term = coeff;
        } else if (coeff == "1") {
            term = rest;
        } else if (coeff == "-1") {
            term = "-" + rest;
        } else {
            term = coeff + "*" + rest;
        }
        detail::append_signed(out, term, {false});
    }
    return out;
}

inline std::string coefficient_text(const GaussianRational& c) {
    return c.is_real() || c.re().is_zero() ? c.pretty() : "(" + c.pretty() + ")";
}

/// "D^5 + 4*D^4 + 2*D^3 - 27*D + 20"
inline std::string to_text(const OperatorPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coeffs();
    for (std::size_t j = c.size(); j-- > 0;) {
        if (c[j].is_zero()) continue;
        std::string power = j == 0 ? "" : (j == 1 ? "D" : "D^" + std::to_string(j));
        std::string coeff = coefficient_text(c[j]);
        std::string term;
        if (power.empty()) {
            term = coeff;
        } else if (coeff == "1") {
            term = power;
        } else if (coeff == "-1") {
            term = "-" + power;
        } else {
            term = coeff + "*" + power;
        }
        detail::append_signed(out, term, {false});
    }
    return out;
}

/// "(D-1)^2*(D-2)*(D^2+4)^2"
inline std::string to_text(const FactoredOperator& f) {
    std::vector<std::string> parts;
    for (const auto& factor : f.factors) {
        std::string base;
        if (factor.is_linear()) {
            const auto& r = factor.root;
            if (r.is_zero()) {
                base = "D";
            } else {
                base = "(D" + std::string(r.re().sign() > 0 || !r.is_real() ? "-" : "+") +
                       (r.is_real() ? r.re().abs().str() : "(" + r.pretty() + ")") + ")";
            }
        } else {
            std::string shifted = factor.alpha.is_zero()
                                      ? "D^2"
                                      : "(D" + std::string(factor.alpha.sign() > 0 ? "-" : "+") +
                                            factor.alpha.abs().str() + ")^2";
            base = "(" + shifted + "+" + (factor.beta * factor.beta).str() + ")";
        }
        if (factor.multiplicity > 1) base += "^" + std::to_string(factor.multiplicity);
        parts.push_back(base);
    }
    std::string body = detail::product(parts, {false});
    if (body.empty()) return coefficient_text(f.leading);
    if (f.leading == GaussianRational(1)) return body;
    if (f.leading == GaussianRational(-1)) return "-" + body;
    return coefficient_text(f.leading) + "*" + body;
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return {{"num", q.num().str()}, {"den", q.den().str()}}; }
inline Rational rational_from_json(const Json& j) {
    return Rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

inline Json to_json(const GaussianRational& z) { return {{"re", to_json(z.re())}, {"im", to_json(z.im())}}; }
inline GaussianRational gaussian_from_json(const Json& j) {
    return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

inline const char* trig_name(Trig t) {
    switch (t) {
    case Trig::Cos: return "cos";
    case Trig::Sin: return "sin";
    default: return "none";
    }
}

inline Json to_json(const RealExpr& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        terms.push_back({{"coeff", to_json(t.coeff)},
                         {"k", t.k},
                         {"alpha", to_json(t.alpha)},
                         {"beta", to_json(t.beta)},
                         {"trig", trig_name(t.trig)}});
    }
    return terms;
}

inline RealExpr real_expr_from_json(const Json& j) {
    RealExpr out;
    for (const auto& t : j) {
        std::string trig = t.at("trig").get<std::string>();
        Trig kind = trig == "cos" ? Trig::Cos : trig == "sin" ? Trig::Sin : Trig::None;
        if (kind == Trig::None && trig != "none") throw std::invalid_argument("unknown trig '" + trig + "'");
        out.add({rational_from_json(t.at("coeff")), t.at("k").get<unsigned>(), rational_from_json(t.at("alpha")),
                 rational_from_json(t.at("beta")), kind});
    }
    return out;
}

/// Low-to-high coefficient array.
inline Json to_json(const OperatorPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.is_real() ? to_json(c.re()) : to_json(c));
    return arr;
}

/// Solution block shared by the CLI outputs.
inline Json solution_json(const RealExpr& y) {
    return {{"text", to_text(y)}, {"latex", to_latex(y)}, {"terms", to_json(y)}};
}

inline Json to_json(const SolveTrace& trace) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json series = Json::array();
        for (const auto& c : s.series.coefficients) series.push_back(c.pretty());
        steps.push_back({{"lambda", s.lambda.pretty()},
                         {"input", to_text(s.input)},
                         {"shifted_operator", to_text(s.shifted)},
                         {"resonance", s.resonance},
                         {"reduced_operator", to_text(s.reduced)},
                         {"series", series},
                         {"pre_integration", to_text(s.pre_integration)},
                         {"antiderivative", to_text(s.antiderivative)},
                         {"contribution", to_text(s.contribution())}});
    }
    return {{"operator", to_text(trace.op)}, {"rhs", to_text(trace.rhs)}, {"steps", steps}};
}

/// Numbered, human-readable trace.
inline std::string explain(const SolveTrace& trace) {
    std::string out;
    out += "Equation: (" + to_text(trace.op) + ") y = " + to_text(trace.rhs) + "\n";
    int n = 1;
    for (const auto& s : trace.steps) {
        const std::string lam = s.lambda.pretty();
        out += "Frequency lambda = " + lam + ":\n";
        out += "  " + std::to_string(n++) + ". polynomial part: " + to_text(s.input) + "\n";
        std::string shifted_arg = "D";
        if (!s.lambda.is_zero()) {
            if (!s.lambda.is_real() && !s.lambda.re().is_zero()) {
                shifted_arg += " + (" + lam + ")";
            } else {
                shifted_arg += lam[0] == '-' ? " - " + lam.substr(1) : " + " + lam;
            }
        }
        out += "  " + std::to_string(n++) + ". shift: P(" + shifted_arg + ") = " + to_text(s.shifted) + "\n";
        out += "  " + std::to_string(n++) + ". resonance order k = " + std::to_string(s.resonance) +
               ", R(D) = " + to_text(s.reduced) + "\n";
        std::string series;
        for (std::size_t j = 0; j < s.series.coefficients.size(); ++j) {
            if (j) series += ", ";
            series += s.series.coefficients[j].pretty();
        }
        out += "  " + std::to_string(n++) + ". 1/R(D) through D^" + std::to_string(s.series.order) + ": [" + series +
               "]\n";
        out += "  " + std::to_string(n++) + ". 1/R(D) applied: " + to_text(s.pre_integration) + "\n";
        out += "  " + std::to_string(n++) + ". D^-" + std::to_string(s.resonance) +
               " (zero constants): " + to_text(s.antiderivative) + "\n";
        out += "  " + std::to_string(n++) + ". contribution: " + to_text(s.contribution()) + "\n";
    }
    return out;
}

}  // namespace dopsolve
