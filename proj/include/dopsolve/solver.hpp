#pragma once

/**
 * @file solver.hpp
 * @brief Particular solutions of P(D) y = g(x) for g in the exponential-
 *        polynomial family, plus kernels of factored operators.
 *
 * The main pipeline works one frequency at a time. With g complexified into
 * groups e^(lambda x) p_lambda(x):
 *
 *   1. shift:      P(D) e^(lambda x) = e^(lambda x) P(D + lambda)
 *   2. resonance:  P(D + lambda) = D^k R(D) with R(0) != 0
 *   3. invert:     1/R(D) truncated at deg p_lambda, exact on polynomials
 *   4. integrate:  D^-k with every integration constant set to zero
 *
 * and the groups are summed and converted back to real form. Two independent
 * closed forms (exponential input, resonant trig) are provided as
 * cross-checks; they are not used by the pipeline.
 */

#include "operator.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dopsolve {

class ZeroOperatorError : public std::invalid_argument {
public:
    ZeroOperatorError() : std::invalid_argument("the zero operator has no particular solutions") {}
};

/// Raised when the pipeline produces something that is not real for real
/// input. Signals a solver bug, never bad input.
class InternalSolverError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Truncation of 1/R(D) through D^order.
struct InverseSeries {
    std::vector<GaussianRational> coefficients;
    OperatorPoly source;
    unsigned order = 0;

    OperatorPoly as_operator() const { return OperatorPoly(coefficients); }
};

/// s_0 = 1/r_0,  s_j = -(sum_{i=1..j} r_i s_{j-i}) / r_0.
/// Requires R(0) != 0; strip powers of D first.
inline InverseSeries series_invert(const OperatorPoly& r, unsigned m) {
    if (r.coeff(0).is_zero()) throw std::invalid_argument("series_invert: R(0) must be nonzero");
    InverseSeries s;
    s.source = r;
    s.order = m;
    s.coefficients.reserve(m + 1);
    const GaussianRational r0_inv = r.coeff(0).inv();
    s.coefficients.push_back(r0_inv);
    for (unsigned j = 1; j <= m; ++j) {
        GaussianRational acc;
        for (unsigned i = 1; i <= j && i <= r.degree(); ++i) acc += r.coeff(i) * s.coefficients[j - i];
        s.coefficients.push_back(-acc * r0_inv);
    }
    return s;
}

/// k-fold antiderivative of a polynomial with zero integration constants:
/// x^j -> x^(j+k) j!/(j+k)!
inline ComplexExpr antidifferentiate(const ComplexExpr& p, unsigned k) {
    if (!p.is_polynomial()) throw std::invalid_argument("antidifferentiate: input must be a polynomial in x");
    ComplexExpr out;
    for (const auto& [m, c] : p.terms()) {
        Rational factor(1);
        for (unsigned i = 1; i <= k; ++i) factor /= Rational(static_cast<long long>(m.k + i));
        out.add_term(c * factor, m.k + k, GaussianRational());
    }
    return out;
}

/// Everything computed for one frequency lambda of the right-hand side.
struct FrequencyStep {
    GaussianRational lambda;
    ComplexExpr input;            // p_lambda(x), the polynomial part
    OperatorPoly shifted;         // P(D + lambda)
    unsigned resonance = 0;       // k
    OperatorPoly reduced;         // R(D) = P(D + lambda) / D^k
    InverseSeries series;         // 1/R(D) through D^deg(p_lambda)
    ComplexExpr pre_integration;  // series applied to p_lambda
    ComplexExpr antiderivative;   // D^-k of the above

    ComplexExpr contribution() const { return antiderivative.shifted_by(lambda); }
};

struct SolveTrace {
    OperatorPoly op;
    ComplexExpr rhs;
    std::vector<FrequencyStep> steps;

    /// Recomputes the answer from the recorded steps alone.
    ComplexExpr replay() const {
        ComplexExpr y;
        for (const auto& s : steps)
            y += antidifferentiate(apply(s.series.as_operator(), s.input), s.resonance).shifted_by(s.lambda);
        return y;
    }
};

struct ComplexSolution {
    ComplexExpr y;
    SolveTrace trace;
};

struct ParticularSolution {
    RealExpr y;
    SolveTrace trace;
};

inline FrequencyStep solve_frequency(const OperatorPoly& p, const GaussianRational& lambda, const ComplexExpr& poly) {
    FrequencyStep step;
    step.lambda = lambda;
    step.input = poly;
    step.shifted = shift(p, lambda);
    step.resonance = step.shifted.trailing_zeros();
    step.reduced = step.shifted.strip_d_power(step.resonance);
    step.series = series_invert(step.reduced, poly.x_degree());
    step.pre_integration = apply(step.series.as_operator(), poly);
    step.antiderivative = antidifferentiate(step.pre_integration, step.resonance);
    return step;
}

/// Particular solution over Q(i); works for complex P and g alike.
inline ComplexSolution solve_particular(const OperatorPoly& p, const ComplexExpr& g) {
    if (p.is_zero()) throw ZeroOperatorError();
    ComplexSolution out;
    out.trace.op = p;
    out.trace.rhs = g;
    for (const auto& [lambda, poly] : g.by_frequency()) {
        out.trace.steps.push_back(solve_frequency(p, lambda, poly));
        out.y += out.trace.steps.back().contribution();
    }
    return out;
}

/// Real particular solution of a real equation.
inline ParticularSolution solve_particular(const OperatorPoly& p, const RealExpr& g) {
    if (!p.is_real()) throw std::invalid_argument("solve_particular: real right-hand side needs a real operator");
    auto complex = solve_particular(p, to_complex(g));
    try {
        return {to_real(complex.y), std::move(complex.trace)};
    } catch (const RealizationError& e) {
        throw InternalSolverError(std::string("solution of a real equation is not real: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Closed-form cross-checks

/// A x^k e^(alpha x) / P^(k)(alpha) with k the multiplicity of alpha as a root of P.
inline ComplexExpr exponential_input(const OperatorPoly& p, const GaussianRational& a, const GaussianRational& alpha) {
    if (p.is_zero()) throw ZeroOperatorError();
    const unsigned k = multiplicity_at(p, alpha);
    const GaussianRational denom = evaluate(formal_derivative(p, k), alpha);
    return ComplexExpr::term(a / denom, k, alpha);
}

/// (D^2 + beta^2)^-k applied to cos(beta x) or sin(beta x):
///   k even:  (-1)^(k/2) x^k/(k! (2 beta)^k) times the same function
///   k = 2p+1: cos -> (-1)^p x^k sin / (k! (2 beta)^k),
///             sin -> (-1)^(p+1) x^k cos / (k! (2 beta)^k)
inline RealExpr resonant_trig_inverse(const Rational& beta, unsigned k, Trig trig) {
    if (beta.sign() <= 0) throw std::invalid_argument("resonant_trig_inverse: beta must be positive");
    if (k == 0) throw std::invalid_argument("resonant_trig_inverse: k must be positive");
    if (trig == Trig::None) throw std::invalid_argument("resonant_trig_inverse: needs cos or sin");
    Rational scale(1);
    for (unsigned i = 1; i <= k; ++i) scale /= Rational(static_cast<long long>(i)) * Rational(2) * beta;
    RealExpr out;
    const unsigned half = k / 2;
    if (k % 2 == 0) {
        if (half % 2 == 1) scale = -scale;
        out.add({scale, k, Rational(), beta, trig});
    } else if (trig == Trig::Cos) {
        if (half % 2 == 1) scale = -scale;
        out.add({scale, k, Rational(), beta, Trig::Sin});
    } else {
        if (half % 2 == 0) scale = -scale;
        out.add({scale, k, Rational(), beta, Trig::Cos});
    }
    return out;
}

/// Solves P(D) y = e^(alpha x) (A cos beta x + B sin beta x) without
/// complexifying: shift out e^(alpha x), split P = Q (D^2 + beta^2)^m,
/// invert Q through Q(D) Q(-D), which is even and therefore acts on
/// cos/sin as the scalar Q(i beta) Q(-i beta), then finish with
/// resonant_trig_inverse. Real P only.
inline RealExpr solve_trig_real_route(const OperatorPoly& p, const Rational& alpha, const Rational& beta,
                                      const Rational& a, const Rational& b) {
    if (p.is_zero()) throw ZeroOperatorError();
    if (!p.is_real()) throw std::invalid_argument("solve_trig_real_route: operator must be real");
    if (beta.sign() <= 0) throw std::invalid_argument("solve_trig_real_route: beta must be positive");

    const OperatorPoly shifted = shift(p, GaussianRational(alpha));
    const OperatorPoly resonant_factor = OperatorPoly::quadratic(Rational(), beta);
    OperatorPoly q = shifted;
    unsigned m = 0;
    for (;;) {
        auto [quot, rem] = divmod(q, resonant_factor);
        if (!rem.is_zero()) break;
        q = std::move(quot);
        ++m;
    }

    // Q(-D) applied to a cos + b sin, using D(u cos + v sin) = beta (v cos - u sin).
    Rational cos_part;
    Rational sin_part;
    Rational u = a;
    Rational v = b;
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) {
        Rational c = q.coeffs()[j].re();
        if (j % 2 == 1) c = -c;
        cos_part += c * u;
        sin_part += c * v;
        Rational nu = beta * v;
        Rational nv = -beta * u;
        u = std::move(nu);
        v = std::move(nv);
    }
    // Q(D) Q(-D) at D^2 = -beta^2 is |Q(i beta)|^2.
    const Rational scalar = evaluate(q, GaussianRational(Rational(), beta)).norm();
    cos_part /= scalar;
    sin_part /= scalar;

    RealExpr inner;
    if (m == 0) {
        inner.add({cos_part, 0, Rational(), beta, Trig::Cos});
        inner.add({sin_part, 0, Rational(), beta, Trig::Sin});
    } else {
        const RealExpr from_cos = resonant_trig_inverse(beta, m, Trig::Cos);
        const RealExpr from_sin = resonant_trig_inverse(beta, m, Trig::Sin);
        for (RealTerm t : from_cos.terms()) {
            t.coeff *= cos_part;
            inner.add(std::move(t));
        }
        for (RealTerm t : from_sin.terms()) {
            t.coeff *= sin_part;
            inner.add(std::move(t));
        }
    }
    RealExpr out;
    for (RealTerm t : inner.terms()) {
        t.alpha += alpha;
        out.add(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kernels

struct KernelBasis {
    std::vector<RealExpr> elements;

    std::size_t size() const { return elements.size(); }
    /// "C1", "C2", ... matching elements by position.
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < elements.size(); ++i) out.push_back("C" + std::to_string(i + 1));
        return out;
    }
};

/// (D - r)^m       -> x^j e^(rx),                         0 <= j < m
/// ((D-a)^2+b^2)^m -> x^j e^(ax) cos bx, x^j e^(ax) sin bx, 0 <= j < m
/// concatenated in factor order.
inline KernelBasis kernel_basis(const FactoredOperator& f) {
    KernelBasis basis;
    for (const auto& factor : f.factors) {
        for (unsigned j = 0; j < factor.multiplicity; ++j) {
            if (factor.is_linear()) {
                if (!factor.root.is_real())
                    throw std::invalid_argument("kernel_basis: linear factor with a non-real root");
                RealExpr e;
                e.add({Rational(1), j, factor.root.re(), Rational(), Trig::None});
                basis.elements.push_back(std::move(e));
            } else {
                RealExpr c;
                c.add({Rational(1), j, factor.alpha, factor.beta, Trig::Cos});
                RealExpr s;
                s.add({Rational(1), j, factor.alpha, factor.beta, Trig::Sin});
                basis.elements.push_back(std::move(c));
                basis.elements.push_back(std::move(s));
            }
        }
    }
    return basis;
}

}  // namespace dopsolve
