#pragma once

// Random generators shared by the property tests and the acceptance run.
// Everything is seeded explicitly so failures are reproducible.

#include <dopsolve/dopsolve.hpp>

#include <random>
#include <string>
#include <vector>

namespace dopsolve::testing {

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

/// p/q with |p| <= height, 1 <= q <= height.
inline Rational small_rational(Rng& rng, long long height = 5) {
    return Rational(uniform(rng, -height, height), uniform(rng, 1, height));
}

inline Rational nonzero_rational(Rng& rng, long long height = 5) {
    for (;;) {
        Rational r = small_rational(rng, height);
        if (!r.is_zero()) return r;
    }
}

inline Rational positive_rational(Rng& rng, long long height = 5) {
    return Rational(uniform(rng, 1, height), uniform(rng, 1, height));
}

inline GaussianRational small_gaussian(Rng& rng, long long height = 5) {
    return {small_rational(rng, height), small_rational(rng, height)};
}

/// A real operator built from planted roots, kept in factored form.
struct PlantedOperator {
    FactoredOperator factored;
    OperatorPoly op;
};

/// 1..max_roots distinct planted roots of height <= 5, multiplicities 1..3.
/// Non-real roots come with their conjugate, as one quadratic factor.
inline PlantedOperator random_operator(Rng& rng, unsigned max_roots = 4, unsigned max_multiplicity = 3) {
    PlantedOperator out;
    out.factored.leading = GaussianRational(nonzero_rational(rng, 4));
    const auto count = static_cast<unsigned>(uniform(rng, 1, max_roots));
    while (out.factored.factors.size() < count) {
        const auto m = static_cast<unsigned>(uniform(rng, 1, max_multiplicity));
        OperatorFactor f = uniform(rng, 0, 2) == 0
                               ? OperatorFactor::quadratic(small_rational(rng), positive_rational(rng), m)
                               : OperatorFactor::linear(GaussianRational(small_rational(rng)), m);
        bool duplicate = false;
        for (const auto& g : out.factored.factors) duplicate = duplicate || g.base() == f.base();
        if (!duplicate) out.factored.factors.push_back(f);
    }
    out.op = out.factored.expand();
    return out;
}

/// Frequencies (alpha, beta >= 0) at which the operator resonates.
inline std::vector<std::pair<Rational, Rational>> planted_frequencies(const FactoredOperator& f) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& factor : f.factors) {
        if (factor.is_linear()) {
            out.emplace_back(factor.root.re(), Rational());
        } else {
            out.emplace_back(factor.alpha, factor.beta);
        }
    }
    return out;
}

/// poly(x) e^(alpha x) trig(beta x) with deg poly <= max_degree.
inline RealExpr random_atom(Rng& rng, const Rational& alpha, const Rational& beta, unsigned max_degree = 4) {
    RealExpr out;
    const Trig trig = beta.is_zero() ? Trig::None : (uniform(rng, 0, 1) == 0 ? Trig::Cos : Trig::Sin);
    const auto degree = static_cast<unsigned>(uniform(rng, 0, max_degree));
    for (unsigned k = 0; k <= degree; ++k) {
        Rational c = k == degree ? nonzero_rational(rng, 9) : small_rational(rng, 9);
        out.add({c, k, alpha, beta, trig});
    }
    return out;
}

inline RealExpr sum(const RealExpr& a, const RealExpr& b) {
    RealExpr out = a;
    for (const auto& t : b.terms()) out.add(t);
    return out;
}

struct RandomProblem {
    PlantedOperator op;
    RealExpr rhs;
    bool resonant = false;  // some RHS frequency is a planted root
};

/// RHS of 1..3 atoms; when `resonant`, the first atom sits on a planted root.
inline RandomProblem random_problem(Rng& rng, bool resonant) {
    RandomProblem p;
    p.op = random_operator(rng);
    p.resonant = resonant;
    const auto atoms = uniform(rng, 1, 3);
    const auto planted = planted_frequencies(p.op.factored);
    for (long long a = 0; a < atoms; ++a) {
        Rational alpha;
        Rational beta;
        if (resonant && a == 0) {
            const auto& f = planted[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(planted.size()) - 1))];
            alpha = f.first;
            beta = f.second;
        } else {
            alpha = uniform(rng, 0, 2) == 0 ? Rational() : small_rational(rng, 3);
            beta = uniform(rng, 0, 1) == 0 ? Rational() : positive_rational(rng, 3);
        }
        p.rhs = sum(p.rhs, random_atom(rng, alpha, beta));
    }
    return p;
}

/// Random polynomial ComplexExpr in x of degree <= max_degree at frequency lambda.
inline ComplexExpr random_complex_expr(Rng& rng, unsigned terms = 3, unsigned max_degree = 3) {
    ComplexExpr out;
    for (unsigned i = 0; i < terms; ++i) {
        out.add_term(small_gaussian(rng, 4), static_cast<unsigned>(uniform(rng, 0, max_degree)), small_gaussian(rng, 3));
    }
    return out;
}

inline OperatorPoly random_poly(Rng& rng, unsigned max_degree = 4) {
    std::vector<GaussianRational> c;
    const auto degree = uniform(rng, 0, max_degree);
    for (long long j = 0; j <= degree; ++j) c.push_back(small_gaussian(rng, 4));
    if (c.back().is_zero()) c.back() = GaussianRational(1);
    return OperatorPoly(std::move(c));
}

inline OperatorPoly random_real_poly(Rng& rng, unsigned max_degree = 4) {
    std::vector<GaussianRational> c;
    const auto degree = uniform(rng, 0, max_degree);
    for (long long j = 0; j <= degree; ++j) c.emplace_back(small_rational(rng, 6));
    if (c.back().is_zero()) c.back() = GaussianRational(1);
    return OperatorPoly(std::move(c));
}

/// Shorthand for writing goldens: c x^k e^(alpha x) trig(beta x).
inline RealTerm term(Rational c, unsigned k, Rational alpha = {}, Rational beta = {}, Trig trig = Trig::None) {
    return {std::move(c), k, std::move(alpha), std::move(beta), trig};
}

inline RealExpr real(std::initializer_list<RealTerm> terms) {
    RealExpr out;
    for (const auto& t : terms) out.add(t);
    return out;
}

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace dopsolve::testing

namespace dopsolve {

// Readable gtest failure messages.
inline void PrintTo(const RealExpr& f, std::ostream* os) { *os << to_text(f); }
inline void PrintTo(const ComplexExpr& f, std::ostream* os) { *os << to_text(f); }
inline void PrintTo(const OperatorPoly& p, std::ostream* os) { *os << to_text(p); }

}  // namespace dopsolve
