#pragma once

// Worked examples with their known answers, shared by the solver tests,
// the parser round-trip tests and the acceptance run.

#include "support.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dopsolve::testing {

struct Golden {
    std::string name;
    std::string op;   // operator source text
    std::string rhs;  // right-hand side source text
    RealExpr expected;
};

inline void PrintTo(const Golden& g, std::ostream* os) { *os << g.name; }

inline std::vector<Golden> goldens() {
    const Rational z;
    return {
        {"non_resonant_exponential", "3*D^2 - 2*D + 8", "5*exp(3*x)", real({term(q(5, 29), 0, q(3))})},
        {"resonant_exponential", "(D-1)*(D+5)*(D-2)^3", "3*exp(2*x)", real({term(q(1, 14), 3, q(2))})},
        {"polynomial_cubic", "D^3 - 5*D^2 + 3*D + 2", "2*x^3 + 4*x^2 - 6*x + 5",
         real({term(q(1), 3), term(q(-5, 2), 2), term(q(39, 2), 1), term(q(-169, 4), 0)})},
        {"polynomial_resonant", "D^3 - 3*D^2 + 2*D", "x^3 - 2*x^2",
         real({term(q(1, 8), 4), term(q(5, 12), 3), term(q(9, 8), 2), term(q(17, 8), 1)})},
        {"trig_non_resonant", "2*D^3 + D^2 - 5*D + 3", "3*sin(2*x)",
         real({term(q(78, 677), 0, z, q(2), Trig::Cos), term(q(-3, 677), 0, z, q(2), Trig::Sin)})},
        {"trig_resonant", "(D-1)^2*(D-2)*(D^2+4)^2", "4*sin(2*x)",
         real({term(q(1, 800), 2, z, q(2), Trig::Cos), term(q(-7, 800), 2, z, q(2), Trig::Sin)})},
        {"exp_poly_non_resonant", "(D-3)^2*(D^2-2*D+5)*(D+2)", "(x^2 - 3*x + 1)*exp(2*x)",
         real({term(q(1, 20), 2, q(2)), term(q(-3, 200), 1, q(2)), term(q(119, 4000), 0, q(2))})},
        {"exp_poly_resonant", "(D-3)*(D-2)^2*(D+1)", "(4*x - 2)*exp(2*x)",
         real({term(q(-2, 9), 3, q(2)), term(q(-1, 9), 2, q(2))})},
        {"poly_trig_non_resonant", "D^2 - 4", "(x^2 - 3)*sin(2*x)",
         real({term(q(-1, 8), 1, z, q(2), Trig::Cos), term(q(13, 32), 0, z, q(2), Trig::Sin),
               term(q(-1, 8), 2, z, q(2), Trig::Sin)})},
        {"poly_trig_resonant", "D^2 + 4", "4*x^2*cos(2*x)",
         real({term(q(1, 4), 2, z, q(2), Trig::Cos), term(q(-1, 8), 1, z, q(2), Trig::Sin),
               term(q(1, 3), 3, z, q(2), Trig::Sin)})},
        {"exp_trig_non_resonant", "D^2 - 2*D + 2", "exp(2*x)*(2*cos(x) - 6*sin(x))",
         real({term(q(14, 5), 0, q(2), q(1), Trig::Cos), term(q(-2, 5), 0, q(2), q(1), Trig::Sin)})},
        {"exp_trig_resonant", "(D-1)*((D-3)^2+4)", "4*exp(3*x)*cos(2*x)",
         real({term(q(-1, 4), 1, q(3), q(2), Trig::Cos), term(q(1, 4), 1, q(3), q(2), Trig::Sin)})},
        {"exp_poly_trig_resonant", "D^2 + 2*D + 2", "exp(-x)*(3 + 2*sin(x) + 4*x^2*cos(x))",
         real({term(q(3), 0, q(-1)), term(q(-1), 1, q(-1), q(1), Trig::Cos), term(q(1), 2, q(-1), q(1), Trig::Cos),
               term(q(-1), 1, q(-1), q(1), Trig::Sin), term(q(2, 3), 3, q(-1), q(1), Trig::Sin)})},
    };
}

/// The six product-case goldens (exponential, polynomial and trig factors combined).
inline bool is_product_case(const Golden& g) {
    return g.name.rfind("exp_", 0) == 0 || g.name.rfind("poly_trig", 0) == 0;
}

}  // namespace dopsolve::testing
