#include "goldens.hpp"

#include <gtest/gtest.h>

using namespace dopsolve;
namespace dt = dopsolve::testing;
using dt::q;
using dt::real;
using dt::term;

namespace {

OperatorPoly real_coeffs(std::initializer_list<long long> low_to_high) {
    std::vector<GaussianRational> v;
    for (auto x : low_to_high) v.emplace_back(q(x));
    return OperatorPoly(std::move(v));
}

}  // namespace

TEST(ParseOperator, FactoredInputKeepsFactors) {
    const auto parsed = parse_operator("(D-1)*(D+5)*(D-2)^3");
    EXPECT_EQ(parsed.op.degree(), 5U);
    ASSERT_TRUE(parsed.factored.has_value());
    EXPECT_EQ(parsed.factored->factors,
              (std::vector<OperatorFactor>{OperatorFactor::linear(1), OperatorFactor::linear(-5), OperatorFactor::linear(2, 3)}));
    EXPECT_EQ(parsed.factored->expand(), parsed.op);
}

TEST(ParseOperator, BareD) { EXPECT_EQ(parse_operator("D").op, real_coeffs({0, 1})); }

TEST(ParseOperator, ExpandedCubic) { EXPECT_EQ(parse_operator("2*D^3 + D^2 - 5*D + 3").op, real_coeffs({3, -5, 1, 2})); }

TEST(ParseOperator, ImplicitMultiplication) {
    EXPECT_EQ(parse_operator("2D^3 + D^2 - 5D + 3").op, real_coeffs({3, -5, 1, 2}));
    EXPECT_EQ(parse_operator("(D-1)(D+1)").op, real_coeffs({-1, 0, 1}));
}

TEST(ParseOperator, QuadraticFactorsAndConstants) {
    const auto parsed = parse_operator("3*((D+3)^2+4)*(D-7)^2");
    ASSERT_TRUE(parsed.factored.has_value());
    EXPECT_EQ(parsed.factored->leading, GaussianRational(3));
    EXPECT_EQ(parsed.factored->expand(), parsed.op);
    const auto neg = parse_operator("-(D-1)^2");
    ASSERT_TRUE(neg.factored.has_value());
    EXPECT_EQ(neg.factored->leading, GaussianRational(-1));
    EXPECT_EQ(neg.factored->expand(), neg.op);
}

TEST(ParseOperator, DivisionByConstantAllowed) {
    EXPECT_EQ(parse_operator("D^2/2 + 1").op, OperatorPoly({GaussianRational(1), GaussianRational(0), GaussianRational(q(1, 2))}));
}

TEST(ParseOperator, Rejections) {
    EXPECT_THROW(parse_operator("D^2 + x"), ParseError);
    EXPECT_THROW(parse_operator("1/(D+1)"), ParseError);
    EXPECT_THROW(parse_operator("D^(1/2)"), ParseError);
    EXPECT_THROW(parse_operator("D^-1"), ParseError);
    EXPECT_THROW(parse_operator("sin(D)"), ParseError);
    EXPECT_THROW(parse_operator("D^2 +"), ParseError);
    EXPECT_THROW(parse_operator(""), ParseError);
}

TEST(ParseOperator, UnfactorableHasNoFactoredForm) {
    const auto parsed = parse_operator("D^2 - 2");
    EXPECT_EQ(parsed.op, real_coeffs({-2, 0, 1}));
    EXPECT_FALSE(parsed.factored.has_value());
}

TEST(ParseRhs, Exponential) { EXPECT_EQ(parse_rhs("3*exp(2*x)"), real({term(q(3), 0, q(2))})); }

TEST(ParseRhs, PolynomialTimesSine) {
    const auto f = parse_rhs("(x^2-3)*sin(2*x)");
    EXPECT_EQ(f.terms().size(), 2U);
    EXPECT_EQ(f, real({term(q(1), 2, q(0), q(2), Trig::Sin), term(q(-3), 0, q(0), q(2), Trig::Sin)}));
}

TEST(ParseRhs, ThreeFrequencies) {
    const auto f = parse_rhs("exp(-x)*(3 + 2*sin(x) + 4*x^2*cos(x))");
    EXPECT_EQ(to_complex(f).by_frequency().size(), 3U);
    EXPECT_EQ(f, real({term(q(3), 0, q(-1)), term(q(4), 2, q(-1), q(1), Trig::Cos), term(q(2), 0, q(-1), q(1), Trig::Sin)}));
}

TEST(ParseRhs, SynonymsAndLiterals) {
    EXPECT_EQ(parse_rhs("e^(2*x)"), parse_rhs("exp(2*x)"));
    EXPECT_EQ(parse_rhs("0.25*x"), real({term(q(1, 4), 1)}));
    EXPECT_EQ(parse_rhs("3x"), real({term(q(3), 1)}));
    EXPECT_EQ(parse_rhs("(x-1)(x+1)"), real({term(q(1), 2), term(q(-1), 0)}));
    EXPECT_EQ(parse_rhs("sin(x)^2 + cos(x)^2"), real({term(q(1), 0)}));
    EXPECT_EQ(parse_rhs("exp(x/2)"), real({term(q(1), 0, q(1, 2))}));
    EXPECT_EQ(parse_rhs("-x^2"), real({term(q(-1), 2)}));
    EXPECT_EQ(parse_rhs("x/4"), real({term(q(1, 4), 1)}));
}

TEST(ParseRhs, Rejections) {
    EXPECT_THROW(parse_rhs("sin(sqrt(2)*x)"), ParseError);
    EXPECT_THROW(parse_rhs("sin(sin(x))"), ParseError);
    EXPECT_THROW(parse_rhs("sin(pi*x)"), ParseError);
    EXPECT_THROW(parse_rhs("tan(x)"), ParseError);
    EXPECT_THROW(parse_rhs("1/x"), ParseError);
    EXPECT_THROW(parse_rhs("x^x"), ParseError);
    EXPECT_THROW(parse_rhs("exp(x^2)"), ParseError);
    EXPECT_THROW(parse_rhs("sin x"), ParseError);
    EXPECT_THROW(parse_rhs("D*x"), ParseError);
    EXPECT_THROW(parse_rhs("(x+1"), ParseError);
}

TEST(ParseErrors, ReportLineColumnExpectedAndFound) {
    try {
        parse_operator("D^2+");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_STREQ(e.what(), "1:5: expected number, identifier or '(', found end of input");
        EXPECT_FALSE(e.expected().empty());
    }
    try {
        parse_rhs("x +* 2");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("1:4: expected", 0), 0U) << e.what();
        EXPECT_NE(std::string(e.what()).find("found '*'"), std::string::npos) << e.what();
    }
}

TEST(ParseErrors, SpansLieInsideSource) {
    const std::vector<std::string> bad_rhs{"",        "x +",         "sin(sqrt(2)*x)", "sin(sin(x))", "tan(x)", "1/x",
                                           "x^x",     "exp(x^2)",    "(x+1",           "x)",          "3 $ 4",  "pi",
                                           "x^-1",    "cos(2*x",     "exp(2*x*x)",     "2..5",        "sin()",  "D"};
    for (const auto& src : bad_rhs) {
        try {
            parse_rhs(src);
            ADD_FAILURE() << "accepted " << src;
        } catch (const ParseError& e) {
            EXPECT_LE(e.span().begin, e.span().end) << src;
            EXPECT_LE(e.span().end, src.size()) << src;
        }
    }
    const std::vector<std::string> bad_ops{"D^2 + x", "1/(D+1)", "D^(1/2)", "sin(D)", "D^2 +", "(D-1", "D^", "D D)"};
    for (const auto& src : bad_ops) {
        try {
            parse_operator(src);
            ADD_FAILURE() << "accepted " << src;
        } catch (const ParseError& e) {
            EXPECT_LE(e.span().begin, e.span().end) << src;
            EXPECT_LE(e.span().end, src.size()) << src;
        }
    }
}

TEST(Tokenize, SpansTileWithoutOverlap) {
    const std::string src = "(D-1)*(D+5) * (D-2)^3 + 0.25x";
    const auto tokens = tokenize(src);
    std::size_t last_end = 0;
    for (const auto& t : tokens) {
        EXPECT_GE(t.span.begin, last_end);
        EXPECT_LE(t.span.end, src.size());
        last_end = t.span.end;
    }
    EXPECT_EQ(tokens.back().kind, TokenKind::End);
}

TEST(CoefficientList, LowOrderFirst) {
    EXPECT_EQ(parse_coefficient_list("2,-6,3,1"), real_coeffs({2, -6, 3, 1}));
    EXPECT_EQ(parse_coefficient_list(" 1/2 , 0"), OperatorPoly({GaussianRational(q(1, 2))}));
    EXPECT_THROW(parse_coefficient_list("1,,2"), ParseError);
    EXPECT_THROW(parse_coefficient_list("1,x"), ParseError);
}

// ---------------------------------------------------------------------------
// Round trips

TEST(RoundTrip, GoldenInputs) {
    for (const auto& g : dt::goldens()) {
        const auto parsed = parse_operator(g.op);
        EXPECT_EQ(parse_operator(to_text(parsed.op)).op, parsed.op) << g.name;
        if (parsed.factored) {
            const auto refactored = parse_operator(to_text(*parsed.factored));
            EXPECT_EQ(refactored.op, parsed.op) << g.name;
            ASSERT_TRUE(refactored.factored.has_value()) << g.name;
            EXPECT_EQ(*refactored.factored, *parsed.factored) << g.name;
        }
        const auto rhs = parse_rhs(g.rhs);
        EXPECT_EQ(parse_rhs(to_text(rhs)), rhs) << g.name << ": " << to_text(rhs);
        EXPECT_EQ(parse_rhs(to_text(g.expected)), g.expected) << g.name << ": " << to_text(g.expected);
    }
}

TEST(RoundTrip, RandomFactoredOperators) {
    dt::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
        const auto planted = dt::random_operator(rng);
        EXPECT_EQ(parse_operator(to_text(planted.factored)).op, planted.op) << to_text(planted.factored);
        EXPECT_EQ(parse_operator(to_text(planted.op)).op, planted.op) << to_text(planted.op);
    }
}

TEST(RoundTrip, RandomExpressions) {
    dt::Rng rng(52);
    for (int i = 0; i < 100; ++i) {
        const auto problem = dt::random_problem(rng, i % 3 == 0);
        EXPECT_EQ(parse_rhs(to_text(problem.rhs)), problem.rhs) << to_text(problem.rhs);
    }
}
