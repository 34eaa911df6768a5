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

const OperatorPoly P = real_coeffs({8, -2, 3});  // 3D^2 - 2D + 8
const RealExpr G = real({term(q(5), 0, q(3))});

}  // namespace

TEST(CheckParticular, AcceptsCorrectAnswer) {
    EXPECT_TRUE(check_particular(P, G, real({term(q(5, 29), 0, q(3))})).exact());
}

TEST(CheckParticular, ReportsResidual) {
    // Oracle: P(3) = 27 - 6 + 8 = 29, so P(D) e^{3x} - 5 e^{3x} = 24 e^{3x}.
    const auto v = check_particular(P, G, real({term(q(1), 0, q(3))}));
    EXPECT_FALSE(v.exact());
    EXPECT_EQ(v.residual, real({term(q(24), 0, q(3))}));
    const Json j = to_json(v);
    EXPECT_EQ(j["status"], "residual");
    EXPECT_EQ(j["residual"]["text"], "24*exp(3*x)");
}

TEST(CheckParticular, ConstantsSolveD) {
    const auto v = check_particular(OperatorPoly::d(), RealExpr(), real({term(q(7, 3), 0)}));
    EXPECT_TRUE(v.exact());
    EXPECT_EQ(to_json(v), (Json{{"status", "exact"}}));
}

TEST(CheckKernel, Examples) {
    const auto d3 = OperatorPoly::d_power(3);
    EXPECT_TRUE(check_kernel(d3, KernelBasis{{real({term(q(1), 0)}), real({term(q(1), 1)}), real({term(q(1), 2)})}}).exact());

    const auto quad = pow(real_coeffs({4, 0, 1}), 2);
    KernelBasis trig{{real({term(q(1), 0, q(0), q(2), Trig::Cos)}), real({term(q(1), 0, q(0), q(2), Trig::Sin)}),
                      real({term(q(1), 1, q(0), q(2), Trig::Cos)}), real({term(q(1), 1, q(0), q(2), Trig::Sin)})}};
    EXPECT_TRUE(check_kernel(quad, trig).exact());

    const auto v = check_kernel(real_coeffs({-1, 1}), KernelBasis{{real({term(q(1), 1)})}});
    EXPECT_FALSE(v.exact());
    EXPECT_FALSE(v.residual.is_zero());
}

TEST(CheckKernel, RejectsShortBasis) {
    const auto v = check_kernel(OperatorPoly::d_power(3), KernelBasis{{real({term(q(1), 0)}), real({term(q(1), 1)})}});
    EXPECT_FALSE(v.exact());
    EXPECT_NE(v.detail.find("degree 3"), std::string::npos);
}

TEST(NumericSpotCheck, ExactSolvesAreTight) {
    for (const auto& g : dt::goldens()) {
        const auto op = parse_operator(g.op).op;
        const auto rhs = parse_rhs(g.rhs);
        EXPECT_LT(numeric_spot_check(op, rhs, g.expected, {0.0, 0.5, 1.0, -1.3}), 1e-9) << g.name;
        EXPECT_LT(numeric_spot_check(op, rhs, g.expected), numeric_tolerance) << g.name;
    }
}

TEST(NumericSpotCheck, DetectsPerturbation) {
    for (const auto& g : dt::goldens()) {
        const auto op = parse_operator(g.op).op;
        const auto rhs = parse_rhs(g.rhs);
        RealExpr wrong;
        bool first = true;
        for (RealTerm t : g.expected.terms()) {
            if (first) t.coeff += q(1, 1000);
            first = false;
            wrong.add(t);
        }
        EXPECT_GT(numeric_spot_check(op, rhs, wrong), 1e-5) << g.name;
    }
}

TEST(NumericSpotCheck, KernelElementsGiveZero) {
    FactoredOperator f;
    f.factors = {OperatorFactor::linear(2), OperatorFactor::quadratic(q(-3), q(2), 2)};
    const auto op = f.expand();
    for (const auto& e : kernel_basis(f).elements) EXPECT_LT(numeric_spot_check(op, RealExpr(), e), 1e-9);
}

TEST(NumericSpotCheck, SkipsHugeExponents) {
    const RealExpr y = real({term(q(1), 0, q(40))});
    const auto op = real_coeffs({-40, 1});
    EXPECT_LT(numeric_spot_check(op, RealExpr(), y), 1e-9);
}

TEST(VerifyProperties, ExactImpliesNumericAgreement) {
    dt::Rng rng(71);
    for (int i = 0; i < 100; ++i) {
        const auto problem = dt::random_problem(rng, i % 2 == 0);
        const auto y = solve_particular(problem.op.op, problem.rhs).y;
        ASSERT_TRUE(check_particular(problem.op.op, problem.rhs, y).exact());
        EXPECT_LT(numeric_spot_check(problem.op.op, problem.rhs, y), numeric_tolerance) << to_text(problem.op.op) << " | " << to_text(y);
    }
}
