#include "opvolterra/apply.hpp"
#include "opvolterra/numquad.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace opvolterra;

namespace {

const QuadratureRule& rule64() {
    static const QuadratureRule r(64);
    return r;
}

double one(double) { return 1.0; }

bool agree(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST(QuadratureRule, WeightsAndExactness) {
    for (int order : {1, 2, 5, 16, 64, 100}) {
        const QuadratureRule r(order);
        const double sum = std::accumulate(r.weights().begin(), r.weights().end(), 0.0);
        EXPECT_NEAR(sum, 2.0, 1e-13) << order;
        for (std::size_t i = 0; i < r.nodes().size(); ++i) {
            EXPECT_GT(r.nodes()[i], -1.0);
            EXPECT_LT(r.nodes()[i], 1.0);
            EXPECT_GT(r.weights()[i], 0.0);
        }
        // int_0^1 u^{2N-1} du = 1/(2N)
        const int deg = 2 * order - 1;
        double q = 0.0;
        for (int i = 0; i < order; ++i) q += r.weights()[i] * std::pow((r.nodes()[i] + 1) / 2, deg) / 2;
        EXPECT_NEAR(q, 1.0 / (2 * order), 1e-15) << order;
    }
    EXPECT_THROW(QuadratureRule(0), std::domain_error);
}

TEST(NestedXI, Examples) {
    EXPECT_NEAR(nested_xI(one, 1, 2.0, rule64()).value, 4.0, 1e-14);
    EXPECT_NEAR(nested_xI(one, 2, 1.0, rule64()).value, 1.0 / 3.0, 1e-12);
    const double expect = apply_exp(2).eval(1.0);
    EXPECT_NEAR(nested_xI([](double t) { return std::exp(t); }, 2, 1.0, rule64()).value, expect, 1e-10);
}

TEST(NestedXI, ReportFields) {
    const auto r = nested_xI(one, 3, 1.5, rule64());
    EXPECT_EQ(r.method, OracleMethod::nested);
    EXPECT_GT(r.evaluations, 0);
    EXPECT_GE(r.abs_error_estimate, 0.0);
    EXPECT_LT(r.abs_error_estimate, 1e-12);
    QuadratureOptions no_est;
    no_est.estimate_error = false;
    EXPECT_EQ(nested_xI(one, 3, 1.5, rule64(), no_est).abs_error_estimate, 0.0);
}

TEST(CauchySingle, Examples) {
    EXPECT_NEAR(cauchy_single(one, 3, 1.0, rule64()).value, 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(cauchy_single([](double t) { return t; }, 2, 1.0, rule64()).value, 1.0 / 6.0, 1e-12);
    const double mm = medina_moll_antiderivative(2).eval(1.0);
    EXPECT_NEAR(cauchy_single([](double t) { return std::log1p(t); }, 2, 1.0, rule64()).value, mm, 1e-10);
    EXPECT_THROW(cauchy_single(one, 0, 1.0, rule64()), std::domain_error);
}

TEST(KernelApply, Examples) {
    EXPECT_NEAR(kernel_apply(one, 1, 2.0, rule64()).value, 4.0, 1e-14);
    EXPECT_NEAR(kernel_apply(one, 2, 1.0, rule64()).value, 1.0 / 3.0, 1e-12);
    QuadratureOptions graded;
    graded.graded_levels = 60;
    const auto pc = power_closed_form(3, 1.3);
    const double expect = pc.coefficient * std::pow(1.5, pc.exponent);
    const double got = kernel_apply([](double t) { return std::pow(t, 0.3); }, 3, 1.5, rule64(), graded).value;
    EXPECT_TRUE(agree(got, expect, 1e-8)) << got << " vs " << expect;
}

TEST(KernelApply, SingularPowerNeedsGrading) {
    for (double alpha : {0.05, 0.3, 0.7, 1.0, 2.5, 5.0, 9.5}) {
        QuadratureOptions graded;
        graded.graded_levels = graded_levels_for_power(alpha);
        for (int n = 1; n <= 4; ++n) {
            const auto pc = power_closed_form(n, alpha);
            const double x = 1.25;
            const double expect = pc.coefficient * std::pow(x, pc.exponent);
            auto f = [alpha](double t) { return std::pow(t, alpha - 1); };
            EXPECT_TRUE(agree(kernel_apply(f, n, x, rule64(), graded).value, expect, 1e-9)) << alpha << " " << n;
        }
    }
    // A fixed shallow grading cannot resolve t^-0.95.
    QuadratureOptions shallow;
    shallow.graded_levels = 60;
    const auto pc = power_closed_form(1, 0.05);
    const double expect = pc.coefficient * std::pow(1.25, pc.exponent);
    EXPECT_FALSE(agree(kernel_apply([](double t) { return std::pow(t, -0.95); }, 1, 1.25, rule64(), shallow).value, expect, 1e-6));
}

TEST(KernelApply, GradingDepth) {
    EXPECT_EQ(graded_levels_for_power(1e9), 1);
    for (double alpha : {0.05, 0.3, 1.0, 4.0}) {
        const int L = graded_levels_for_power(alpha);
        EXPECT_LE(std::pow(0.15, L * alpha), 1e-13) << alpha;
        EXPECT_GT(std::pow(0.15, (L - 1) * alpha), 1e-13) << alpha;  // smallest such L
    }
    EXPECT_LE(graded_levels_for_power(1e-6), 364);
    EXPECT_THROW(graded_levels_for_power(0.0), std::domain_error);
}

TEST(Oracles, ZeroIntervalAndErrors) {
    EXPECT_EQ(nested_xI(one, 3, 0.0, rule64()).value, 0.0);
    EXPECT_EQ(kernel_apply(one, 3, 0.0, rule64()).value, 0.0);
    EXPECT_EQ(cauchy_single(one, 3, 0.0, rule64()).value, 0.0);
    EXPECT_THROW(nested_xI(one, 1, -1.0, rule64()), std::domain_error);
    auto bad = [](double t) { return t > 0.5 ? std::nan("") : 1.0; };
    try {
        kernel_apply(bad, 2, 1.0, rule64());
        FAIL() << "expected domain_error";
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("at node t ="), std::string::npos);
    }
    EXPECT_THROW(nested_xI(bad, 2, 1.0, rule64()), std::domain_error);
}

TEST(Oracles, ThreeWayAgreement) {
    const std::vector<RealFunction> fs{one, [](double t) { return t; }, [](double t) { return t * t; },
                                       [](double t) { return std::exp(t); }, [](double t) { return std::log1p(t); }};
    for (const auto& f : fs) {
        for (int n = 1; n <= 5; ++n) {
            for (double x : {0.5, 1.0, 2.0}) {
                const double a = nested_xI(f, n, x, rule64()).value;
                const double b = kernel_apply(f, n, x, rule64()).value;
                const double c = cauchy_termwise(f, expand_xI_closed(n), x, rule64()).value;
                EXPECT_TRUE(agree(a, b, 1e-9) && agree(a, c, 1e-9) && agree(b, c, 1e-9)) << n << " " << x;
            }
        }
    }
}

TEST(Oracles, Positivity) {
    const std::vector<RealFunction> fs{one, [](double t) { return t * t; }, [](double t) { return std::exp(-t); },
                                       [](double t) { return std::log1p(t); }};
    for (const auto& f : fs) {
        for (int n = 1; n <= 6; ++n) {
            for (double x : {0.1, 1.0, 3.0}) {
                EXPECT_GE(nested_xI(f, n, x, rule64()).value, 0.0);
                EXPECT_GE(kernel_apply(f, n, x, rule64()).value, 0.0);
                EXPECT_GE(cauchy_single(f, n, x, rule64()).value, 0.0);
            }
        }
    }
}

TEST(KernelPolyApply, Examples) {
    EXPECT_EQ(kernel_poly_apply(Poly{1}, 1), Poly::monomial(1, 2));
    EXPECT_EQ(kernel_poly_apply(Poly{1}, 2), Poly::monomial(Rational(BigInt(1), BigInt(3)), 4));
    EXPECT_EQ(kernel_poly_apply(Poly::monomial(1, 2), 2), apply_to_monomial(expand_xI_closed(2), 2));
    EXPECT_THROW(kernel_poly_apply(Poly{1}, 0), std::domain_error);
}

TEST(KernelPolyApply, ExactAgreementWithExpansion) {
    for (int n = 1; n <= 8; ++n) {
        const auto ops = expand_xI_closed(n);
        for (int m = 0; m <= 8; ++m) ASSERT_EQ(kernel_poly_apply(Poly::monomial(1, m), n), apply_to_monomial(ops, m)) << n << " " << m;
    }
}
