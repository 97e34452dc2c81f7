#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "ergocert/error.hpp"
#include "ergocert/numerics.hpp"
#include "test_support.hpp"

using namespace ergo;
using namespace ergo::numerics;

using testing_support::code_of;

TEST(SolveMonotone, SquareRootOfTwo) {
    const double x = solve_monotone([](double t) { return t * t; }, 2.0, {1.0, 2.0});
    EXPECT_NEAR(x, std::sqrt(2.0), 1e-9);
}

TEST(SolveMonotone, RootAtLowerEndpoint) {
    const double x = solve_monotone([](double t) { return t; }, 0.25, {0.25, 3.0});
    EXPECT_EQ(x, 0.25);
}

TEST(SolveMonotone, DecreasingFunction) {
    const double x = solve_monotone([](double t) { return std::exp(-t); }, 0.5, {0.0, 5.0});
    EXPECT_NEAR(x, std::log(2.0), 1e-10);
}

TEST(SolveMonotone, SignChangeBracketsTheRoot) {
    const auto f = [](double t) { return t * t * t - t - 1.0; };
    const double x = solve_monotone(f, 0.0, {1.0, 2.0});
    const double tol = 1e-12;
    EXPECT_NE(std::signbit(f(x - tol)), std::signbit(f(x + tol)));
}

TEST(SolveMonotone, Errors) {
    EXPECT_EQ(code_of([] { solve_monotone([](double t) { return t; }, 5.0, {0.0, 1.0}); }), ErrorCode::NoSignChange);
    EXPECT_EQ(code_of([] { solve_monotone([](double t) { return t; }, 0.5, {1.0, 0.0}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { solve_monotone([](double t) { return t; }, 0.3, {0.0, 1.0, 1e-12, 3}); }),
              ErrorCode::NoConvergence);
}

TEST(MaximizeScalar, QuadraticVertex) {
    const auto m = maximize_scalar([](double x) { return -(x - 2.0) * (x - 2.0); }, 0.0, 5.0);
    EXPECT_NEAR(m.argmax, 2.0, 1e-6);
    EXPECT_NEAR(m.value, 0.0, 1e-12);
}

TEST(MaximizeScalar, ConstantFunction) {
    const auto m = maximize_scalar([](double) { return 3.5; }, -1.0, 1.0);
    EXPECT_EQ(m.value, 3.5);
    EXPECT_GE(m.argmax, -1.0);
    EXPECT_LE(m.argmax, 1.0);
}

TEST(MaximizeScalar, DominatesEveryGridPoint) {
    const auto f = [](double x) { return std::sin(3.0 * x) + 0.3 * x; };
    MaximizeOptions opts;
    opts.grid_points = 200;
    const auto m = maximize_scalar(f, 0.0, 6.0, opts);
    for (int i = 0; i <= 10000; ++i) {
        const double x = 6.0 * i / 10000.0;
        EXPECT_GE(m.value, f(x) - 1e-9) << "x=" << x;
    }
}

TEST(MaximizeScalar, LogSpacingNearLowerEnd) {
    MaximizeOptions opts;
    opts.spacing = GridSpacing::LogFromLo;
    const auto m = maximize_scalar([](double x) { return -std::abs(x - 1.0001); }, 1.0, 2.0, opts);
    EXPECT_NEAR(m.argmax, 1.0001, 1e-8);
}

TEST(MaximizeScalar, EmptyDomain) {
    EXPECT_EQ(code_of([] { maximize_scalar([](double x) { return x; }, 1.0, 1.0); }), ErrorCode::EmptyDomain);
}

TEST(StdNormalCdf, KnownValues) {
    EXPECT_EQ(std_normal_cdf(0.0), 0.5);
    EXPECT_NEAR(std_normal_cdf(1.0), 0.841344746, 1e-9);
    EXPECT_NEAR(std_normal_cdf(-3.0) + std_normal_cdf(3.0), 1.0, 1e-15);
}

TEST(StdNormalCdf, MatchesBoostAtHighPrecision) {
    const boost::math::normal_distribution<long double> nd;
    for (int i = -400; i <= 400; ++i) {
        const double x = i / 40.0;
        const auto ref = static_cast<double>(boost::math::cdf(nd, static_cast<long double>(x)));
        EXPECT_NEAR(std_normal_cdf(x), ref, 1e-12) << "x=" << x;
    }
}

TEST(StdNormalCdf, Symmetry) {
    for (double x : {0.1, 0.5, 1.0, 1.9799, 2.5, 4.0, 7.5}) {
        EXPECT_NEAR(std_normal_cdf(-x), 1.0 - std_normal_cdf(x), 2e-16) << "x=" << x;
    }
}

TEST(StdNormalCdf, NondecreasingAndSaturating) {
    double prev = 0.0;
    for (int i = 0; i <= 100000; ++i) {
        const double x = -10.0 + 20.0 * i / 100000.0;
        const double v = std_normal_cdf(x);
        ASSERT_GE(v, prev) << "x=" << x;
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
        prev = v;
    }
    EXPECT_EQ(std_normal_cdf(-60.0), 0.0);
    EXPECT_EQ(std_normal_cdf(60.0), 1.0);
}
