#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "ergocert/bounds.hpp"
#include "ergocert/models.hpp"
#include "ergocert/numerics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ergo;
using namespace ergo::models;
using testing_support::code_of;

namespace {

/// PV(x)/V(x) for Metropolis with N(x,1) proposals targeting N(0,1) and
/// V(y) = exp(s|y|), by adaptive Gauss-Kronrod quadrature.
double mh_lambda_quadrature(double x, double s) {
    using boost::math::quadrature::gauss_kronrod;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    // log of proposal density times acceptance probability
    const auto log_qa = [x](double y) { return -0.5 * (y - x) * (y - x) + std::min(0.0, 0.5 * (x * x - y * y)); };
    const auto moved = [&](double y) { return inv_sqrt_2pi * std::exp(log_qa(y) + s * (std::abs(y) - std::abs(x))); };
    const auto acc = [&](double y) { return inv_sqrt_2pi * std::exp(log_qa(y)); };
    const double inf = std::numeric_limits<double>::infinity();
    const double ax = std::abs(x);
    const double cuts[] = {-inf, -ax, 0.0, ax, inf};
    double pv = 0.0, pa = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (cuts[i] == cuts[i + 1]) continue;
        pv += gauss_kronrod<double, 61>::integrate(moved, cuts[i], cuts[i + 1], 15, 1e-13);
        pa += gauss_kronrod<double, 61>::integrate(acc, cuts[i], cuts[i + 1], 15, 1e-13);
    }
    return pv + (1.0 - pa);
}

}  // namespace

TEST(ReflectingWalk, Params) {
    const auto a = reflecting_walk_params({0.9, std::nullopt});
    EXPECT_NEAR(a.lambda, 0.6, 1e-15);
    EXPECT_NEAR(a.big_k, 1.2, 1e-15);
    EXPECT_EQ(a.beta, 0.9);
    EXPECT_TRUE(a.atomic);
    EXPECT_EQ(a.beta_tilde, 1.0);
    const auto b = reflecting_walk_params({0.9, 0.25});
    EXPECT_NEAR(b.lambda, 0.6, 1e-15);
    EXPECT_NEAR(b.big_k, 2.5, 1e-14);
    EXPECT_EQ(b.beta, 0.25);
    EXPECT_NEAR(reflecting_walk_params({2.0 / 3.0, std::nullopt}).lambda, 2.0 * std::sqrt(2.0) / 3.0, 1e-15);
    EXPECT_EQ(code_of([] { reflecting_walk_params({0.5, std::nullopt}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { reflecting_walk_params({0.8, 0.8}); }), ErrorCode::InvalidParams);
}

TEST(ReflectingWalk, ExactRate) {
    EXPECT_NEAR(reflecting_walk_rho_exact(0.8, 0.25), 0.4625 / 0.55, 1e-14);
    EXPECT_NEAR(reflecting_walk_rho_exact(0.9, 0.25), 0.5125 / 0.65, 1e-14);
    EXPECT_NEAR(reflecting_walk_rho_exact(0.8, 0.5), 0.8, 1e-14);
    EXPECT_EQ(code_of([] { reflecting_walk_rho_exact(0.8, 0.9); }), ErrorCode::InvalidParams);
}

TEST(MhNormal, LambdaWithoutDriftIsOne) {
    for (double x : {0.0, 0.3, 1.0, 2.5, 6.0}) EXPECT_NEAR(mh_normal_lambda(x, 0.0), 1.0, 1e-14) << x;
}

TEST(MhNormal, LambdaMatchesQuadrature) {
    oracle::Sampler s(31);
    for (int i = 0; i < 20; ++i) {
        const double x = s.uniform(0.0, 4.0);
        const double sv = s.uniform(0.0, 1.5);
        EXPECT_NEAR(mh_normal_lambda(x, sv), mh_lambda_quadrature(x, sv), 1e-6) << "x=" << x << " s=" << sv;
    }
    EXPECT_NEAR(mh_normal_lambda(0.0, 0.5), mh_lambda_quadrature(0.0, 0.5), 1e-6);
}

TEST(MhNormal, Params) {
    const auto mt = mh_normal_params({1.4, 0.1, NuVariant::MtMeasure});
    const double beta = std::sqrt(2.0) * std::exp(-1.96) * (numerics::std_normal_cdf(std::sqrt(2.0) * 1.4) - 0.5);
    EXPECT_NEAR(mt.beta, beta, 1e-15);
    EXPECT_NEAR(mt.beta, 0.0948, 5e-5);
    EXPECT_EQ(mt.beta, mt.beta_tilde);
    EXPECT_TRUE(std::holds_alternative<bounds::NuConcentratedOnC>(mt.nu_info));
    EXPECT_NEAR(mt.lambda, mh_normal_lambda(1.4, 0.1), 1e-15);
    EXPECT_NEAR(mt.big_k, std::exp(0.14) * mt.lambda, 1e-15);

    const auto inf = mh_normal_params({1.0, 0.11, NuVariant::InfimumMeasure});
    EXPECT_NEAR(inf.beta, 2.0 * (numerics::std_normal_cdf(2.0) - numerics::std_normal_cdf(1.0)), 1e-15);
    EXPECT_GT(inf.beta_tilde, inf.beta);
    EXPECT_TRUE(std::holds_alternative<bounds::NuVIntegralBound>(inf.nu_info));

    EXPECT_NEAR(1.0 - bounds::rho_reversible(mh_normal_params({1.0, 0.07, NuVariant::MtMeasure})).rho, 0.0091, 5e-5);
    EXPECT_NEAR(1.0 - bounds::rho_reversible(inf).rho, 0.0135, 5e-5);
    EXPECT_EQ(code_of([] { mh_normal_params({0.0, 0.1, NuVariant::MtMeasure}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { mh_normal_params({0.05, 3.0, NuVariant::MtMeasure}); }), ErrorCode::MonotoneViolation);
}

TEST(MhNormal, EveryTuningValidates) {
    for (double d = 0.5; d <= 3.0; d += 0.25) {
        for (double sv = 0.01; sv <= 1.5; sv += 0.1) {
            for (auto nu : {NuVariant::MtMeasure, NuVariant::InfimumMeasure}) {
                try {
                    mh_normal_params({d, sv, nu}).validate();
                } catch (const Error& e) {
                    EXPECT_EQ(e.code(), ErrorCode::MonotoneViolation) << d << " " << sv;
                }
            }
        }
    }
}

TEST(Contracting, Params) {
    const auto p = contracting_params({0.5, 1.5});
    EXPECT_NEAR(p.lambda, 0.25 + 2.0 * 0.75 / 3.25, 1e-15);
    EXPECT_NEAR(p.big_k, 2.3125, 1e-15);
    EXPECT_NEAR(p.beta_tilde, 0.3771, 5e-5);
    EXPECT_EQ(p.beta, p.beta_tilde);
    EXPECT_TRUE(std::holds_alternative<bounds::NuConcentratedOnC>(p.nu_info));
    EXPECT_NEAR(bounds::rho_positive(contracting_params({0.9, 1.1})).rho, 0.99948, 5e-5);
    EXPECT_EQ(code_of([] { contracting_params({1.0, 1.5}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { contracting_params({0.5, 1.0}); }), ErrorCode::InvalidParams);
}

TEST(Contracting, DriftLimits) {
    for (double theta : {0.0, 0.3, -0.6, 0.9}) {
        EXPECT_LT(contracting_params({theta, 1.0 + 1e-6}).lambda, 1.0);
        const double t2 = theta * theta;
        EXPECT_NEAR(contracting_params({theta, 3.0}).lambda - t2, 2.0 * (1.0 - t2) / 10.0, 1e-15);
        double prev = 1.0;
        for (double c = 1.01; c < 3.0; c += 0.25) {
            const double lam = contracting_params({theta, c}).lambda;
            EXPECT_LT(lam, prev);
            EXPECT_GT(lam, t2);
            prev = lam;
        }
    }
    // beta_tilde rounds to 1 here, which a non-atomic set cannot have.
    EXPECT_EQ(code_of([] { contracting_params({0.0, 10.0}); }), ErrorCode::InvalidParams);
}

TEST(Contracting, CouplingInput) {
    EXPECT_EQ(code_of([] { contracting_coupling_input({0.5, std::sqrt(2.0)}); }), ErrorCode::InvalidParams);
    const auto in = contracting_coupling_input({0.5, 2.1});
    EXPECT_NEAR(in.beta_tilde,
                2.0 * (1.0 - numerics::std_normal_cdf(0.5 * 2.1 / std::sqrt(0.75))), 1e-15);
    EXPECT_NEAR(in.lambda1(), 0.25 + 4.0 * 0.75 / (2.0 + 2.1 * 2.1), 1e-12);
}

TEST(Binomial, Transform) {
    const auto p = contracting_params({0.5, 1.5});
    const auto b = binomial_modification(p, 3.25);
    EXPECT_EQ(b.lambda, 0.5 * (1.0 + p.lambda));
    EXPECT_EQ(b.big_k, 0.5 * (3.25 + p.big_k));
    EXPECT_EQ(b.beta, 0.5 * p.beta);
    EXPECT_EQ(b.beta_tilde, 0.5 * p.beta_tilde);
    const double rho = bounds::rho_positive(b).rho;
    EXPECT_NEAR(rho * rho, 0.952, 0.002);

    const auto bb = binomial_modification(b, 3.25);
    EXPECT_EQ(bb.beta_tilde, 0.25 * p.beta_tilde);
    EXPECT_EQ(bb.beta, 0.25 * p.beta);
    EXPECT_EQ(bb.atomic, p.atomic);

    const auto w = binomial_modification(reflecting_walk_params({0.6, std::nullopt}), 1.0);
    EXPECT_TRUE(w.atomic);
    EXPECT_EQ(w.beta_tilde, 1.0);
    const double lazy = bounds::rho_positive(w).rho;
    EXPECT_NEAR(lazy, 0.5 * (1.0 + 2.0 * std::sqrt(0.24)), 1e-15);
    EXPECT_NEAR(lazy * lazy, 0.9799, 5e-5);
}

TEST(SupVOnC, PerModel) {
    EXPECT_EQ(sup_v_on_c(ReflectingWalk{0.9, std::nullopt}), 1.0);
    EXPECT_NEAR(sup_v_on_c(MetropolisNormal{1.1, 0.2, NuVariant::MtMeasure}), std::exp(0.22), 1e-15);
    EXPECT_EQ(sup_v_on_c(ContractingNormal{0.5, 1.5}), 3.25);
}

TEST(TruncatedChain, Invariants) {
    for (const ReflectingWalk w : {ReflectingWalk{2.0 / 3.0, std::nullopt}, ReflectingWalk{0.9, std::nullopt},
                                   ReflectingWalk{0.8, 0.25}, ReflectingWalk{0.6, 0.05}}) {
        const auto tc = walk_truncated_chain(w, 200);
        const std::size_t n = tc.n_states;
        EXPECT_LT(tc.tail_mass, 1e-12);
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += tc.at(i, j);
            EXPECT_NEAR(row, 1.0, 1e-12);
            EXPECT_GE(tc.v[i], 1.0);
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += tc.pi[i] * tc.at(i, j);
            EXPECT_NEAR(s, tc.pi[j], 1e-10);
        }
        const double ratio = w.q() / w.p;
        for (std::size_t i = 1; i + 2 < n; ++i) EXPECT_NEAR(tc.pi[i + 1] / tc.pi[i], ratio, 1e-12);
        EXPECT_EQ(tc.c_set, std::vector<std::size_t>{0});
    }
    const auto tc = walk_truncated_chain({0.9, std::nullopt}, 100);
    EXPECT_NEAR(tc.pi[0], 1.0 - 0.1 / 0.9, 1e-12);
    EXPECT_NEAR(tc.v[3], 27.0, 1e-12);
}

TEST(TruncatedChain, TooSmall) {
    EXPECT_EQ(code_of([] { walk_truncated_chain({0.6, std::nullopt}, 20); }), ErrorCode::TruncationTooSmall);
}
