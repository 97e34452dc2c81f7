#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ergocert/bounds.hpp"
#include "ergocert/kendall.hpp"
#include "ergocert/models.hpp"
#include "ergocert/verify.hpp"
#include "test_support.hpp"

using namespace ergo;
using namespace ergo::verify;
using testing_support::code_of;

namespace {

/// Dense long-double powers of the truncated matrix: row x of P^n for n = 0..n_max.
std::vector<std::vector<long double>> dense_rows(const models::TruncatedChain& tc, std::size_t x, std::size_t n_max) {
    const std::size_t n = tc.n_states;
    std::vector<std::vector<long double>> out;
    std::vector<long double> row(n, 0.0L);
    row[x] = 1.0L;
    out.push_back(row);
    for (std::size_t step = 0; step < n_max; ++step) {
        std::vector<long double> next(n, 0.0L);
        for (std::size_t i = 0; i < n; ++i) {
            if (row[i] == 0.0L) continue;
            for (std::size_t j = 0; j < n; ++j) next[j] += row[i] * tc.at(i, j);
        }
        row = std::move(next);
        out.push_back(row);
    }
    return out;
}

/// sum_y V(y) |delta_n(y)| with delta_n = (e_x - pi) P^n, dense and in long double.
std::vector<long double> dense_distances(const models::TruncatedChain& tc, std::size_t x, std::size_t n_max) {
    const std::size_t n = tc.n_states;
    std::vector<long double> delta(n), out;
    long double total = 0.0L;
    for (double p : tc.pi) total += p;
    for (std::size_t y = 0; y < n; ++y) delta[y] = (y == x ? 1.0L : 0.0L) - tc.pi[y] / total;
    for (std::size_t step = 0;; ++step) {
        long double s = 0.0L;
        for (std::size_t y = 0; y < n; ++y) s += tc.v[y] * std::abs(delta[y]);
        out.push_back(s);
        if (step == n_max) break;
        std::vector<long double> next(n, 0.0L);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) next[j] += delta[i] * tc.at(i, j);
        }
        // Drop the stationary component that rounding reintroduces.
        long double mass = 0.0L;
        for (auto d : next) mass += d;
        for (std::size_t y = 0; y < n; ++y) next[y] -= mass * tc.pi[y] / total;
        delta = std::move(next);
    }
    return out;
}

}  // namespace

TEST(Renewal, PointMass) {
    const auto seq = renewal_from_increments({{1.0}}, 10);
    for (double u : seq.u) EXPECT_EQ(u, 1.0);
    EXPECT_EQ(seq.u_inf, 1.0);
}

TEST(Renewal, TwoPointLaw) {
    const auto seq = renewal_from_increments({{0.5, 0.5}}, 10);
    ASSERT_GE(seq.u.size(), 4u);
    EXPECT_DOUBLE_EQ(seq.u[0], 1.0);
    EXPECT_DOUBLE_EQ(seq.u[1], 0.5);
    EXPECT_DOUBLE_EQ(seq.u[2], 0.75);
    EXPECT_DOUBLE_EQ(seq.u[3], 0.625);
    EXPECT_NEAR(seq.u_inf, 2.0 / 3.0, 1e-15);
}

TEST(Renewal, GeneratingFunctionIdentity) {
    const IncrementDistribution b{{0.3, 0.0, 0.25, 0.1, 0.35}};
    const std::size_t n_max = 300;
    const auto seq = renewal_from_increments(b, n_max);
    // Coefficients of u(z) (1 - b(z)).
    for (std::size_t n = 0; n <= n_max; ++n) {
        double c = seq.u[n];
        for (std::size_t k = 1; k <= b.probs.size() && k <= n; ++k) c -= b.probs[k - 1] * seq.u[n - k];
        EXPECT_NEAR(c, n == 0 ? 1.0 : 0.0, 1e-12) << "n=" << n;
    }
    EXPECT_NEAR(seq.u_inf, 1.0 / b.mean(), 1e-12);
    EXPECT_LE(std::abs(seq.u[n_max] - seq.u_inf), 1e-13);
    for (double u : seq.u) {
        EXPECT_GE(u, 0.0);
        EXPECT_LE(u, 1.0);
    }
}

TEST(Renewal, Validation) {
    EXPECT_EQ(code_of([] { renewal_from_increments({{0.0, 1.0}}, 10); }), ErrorCode::PeriodicSupport);
    EXPECT_EQ(code_of([] { renewal_from_increments({{0.0, 0.5, 0.0, 0.5}}, 10); }), ErrorCode::PeriodicSupport);
    EXPECT_EQ(code_of([] { renewal_from_increments({{0.5, 0.4}}, 10); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { renewal_from_increments({{1.5, -0.5}}, 10); }), ErrorCode::InvalidParams);
    EXPECT_NO_THROW(renewal_from_increments({{0.0, 0.5, 0.5}}, 10));
}

TEST(KendallCheck, SimpleLawPasses) {
    const IncrementDistribution b{{0.9, 0.1}};
    const double big_r = 1.5;
    const double big_l = b.generating_function(big_r);
    const double r1 = kendall::solve_r1({0.9, big_r, big_l});
    const auto rep = kendall_check(b, 0.9, big_r, big_l, 1.0 + 0.5 * (r1 - 1.0), 100000);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(rep.measured_sup, rep.bound);
    EXPECT_LE(rep.decay_rate, rep.rate_bound + 1e-6);
    EXPECT_NEAR(rep.rate_bound, 1.0 / r1, 1e-15);
}

TEST(KendallCheck, HypothesisGate) {
    const IncrementDistribution b{{0.5, 0.5}};
    EXPECT_EQ(code_of([&] { kendall_check(b, 0.6, 1.5, 3.0, 1.01, 1000); }), ErrorCode::HypothesisViolated);
    EXPECT_EQ(code_of([&] { kendall_check(b, 0.5, 1.5, 1.5, 1.01, 1000); }), ErrorCode::HypothesisViolated);
}

TEST(KendallFamily, ShapeAndAsymptotics) {
    const auto b = kendall_family(0.3, 40);
    ASSERT_EQ(b.probs.size(), 40u);
    EXPECT_EQ(b.probs[0], 0.3);
    EXPECT_NEAR(b.probs[39], 0.7, 1e-15);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    EXPECT_NEAR(kendall_family_asymptotic(0.3, 40), 2.0 * pi2 * 0.3 / 0.49 / 64000.0, 1e-15);
    for (int k : {20, 40, 80}) {
        const auto rep = kendall_family_check(0.3, k, 0.1);
        EXPECT_TRUE(rep.pass) << "k=" << k << " rel_error=" << rep.rel_error;
        EXPECT_LE(rep.rel_error, 0.1) << "k=" << k;
    }
}

TEST(MatrixOracle, MatchesDensePowers) {
    const auto tc = models::walk_truncated_chain({0.9, std::nullopt}, 120);
    for (std::size_t x : {0u, 3u, 10u}) {
        const auto rows = dense_rows(tc, x, 60);
        const auto dist = dense_distances(tc, x, 60);
        const auto prof = log_distance_profile(tc, x, 60);
        ASSERT_EQ(prof.size(), 61u);
        for (std::size_t n = 0; n <= 60; ++n) {
            long double mass = 0.0L;
            for (auto v : rows[n]) mass += v;
            EXPECT_NEAR(static_cast<double>(mass), 1.0, 1e-13 * static_cast<double>(n + 1));
            const double dense = static_cast<double>(dist[n]);
            EXPECT_NEAR(std::exp(prof[n]), dense, 1e-9 * dense) << "x=" << x << " n=" << n;
        }
        EXPECT_NEAR(matrix_vnorm_distance(tc, x, 25), static_cast<double>(dist[25]),
                    1e-9 * static_cast<double>(dist[25]));
    }
}

TEST(MatrixOracle, InitialDistance) {
    const auto tc = models::walk_truncated_chain({2.0 / 3.0, std::nullopt}, 120);
    for (std::size_t x : {0u, 5u}) {
        double expect = 0.0;
        for (std::size_t y = 0; y < tc.n_states; ++y) expect += tc.v[y] * std::abs((y == x ? 1.0 : 0.0) - tc.pi[y]);
        EXPECT_NEAR(matrix_vnorm_distance(tc, x, 0), expect, 1e-12 * expect);
    }
}

TEST(MatrixOracle, DistanceDecreasesForReflectingWalk) {
    const auto tc = models::walk_truncated_chain({0.9, std::nullopt}, 300);
    const auto prof = log_distance_profile(tc, 4, 200);
    for (std::size_t n = 1; n < prof.size(); ++n) EXPECT_LE(prof[n], prof[n - 1] + 1e-12) << n;
}

TEST(MatrixOracle, EmpiricalRateMatchesExact) {
    const models::ReflectingWalk w{0.8, 0.25};
    const auto tc = models::walk_truncated_chain(w, 2100);
    EXPECT_NEAR(empirical_decay_rate(tc, 1000, 2000), 0.8409, 0.01);
}

TEST(Domination, ReversibleCertificates) {
    const auto tc9 = models::walk_truncated_chain({0.9, std::nullopt}, 300);
    const auto c9 = bounds::certificate(models::reflecting_walk_params({0.9, std::nullopt}),
                                        bounds::Symmetry::Reversible, 0.8);
    EXPECT_TRUE(certificate_domination(tc9, c9, 30, 200).pass);

    const auto tc8 = models::walk_truncated_chain({0.8, 0.25}, 300);
    const auto c8 = bounds::certificate(models::reflecting_walk_params({0.8, 0.25}), bounds::Symmetry::Reversible);
    EXPECT_NEAR(c8.rho, 0.8796, 5e-5);
    const auto rep = certificate_domination(tc8, c8, 30, 200);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(rep.worst_ratio, 1.0);

    auto shrunk = c9;
    shrunk.big_m *= 1e-3;
    EXPECT_FALSE(certificate_domination(tc9, shrunk, 30, 200).pass);
}

TEST(MonteCarlo, UnitRadiusIsExactlyOne) {
    const auto rep = mc_regeneration({0.9, std::nullopt}, 3, 1.0, 10000, 5);
    EXPECT_EQ(rep.mean_r_tau, 1.0);
    EXPECT_EQ(rep.std_err, 0.0);
    EXPECT_TRUE(rep.pass);
}

TEST(MonteCarlo, BoundsAndDeterminism) {
    const models::ReflectingWalk w{0.9, std::nullopt};
    const double r = 1.0 / 0.6;
    const auto a = mc_regeneration(w, 0, r, 20000, 42);
    EXPECT_NEAR(a.bound, 2.0, 1e-12);
    EXPECT_TRUE(a.pass);
    const auto b = mc_regeneration(w, 3, r, 20000, 42);
    EXPECT_NEAR(b.bound, 27.0, 1e-9);
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(mc_regeneration(w, 0, r, 20000, 42).mean_r_tau, a.mean_r_tau);
    EXPECT_NE(mc_regeneration(w, 0, r, 20000, 43).mean_r_tau, a.mean_r_tau);
}

TEST(CounterRng, StreamsAreReproducible) {
    CounterRng a(7, 3), b(7, 3), c(7, 4);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs |= x != c.next_u64();
        const double u = a.next_unit();
        b.next_unit();
        c.next_unit();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_TRUE(differs);
}

TEST(ParallelFor, IndependentOfWorkerCount) {
    std::vector<double> one(5000), many(5000);
    const auto body = [](std::vector<double>& out) {
        return [&out](std::size_t i) {
            CounterRng rng(9, i);
            out[i] = rng.next_unit();
        };
    };
    ::setenv("ERGO_CERT_THREADS", "1", 1);
    EXPECT_EQ(thread_count(), 1u);
    parallel_for(one.size(), body(one));
    ::setenv("ERGO_CERT_THREADS", "4", 1);
    EXPECT_EQ(thread_count(), 4u);
    parallel_for(many.size(), body(many));
    ::unsetenv("ERGO_CERT_THREADS");
    EXPECT_EQ(one, many);
}

TEST(ParallelFor, PropagatesExceptions) {
    ::setenv("ERGO_CERT_THREADS", "3", 1);
    EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                     if (i == 57) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
    ::unsetenv("ERGO_CERT_THREADS");
}
