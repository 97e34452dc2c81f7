#pragma once

// Formula transcriptions kept apart from the library so the tests compare two
// independent evaluations. Root finding uses Boost's TOMS 748 solver rather
// than the library's bisection.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include <boost/math/tools/roots.hpp>

namespace oracle {

inline double n_ratio(double big_r, double big_l) { return (big_l - 1.0) / (big_r - 1.0); }

/// 8 N e^-2 (r - 1) / (r log(R/r)^2)
inline double kendall_d(double r, double big_r, double big_l) {
    const double lg = std::log(big_r / r);
    return 8.0 * n_ratio(big_r, big_l) * std::exp(-2.0) * (r - 1.0) / (r * lg * lg);
}

/// R1 as the root of (r - 1) / (r log(R/r)^2) = e^2 beta / (8 N).
inline double r1(double beta, double big_r, double big_l) {
    const double target = std::exp(2.0) * beta / (8.0 * n_ratio(big_r, big_l));
    auto f = [&](double r) {
        const double lg = std::log(big_r / r);
        return (r - 1.0) / (r * lg * lg) - target;
    };
    std::uintmax_t it = 400;
    const auto tol = boost::math::tools::eps_tolerance<double>(52);
    const auto [a, b] = boost::math::tools::toms748_solve(f, 1.0 + 1e-15, big_r * (1.0 - 1e-15), tol, it);
    return 0.5 * (a + b);
}

/// Nested form: (1/(r-1)) (1 + (beta + 2 log N / log(R/r)) / (beta - D)).
inline double k1_nested(double r, double beta, double big_r, double big_l) {
    const double d = kendall_d(r, big_r, big_l);
    const double lg = std::log(big_r / r);
    return (1.0 / (r - 1.0)) * (1.0 + (beta + 2.0 * std::log(n_ratio(big_r, big_l)) / lg) / (beta - d));
}

/// Single fraction: (2 beta + 2 log N / log(R/r) - D) / ((r - 1)(beta - D)).
inline double k1_fraction(double r, double beta, double big_r, double big_l) {
    const double d = kendall_d(r, big_r, big_l);
    const double lg = std::log(big_r / r);
    return (2.0 * beta + 2.0 * std::log(n_ratio(big_r, big_l)) / lg - d) / ((r - 1.0) * (beta - d));
}

/// Atomic M written in gamma.
inline double m_atomic_gamma(double lam, double k, double gamma, double series) {
    return std::max(lam, k - lam / gamma) / (gamma - lam) +
           k * (k - lam / gamma) / (gamma * (gamma - lam)) * series +
           (k - lam / gamma) * std::max(lam, k - lam) / ((gamma - lam) * (1.0 - lam)) +
           lam * (k - 1.0) / ((gamma - lam) * (1.0 - lam));
}

/// Atomic M written in r = 1/gamma.
inline double m_atomic_r(double lam, double k, double r, double series) {
    const double s = 1.0 - r * lam;
    return r * std::max(lam, k - r * lam) / s + r * r * k * (k - r * lam) / s * series +
           r * (k - r * lam) * std::max(lam, k - lam) / (s * (1.0 - lam)) + lam * r * (k - 1.0) / (s * (1.0 - lam));
}

struct Nonatomic {
    double lam, k, bt, a1, a2;
};

inline double alpha1(double lam, double k, double bt) { return 1.0 + std::log((k - bt) / (1.0 - bt)) / std::log(1.0 / lam); }
inline double alpha2_default(double lam, double k, double bt) { return 1.0 + std::log(k / bt) / std::log(1.0 / lam); }

inline double big_l(const Nonatomic& c, double r) {
    return c.bt * std::pow(r, c.a2) / (1.0 - (1.0 - c.bt) * std::pow(r, c.a1));
}

/// Nonatomic M written in gamma, term by term as displayed. When
/// last_term_split_factor is set, the last term also carries 1/D like the
/// others do in the r form.
inline double m_nonatomic_gamma(const Nonatomic& c, double g, double series, bool last_term_split_factor) {
    const double lam = c.lam, k = c.k, bt = c.bt;
    const double d = 1.0 - (1.0 - bt) * std::pow(g, -c.a1);
    const double t1 = std::max(lam, k - lam / g) / (g - lam);
    const double t2 = k * (k * g - lam - bt * (g - lam)) / (g * g * (g - lam) * d);
    const double t3 = bt * std::pow(g, -c.a2 - 2.0) * k * (k * g - lam) / ((g - lam) * d * d) * series;
    const double t4 = std::pow(g, -c.a2 - 1.0) * (k * g - lam) / ((g - lam) * d * d) *
                      (bt * std::max(lam, k - lam) / (1.0 - lam) +
                       (1.0 - bt) * (std::pow(g, -c.a1) - 1.0) / (1.0 / g - 1.0));
    const double t5 = std::pow(g, -c.a2) * lam * (k - 1.0) / ((1.0 - lam) * (g - lam) * d);
    double t6 = (k - lam - bt * (1.0 - lam)) / ((1.0 - lam) * (1.0 - g)) *
                ((std::pow(g, -c.a2) - 1.0) + (1.0 - bt) * (std::pow(g, -c.a1) - 1.0) / bt);
    if (last_term_split_factor) t6 /= d;
    return t1 + t2 + t3 + t4 + t5 + t6;
}

/// Nonatomic M written in r = 1/gamma.
inline double m_nonatomic_r(const Nonatomic& c, double r, double series) {
    const double lam = c.lam, k = c.k, bt = c.bt;
    const double ra1 = std::pow(r, c.a1), ra2 = std::pow(r, c.a2);
    const double d = 1.0 - (1.0 - bt) * ra1;
    const double s = 1.0 - r * lam;
    return r * std::max(lam, k - r * lam) / s + r * r * k * (k - r * lam - bt * s) / (s * d) +
           bt * ra2 * r * r * k * (k - r * lam) / (s * d * d) * series +
           ra2 * r * (k - r * lam) / (s * d * d) *
               (bt * std::max(lam, k - lam) / (1.0 - lam) + (1.0 - bt) * (ra1 - 1.0) / (r - 1.0)) +
           ra2 * r * lam * (k - 1.0) / ((1.0 - lam) * s * d) +
           r * (k - lam - bt * (1.0 - lam)) / ((1.0 - lam) * d) *
               ((ra2 - 1.0) / (r - 1.0) + (1.0 - bt) * (ra1 - 1.0) / (bt * (r - 1.0)));
}

/// Uniform draws on [lo, hi) from a seeded engine.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }

private:
    std::mt19937_64 eng_;
};

}  // namespace oracle
