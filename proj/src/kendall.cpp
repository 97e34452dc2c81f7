#include "ergocert/kendall.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ergocert/error.hpp"
#include "ergocert/numerics.hpp"

namespace ergo::kendall {

namespace {

constexpr double kE2 = std::numbers::e * std::numbers::e;

// D(r) = 8 N e^-2 (r - 1) r^-1 log(R/r)^-2, the term that consumes beta.
double consumed(double r_minus_1, const KendallParams& p) {
    const double log_ratio = std::log(p.big_r) - std::log1p(r_minus_1);
    return 8.0 * p.n_ratio() / kE2 * r_minus_1 / (1.0 + r_minus_1) / (log_ratio * log_ratio);
}

}  // namespace

void KendallParams::validate() const {
    require(std::isfinite(beta) && std::isfinite(big_r) && std::isfinite(big_l), ErrorCode::InvalidParams,
            "Kendall parameters must be finite");
    require(big_r > 1.0, ErrorCode::InvalidParams, "R must exceed 1");
    require(beta > 0.0 && beta <= 1.0, ErrorCode::InvalidParams, "beta must lie in (0, 1]");
    require(big_l >= 1.0, ErrorCode::InvalidParams, "L must be at least 1");
    require(n_ratio() >= 1.0, ErrorCode::InvalidParams, "N = (L-1)/(R-1) must be at least 1");
    require(beta * big_r <= big_l, ErrorCode::InvalidParams, "beta R exceeds L: constraints are contradictory");
}

double r1_residual(double r, const KendallParams& p) {
    const double log_ratio = std::log(p.big_r / r);
    return (r - 1.0) / (r * log_ratio * log_ratio) - kE2 * p.beta / (8.0 * p.n_ratio());
}

double solve_r1(const KendallParams& p) {
    p.validate();
    // Solve in t = r - 1 so that radii very close to 1 keep full relative precision.
    const double log_r = std::log(p.big_r);
    const auto lhs = [log_r](double t) {
        const double log_ratio = log_r - std::log1p(t);
        if (log_ratio <= 0.0) return std::numeric_limits<double>::infinity();
        return t / ((1.0 + t) * log_ratio * log_ratio);
    };
    const double target = kE2 * p.beta / (8.0 * p.n_ratio());
    const double t = numerics::solve_monotone(lhs, target, {0.0, p.big_r - 1.0, 1e-15, 400});
    return 1.0 + t;
}

double k1(double r, const KendallParams& p) {
    p.validate();
    require(r > 1.0 && r < p.big_r, ErrorCode::OutOfRange, "k1 requires 1 < r < R");
    const double r_minus_1 = r - 1.0;
    const double log_ratio = std::log(p.big_r / r);
    const double denom = p.beta - consumed(r_minus_1, p);
    require(denom > 0.0, ErrorCode::OutOfRange, "k1 requires r < R1 (denominator is not positive)");
    const double numer = p.beta + 2.0 * std::log(p.n_ratio()) / log_ratio;
    return (1.0 + numer / denom) / r_minus_1;
}

double solve_r2_reversible(const KendallParams& p) {
    p.validate();
    if (!(p.big_l > 1.0 + 2.0 * p.beta * p.big_r)) return p.big_r;
    const double exponent = std::log(p.big_l) / std::log(p.big_r);
    // g(r) = r^e - 2 beta r: convex, below 1 at r = 1 and above 1 at r = R.
    const auto g = [&](double r) { return std::pow(r, exponent) - 2.0 * p.beta * r; };
    return numerics::solve_monotone(g, 1.0, {1.0, p.big_r, 1e-13, 400});
}

double r2_positive(const KendallParams& p) { return p.big_r; }

double k2_series_bound(double r, double r2, double beta_tilde) {
    require(beta_tilde > 0.0 && beta_tilde <= 1.0, ErrorCode::InvalidParams, "beta_tilde must lie in (0, 1]");
    require(r > 1.0 && r < r2, ErrorCode::OutOfRange, "k2 requires 1 < r < R2");
    return 1.0 + std::sqrt(beta_tilde) * r / (1.0 - r / r2);
}

double rho_tilde_reversible_atomic(double lambda, double big_k, double beta) {
    require(lambda > 0.0 && lambda < 1.0, ErrorCode::InvalidParams, "lambda must lie in (0, 1)");
    require(big_k >= 1.0 && big_k > lambda, ErrorCode::InvalidParams, "K must be at least 1 and exceed lambda");
    require(beta > 0.0 && beta <= 1.0, ErrorCode::InvalidParams, "beta must lie in (0, 1]");
    if (big_k > lambda + 2.0 * beta) return 1.0 - 2.0 * beta * (1.0 - lambda) / (big_k - lambda);
    return lambda;
}

double KendallRate::series_bound_at(double r) const {
    if (regime == Regime::General) return k1(r, params);
    return k2_series_bound(r, r_star, beta_tilde);
}

KendallRate rate(const KendallParams& p, Regime regime, double beta_tilde) {
    KendallRate out;
    out.params = p;
    out.regime = regime;
    out.beta_tilde = beta_tilde;
    switch (regime) {
        case Regime::General: out.r_star = solve_r1(p); break;
        case Regime::Reversible: out.r_star = solve_r2_reversible(p); break;
        case Regime::ReversiblePositive:
            p.validate();
            out.r_star = r2_positive(p);
            break;
    }
    return out;
}

}  // namespace ergo::kendall
