#pragma once

// Quantitative versions of Kendall's renewal theorem: lower bounds on the
// radius of convergence of sum_n (u_n - u_inf) z^n, and bounds on the series
// itself, from the increment-law constraints b_1 >= beta and
// sum_n b_n R^n <= L.

namespace ergo::kendall {

struct KendallParams {
    double beta = 0.0;    // lower bound on b_1
    double big_r = 0.0;   // radius R > 1 at which the increment generating function is controlled
    double big_l = 0.0;   // bound L on sum_n b_n R^n

    /// N = (L - 1) / (R - 1)
    double n_ratio() const { return (big_l - 1.0) / (big_r - 1.0); }

    void validate() const;
};

enum class Regime { General, Reversible, ReversiblePositive };

/// A certified radius together with the matching series bound.
struct KendallRate {
    double r_star = 0.0;
    Regime regime = Regime::General;
    double beta_tilde = 1.0;   // enters the reversible series bound
    KendallParams params;

    /// Bound on the renewal series at 1 < r < r_star (k1 or k2_series_bound).
    double series_bound_at(double r) const;
};

/// Radius and series bound for the requested regime.
KendallRate rate(const KendallParams& p, Regime regime, double beta_tilde = 1.0);

/// Certified radius for the general (non-reversible) case: the unique root in
/// (1, R) of (r - 1) / (r log(R/r)^2) = e^2 beta / (8 N).
double solve_r1(const KendallParams& p);

/// Left side minus right side of the defining equation of solve_r1.
double r1_residual(double r, const KendallParams& p);

/// Bound on sup_{|z| <= r} |sum_n (u_n - u_inf) z^n| for 1 < r < solve_r1(p).
/// Throws OutOfRange when r <= 1 or the denominator is no longer positive.
double k1(double r, const KendallParams& p);

/// Reversible radius: root in (1, R) of 1 + 2 beta r = r^(log L / log R) when
/// L > 1 + 2 beta R, and R otherwise.
double solve_r2_reversible(const KendallParams& p);

/// Reversible and positive: the radius is R itself.
double r2_positive(const KendallParams& p);

/// 1 + sqrt(beta_tilde) r / (1 - r / r2), for 1 < r < r2.
double k2_series_bound(double r, double r2, double beta_tilde);

/// The convexity relaxation of the atomic reversible rate:
/// 1 - 2 beta (1 - lambda) / (K - lambda) if K > lambda + 2 beta, else lambda.
double rho_tilde_reversible_atomic(double lambda, double big_k, double beta);

}  // namespace ergo::kendall
