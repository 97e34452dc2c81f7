#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ergocert/kendall.hpp"

namespace ergo::bounds {

/// No side information about the minorizing measure.
struct NuNone {};
/// nu(C) = 1.
struct NuConcentratedOnC {};
/// nu(C) + integral of V over the complement of C against nu is at most k_tilde.
struct NuVIntegralBound {
    double k_tilde = 1.0;
};

using NuInfo = std::variant<NuNone, NuConcentratedOnC, NuVIntegralBound>;

/// One-step drift and minorization constants of a chain:
///   P(x, .) >= beta_tilde nu(.) on C,
///   PV <= lambda V off C and PV <= K on C,
///   beta_tilde nu(C) >= beta.
struct DriftMinorization {
    double lambda = 0.0;
    double big_k = 0.0;
    double beta = 0.0;
    double beta_tilde = 1.0;
    bool atomic = true;
    NuInfo nu_info = NuNone{};

    void validate() const;
};

enum class Symmetry { General, Reversible, ReversiblePositive };

std::string_view to_string(Symmetry s) noexcept;
std::optional<Symmetry> symmetry_from_string(std::string_view s) noexcept;
/// "thm1.1", "thm1.2" or "thm1.3".
std::string_view method_tag(Symmetry s) noexcept;

struct DerivedExponents {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double r0 = 1.0;
    double pole = 0.0;   // (1 - beta_tilde)^(-1/alpha1), where L(r) diverges
};

struct Diagnostic {
    std::string name;
    double value;
};

/// A rate together with the intermediates that produced it.
struct RateResult {
    double rho = 0.0;
    std::vector<Diagnostic> diagnostics;
    double r_tilde = 0.0;   // nonatomic general case only: the R at which the Kendall bound is applied
};

/// Geometric convergence certificate: for every |g| <= V,
/// |P^n g(x) - pi(g)| <= M V(x) gamma^n.
struct Certificate {
    DriftMinorization constants;
    Symmetry symmetry = Symmetry::General;
    double rho = 0.0;
    double gamma = 0.0;
    double big_m = 0.0;
    std::vector<Diagnostic> diagnostics;

    std::string_view method() const noexcept { return method_tag(symmetry); }
    std::optional<double> diagnostic(std::string_view name) const;
};

DerivedExponents derived_exponents(const DriftMinorization& p);

/// L(r) = beta_tilde r^alpha2 / (1 - (1 - beta_tilde) r^alpha1), for 1 <= r below the pole.
double big_l(double r, const DriftMinorization& p);
double big_l(double r, const DriftMinorization& p, const DerivedExponents& ex);

RateResult rho_general(const DriftMinorization& p);
double m_general(const DriftMinorization& p, double gamma);

RateResult rho_reversible(const DriftMinorization& p);
double m_reversible(const DriftMinorization& p, double gamma);

RateResult rho_positive(const DriftMinorization& p);
double m_positive(const DriftMinorization& p, double gamma);

struct RegenerationBounds {
    double g_bound;                      // E^x r^tau
    double h_bound;                      // E^x sum_{n<=tau} r^n V(X_n)
    std::optional<double> h_diff_bound;  // (H(r,x) - r H(1,x)) / (r - 1), x in C and r > 1 only
};

/// Regeneration-time bounds under the drift condition, for 1 <= r <= 1/lambda.
/// At r = 1/lambda the H bounds are infinite.
RegenerationBounds regeneration_bounds(double r, const DriftMinorization& p, double v_x, bool x_in_c);

struct SplitChainBounds {
    double g_tilde;    // sup over C of the failed-regeneration generating function
    double gbar_a1;    // split-chain return generating function from the atom; equals L(r)
    double hbar_a1;
    double hbar_diff;
};

/// Split-chain bounds for non-atomic constants, 1 < r <= 1/lambda. Entries
/// other than g_tilde are infinite once r reaches R0.
SplitChainBounds split_chain_bounds(double r, const DriftMinorization& p);

/// Dispatches to the theorem matching the symmetry. A missing gamma defaults
/// to (1 + rho) / 2.
Certificate certificate(const DriftMinorization& p, Symmetry symmetry, std::optional<double> gamma = std::nullopt);

/// L^2(pi) contraction factor for reversible chains (same rho as the
/// reversible certificates). NotReversible for Symmetry::General.
double l2_contraction(const DriftMinorization& p, Symmetry symmetry);

/// The Kendall constraints (R, L) implied by atomic constants: R = 1/lambda, L = K/lambda.
kendall::KendallParams atomic_kendall_params(const DriftMinorization& p);

}  // namespace ergo::bounds
