#include "ergocert/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergocert/error.hpp"
#include "ergocert/numerics.hpp"

namespace ergo::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Search window for the nonatomic general-case radius, kept away from R = 1
// and from R0 (where L may diverge).
constexpr double kEdgeGap = 1e-9;

bool is_finite_all(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

// Atomic M at gamma with a given bound on the renewal series at 1/gamma.
double m_atomic(const DriftMinorization& p, double gamma, double series_bound) {
    const double lam = p.lambda;
    const double k = p.big_k;
    const double k_shift = k - lam / gamma;
    const double gl = gamma - lam;
    return std::max(lam, k_shift) / gl + k * k_shift / (gamma * gl) * series_bound +
           k_shift * std::max(lam, k - lam) / (gl * (1.0 - lam)) + lam * (k - 1.0) / (gl * (1.0 - lam));
}

// Nonatomic M at gamma. Every term carries the split-chain factor 1/d,
// including the last one.
double m_nonatomic(const DriftMinorization& p, const DerivedExponents& ex, double gamma, double series_bound) {
    const double lam = p.lambda;
    const double k = p.big_k;
    const double bt = p.beta_tilde;
    const double g1 = std::pow(gamma, -ex.alpha1);
    const double g2 = std::pow(gamma, -ex.alpha2);
    const double d = 1.0 - (1.0 - bt) * g1;
    const double gl = gamma - lam;
    const double kg = k * gamma - lam;

    const double t1 = std::max(lam, k - lam / gamma) / gl;
    const double t2 = k * (kg - bt * gl) / (gamma * gamma * gl * d);
    const double t3 = bt * g2 / (gamma * gamma) * k * kg / (gl * d * d) * series_bound;
    const double t4 = g2 / gamma * kg / (gl * d * d) *
                      (bt * std::max(lam, k - lam) / (1.0 - lam) + (1.0 - bt) * (g1 - 1.0) / (1.0 / gamma - 1.0));
    const double t5 = g2 * lam * (k - 1.0) / ((1.0 - lam) * gl * d);
    const double t6 = (k - lam - bt * (1.0 - lam)) / ((1.0 - lam) * (1.0 - gamma) * d) *
                      ((g2 - 1.0) + (1.0 - bt) * (g1 - 1.0) / bt);
    return t1 + t2 + t3 + t4 + t5 + t6;
}

void require_gamma(double rho, double gamma) {
    require(std::isfinite(gamma) && gamma > rho && gamma < 1.0, ErrorCode::GammaOutOfRange,
            "gamma must lie in (rho, 1) with rho = " + std::to_string(rho));
}

double checked_m(double m) {
    require(std::isfinite(m) && m > 0.0, ErrorCode::GammaOutOfRange, "M is not finite at this gamma");
    return m;
}

std::vector<Diagnostic> exponent_diagnostics(const DerivedExponents& ex) {
    return {{"r0", ex.r0}, {"alpha1", ex.alpha1}, {"alpha2", ex.alpha2}};
}

// Kendall constraints for the split chain at radius R.
kendall::KendallParams split_kendall_params(double big_r, const DriftMinorization& p, const DerivedExponents& ex) {
    return {p.beta, big_r, big_l(big_r, p, ex)};
}

double m_general_from(const DriftMinorization& p, const RateResult& rate, double gamma) {
    require_gamma(rate.rho, gamma);
    try {
        if (p.atomic) {
            return checked_m(m_atomic(p, gamma, kendall::k1(1.0 / gamma, atomic_kendall_params(p))));
        }
        const auto ex = derived_exponents(p);
        const double series = kendall::k1(1.0 / gamma, split_kendall_params(rate.r_tilde, p, ex));
        return checked_m(m_nonatomic(p, ex, gamma, series));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::OutOfRange) fail(ErrorCode::GammaOutOfRange, e.what());
        throw;
    }
}

double m_reversible_from(const DriftMinorization& p, double rho, double gamma) {
    require_gamma(rho, gamma);
    if (p.atomic) {
        return checked_m(m_atomic(p, gamma, kendall::k2_series_bound(1.0 / gamma, 1.0 / rho, 1.0)));
    }
    const auto ex = derived_exponents(p);
    const double series = kendall::k2_series_bound(1.0 / gamma, 1.0 / rho, p.beta_tilde);
    return checked_m(m_nonatomic(p, ex, gamma, series));
}

}  // namespace

void DriftMinorization::validate() const {
    require(is_finite_all({lambda, big_k, beta, beta_tilde}), ErrorCode::InvalidParams, "constants must be finite");
    require(lambda > 0.0 && lambda < 1.0, ErrorCode::InvalidParams, "lambda must lie in (0, 1)");
    require(big_k >= 1.0, ErrorCode::InvalidParams, "K must be at least 1");
    require(big_k > lambda, ErrorCode::InvalidParams, "K must exceed lambda");
    require(beta > 0.0 && beta <= beta_tilde && beta_tilde <= 1.0, ErrorCode::InvalidParams,
            "require 0 < beta <= beta_tilde <= 1");
    if (atomic) {
        require(beta_tilde == 1.0, ErrorCode::InvalidParams, "atomic constants require beta_tilde = 1");
    } else {
        require(beta_tilde < 1.0, ErrorCode::InvalidParams, "non-atomic constants require beta_tilde < 1");
        require(big_k > beta_tilde, ErrorCode::InvalidParams, "non-atomic constants require K > beta_tilde");
    }
    if (const auto* vb = std::get_if<NuVIntegralBound>(&nu_info)) {
        require(std::isfinite(vb->k_tilde) && vb->k_tilde >= 1.0, ErrorCode::InvalidParams,
                "k_tilde must be at least 1");
    }
}

std::string_view to_string(Symmetry s) noexcept {
    switch (s) {
        case Symmetry::General: return "general";
        case Symmetry::Reversible: return "reversible";
        case Symmetry::ReversiblePositive: return "reversible-positive";
    }
    return "general";
}

std::optional<Symmetry> symmetry_from_string(std::string_view s) noexcept {
    if (s == "general") return Symmetry::General;
    if (s == "reversible") return Symmetry::Reversible;
    if (s == "reversible-positive") return Symmetry::ReversiblePositive;
    return std::nullopt;
}

std::string_view method_tag(Symmetry s) noexcept {
    switch (s) {
        case Symmetry::General: return "thm1.1";
        case Symmetry::Reversible: return "thm1.2";
        case Symmetry::ReversiblePositive: return "thm1.3";
    }
    return "thm1.1";
}

std::optional<double> Certificate::diagnostic(std::string_view name) const {
    for (const auto& d : diagnostics) {
        if (d.name == name) return d.value;
    }
    return std::nullopt;
}

kendall::KendallParams atomic_kendall_params(const DriftMinorization& p) {
    return {p.beta, 1.0 / p.lambda, p.big_k / p.lambda};
}

DerivedExponents derived_exponents(const DriftMinorization& p) {
    p.validate();
    require(!p.atomic, ErrorCode::InvalidParams, "derived exponents apply to non-atomic constants only");
    const double log_inv_lambda = -std::log(p.lambda);
    DerivedExponents ex;
    ex.alpha1 = 1.0 + std::log((p.big_k - p.beta_tilde) / (1.0 - p.beta_tilde)) / log_inv_lambda;
    if (std::holds_alternative<NuConcentratedOnC>(p.nu_info)) {
        ex.alpha2 = 1.0;
    } else if (const auto* vb = std::get_if<NuVIntegralBound>(&p.nu_info)) {
        ex.alpha2 = 1.0 + std::log(vb->k_tilde) / log_inv_lambda;
    } else {
        ex.alpha2 = 1.0 + std::log(p.big_k / p.beta_tilde) / log_inv_lambda;
    }
    ex.pole = std::pow(1.0 - p.beta_tilde, -1.0 / ex.alpha1);
    ex.r0 = std::min(1.0 / p.lambda, ex.pole);
    return ex;
}

double big_l(double r, const DriftMinorization& p, const DerivedExponents& ex) {
    require(r >= 1.0, ErrorCode::OutOfRange, "L(r) requires r >= 1");
    const double denom = 1.0 - (1.0 - p.beta_tilde) * std::pow(r, ex.alpha1);
    require(denom > 0.0, ErrorCode::OutOfRange, "L(r) requires r below (1 - beta_tilde)^(-1/alpha1)");
    return p.beta_tilde * std::pow(r, ex.alpha2) / denom;
}

double big_l(double r, const DriftMinorization& p) { return big_l(r, p, derived_exponents(p)); }

RateResult rho_general(const DriftMinorization& p) {
    p.validate();
    RateResult out;
    if (p.atomic) {
        const double r1 = kendall::solve_r1(atomic_kendall_params(p));
        out.rho = 1.0 / r1;
        out.diagnostics = {{"r1", r1}};
        return out;
    }

    const auto ex = derived_exponents(p);
    const double hi = ex.r0 - kEdgeGap;
    require(hi > 1.0 + kEdgeGap, ErrorCode::InvalidParams, "R0 is too close to 1 for the radius search");
    const auto objective = [&](double big_r) {
        if (big_r <= 1.0) return -kInf;
        try {
            return kendall::solve_r1(split_kendall_params(big_r, p, ex));
        } catch (const Error&) {
            return -kInf;
        }
    };
    numerics::MaximizeOptions opts;
    opts.spacing = numerics::GridSpacing::LogFromLo;
    opts.log_min_offset = kEdgeGap / (hi - 1.0);
    const auto best = numerics::maximize_scalar(objective, 1.0, hi, opts);

    out.rho = 1.0 / best.value;
    out.r_tilde = best.argmax;
    out.diagnostics = {{"r1", best.value}, {"r_tilde", best.argmax}, {"l_r_tilde", big_l(best.argmax, p, ex)}};
    for (auto& d : exponent_diagnostics(ex)) out.diagnostics.push_back(std::move(d));
    return out;
}

double m_general(const DriftMinorization& p, double gamma) { return m_general_from(p, rho_general(p), gamma); }

RateResult rho_reversible(const DriftMinorization& p) {
    p.validate();
    RateResult out;
    if (p.atomic) {
        const double r2 = kendall::solve_r2_reversible(atomic_kendall_params(p));
        // 1 / (1 / lambda) can round below lambda.
        out.rho = std::max(p.lambda, 1.0 / r2);
        out.diagnostics = {{"r2", r2}};
        return out;
    }

    const auto ex = derived_exponents(p);
    // g(r) = 1 + 2 beta r - L(r): concave, g(1) = 2 beta > 0.
    const auto g = [&](double r) {
        const double denom = 1.0 - (1.0 - p.beta_tilde) * std::pow(r, ex.alpha1);
        if (denom <= 0.0) return -kInf;
        return 1.0 + 2.0 * p.beta * r - p.beta_tilde * std::pow(r, ex.alpha2) / denom;
    };
    double r2 = ex.r0;
    if (ex.pole <= 1.0 / p.lambda || g(ex.r0) < 0.0) {
        r2 = numerics::solve_monotone(g, 0.0, {1.0, ex.r0, 1e-13, 400});
    }
    out.rho = std::max(p.lambda, 1.0 / r2);
    out.diagnostics = {{"r2", r2}};
    for (auto& d : exponent_diagnostics(ex)) out.diagnostics.push_back(std::move(d));
    return out;
}

double m_reversible(const DriftMinorization& p, double gamma) {
    return m_reversible_from(p, rho_reversible(p).rho, gamma);
}

RateResult rho_positive(const DriftMinorization& p) {
    p.validate();
    RateResult out;
    if (p.atomic) {
        out.rho = p.lambda;
        out.diagnostics = {{"r2", 1.0 / p.lambda}};
        return out;
    }
    const auto ex = derived_exponents(p);
    out.rho = std::max(p.lambda, 1.0 / ex.r0);
    out.diagnostics = {{"r2", ex.r0}};
    for (auto& d : exponent_diagnostics(ex)) out.diagnostics.push_back(std::move(d));
    return out;
}

double m_positive(const DriftMinorization& p, double gamma) {
    return m_reversible_from(p, rho_positive(p).rho, gamma);
}

RegenerationBounds regeneration_bounds(double r, const DriftMinorization& p, double v_x, bool x_in_c) {
    p.validate();
    require(r >= 1.0 && r <= 1.0 / p.lambda, ErrorCode::OutOfRange, "regeneration bounds need 1 <= r <= 1/lambda");
    require(v_x >= 1.0, ErrorCode::InvalidParams, "V(x) must be at least 1");
    const double lam = p.lambda;
    const double k = p.big_k;
    const double slack = 1.0 - r * lam;

    RegenerationBounds out{};
    if (x_in_c) {
        out.g_bound = r * k;
        out.h_bound = slack > 0.0 ? r * (k - r * lam) / slack : kInf;
        if (r > 1.0) out.h_diff_bound = slack > 0.0 ? lam * r * (k - 1.0) / ((1.0 - lam) * slack) : kInf;
    } else {
        out.g_bound = v_x;
        out.h_bound = slack > 0.0 ? r * lam * v_x / slack : kInf;
    }
    return out;
}

SplitChainBounds split_chain_bounds(double r, const DriftMinorization& p) {
    const auto ex = derived_exponents(p);
    require(r > 1.0 && r <= 1.0 / p.lambda, ErrorCode::OutOfRange, "split-chain bounds need 1 < r <= 1/lambda");
    const double lam = p.lambda;
    const double k = p.big_k;
    const double bt = p.beta_tilde;

    SplitChainBounds out{};
    out.g_tilde = std::pow(r, ex.alpha1);
    if (r >= ex.r0) {
        out.gbar_a1 = out.hbar_a1 = out.hbar_diff = kInf;
        return out;
    }
    const double ra1 = std::pow(r, ex.alpha1);
    const double ra2 = std::pow(r, ex.alpha2);
    const double d = 1.0 - (1.0 - bt) * ra1;
    const double slack = 1.0 - r * lam;
    out.gbar_a1 = bt * ra2 / d;
    out.hbar_a1 = ra2 * r * (k - r * lam) / (slack * d);
    out.hbar_diff = ra2 * r * lam * (k - 1.0) / ((1.0 - lam) * slack * d) +
                    r * (k - lam - bt * (1.0 - lam)) / ((1.0 - lam) * d) *
                        ((ra2 - 1.0) / (r - 1.0) + (1.0 - bt) * (ra1 - 1.0) / (bt * (r - 1.0)));
    return out;
}

Certificate certificate(const DriftMinorization& p, Symmetry symmetry, std::optional<double> gamma) {
    p.validate();
    Certificate cert;
    cert.constants = p;
    cert.symmetry = symmetry;

    RateResult rate;
    switch (symmetry) {
        case Symmetry::General: rate = rho_general(p); break;
        case Symmetry::Reversible: rate = rho_reversible(p); break;
        case Symmetry::ReversiblePositive: rate = rho_positive(p); break;
    }
    cert.rho = rate.rho;
    cert.gamma = gamma.value_or(0.5 * (1.0 + rate.rho));
    cert.diagnostics = std::move(rate.diagnostics);

    if (symmetry == Symmetry::General) {
        cert.big_m = m_general_from(p, rate, cert.gamma);
        const auto kp = p.atomic ? atomic_kendall_params(p)
                                 : split_kendall_params(rate.r_tilde, p, derived_exponents(p));
        cert.diagnostics.push_back({"k1", kendall::k1(1.0 / cert.gamma, kp)});
    } else {
        cert.big_m = m_reversible_from(p, cert.rho, cert.gamma);
        const double bt = p.atomic ? 1.0 : p.beta_tilde;
        cert.diagnostics.push_back({"k2", kendall::k2_series_bound(1.0 / cert.gamma, 1.0 / cert.rho, bt)});
    }
    return cert;
}

double l2_contraction(const DriftMinorization& p, Symmetry symmetry) {
    switch (symmetry) {
        case Symmetry::General:
            fail(ErrorCode::NotReversible, "the L2 contraction factor needs a reversible chain");
        case Symmetry::Reversible: return rho_reversible(p).rho;
        case Symmetry::ReversiblePositive: return rho_positive(p).rho;
    }
    fail(ErrorCode::InvalidParams, "unknown symmetry");
}

}  // namespace ergo::bounds
