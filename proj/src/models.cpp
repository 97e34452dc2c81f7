#include "ergocert/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ergocert/error.hpp"
#include "ergocert/numerics.hpp"

namespace ergo::models {

using numerics::std_normal_cdf;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct MhMinorization {
    double beta;
    double beta_tilde;
    std::optional<double> k_tilde;
};

MhMinorization mh_minorization(const MetropolisNormal& spec) {
    const double d = spec.d;
    if (spec.nu_variant == NuVariant::MtMeasure) {
        const double beta = kSqrt2 * std::exp(-d * d) * (std_normal_cdf(kSqrt2 * d) - 0.5);
        return {beta, beta, std::nullopt};
    }
    const double beta = 2.0 * (std_normal_cdf(2.0 * d) - std_normal_cdf(d));
    const double beta_tilde = beta + kSqrt2 * std::exp(d * d / 4.0) * (1.0 - std_normal_cdf(3.0 * d / kSqrt2));
    const double k_tilde = beta / beta_tilde + kSqrt2 / beta_tilde * std::exp((d - spec.s) * (d - spec.s) / 4.0) *
                                                   (1.0 - std_normal_cdf((3.0 * d - spec.s) / kSqrt2));
    return {beta, beta_tilde, k_tilde};
}

void validate_mh(const MetropolisNormal& spec) {
    require(std::isfinite(spec.d) && std::isfinite(spec.s) && spec.d > 0.0 && spec.s > 0.0,
            ErrorCode::InvalidParams, "Metropolis tuning requires d > 0 and s > 0");
}

void validate_contracting(const ContractingNormal& spec) {
    require(std::isfinite(spec.theta) && std::abs(spec.theta) < 1.0, ErrorCode::InvalidParams,
            "theta must lie in (-1, 1)");
    require(std::isfinite(spec.c) && spec.c > 1.0, ErrorCode::InvalidParams, "c must exceed 1");
}

}  // namespace

void ReflectingWalk::validate() const {
    require(std::isfinite(p) && p > 0.5 && p < 1.0, ErrorCode::InvalidParams, "walk requires 1/2 < p < 1");
    if (epsilon) {
        require(std::isfinite(*epsilon) && *epsilon > 0.0 && *epsilon < p, ErrorCode::InvalidParams,
                "boundary holding probability must lie in (0, p)");
    }
}

bounds::DriftMinorization reflecting_walk_params(const ReflectingWalk& spec) {
    spec.validate();
    const double p = spec.p;
    const double q = spec.q();
    bounds::DriftMinorization out;
    out.lambda = 2.0 * std::sqrt(p * q);
    out.atomic = true;
    out.beta_tilde = 1.0;
    if (spec.epsilon) {
        const double eps = *spec.epsilon;
        out.big_k = eps + (1.0 - eps) * std::sqrt(p / q);
        out.beta = eps;
    } else {
        out.big_k = p + std::sqrt(p * q);
        out.beta = p;
    }
    out.validate();
    return out;
}

double reflecting_walk_rho_exact(double p, double epsilon) {
    ReflectingWalk{p, epsilon}.validate();
    const double q = 1.0 - p;
    if (epsilon < (p - q) / (1.0 + std::sqrt(q / p))) {
        return (p * q + (p - epsilon) * (p - epsilon)) / (p - epsilon);
    }
    return 2.0 * std::sqrt(p * q);
}

double mh_normal_lambda(double x, double s) {
    require(std::isfinite(x) && std::isfinite(s) && x >= 0.0 && s >= 0.0, ErrorCode::InvalidParams,
            "lambda(x, s) needs finite x, s >= 0");
    const double half_s2 = s * s / 2.0;
    return std::exp(half_s2) * (std_normal_cdf(-s) - std_normal_cdf(-x - s)) +
           std::exp(half_s2 - 2.0 * s * x) * (std_normal_cdf(-x + s) - std_normal_cdf(-2.0 * x + s)) +
           std::exp((x - s) * (x - s) / 4.0) * std_normal_cdf((s - x) / kSqrt2) / kSqrt2 +
           std::exp((x * x - 6.0 * x * s + s * s) / 4.0) * std_normal_cdf((s - 3.0 * x) / kSqrt2) / kSqrt2 +
           std_normal_cdf(0.0) + std_normal_cdf(-2.0 * x) -
           std::exp(x * x / 4.0) * (std_normal_cdf(-x / kSqrt2) + std_normal_cdf(-3.0 * x / kSqrt2)) / kSqrt2;
}

bounds::DriftMinorization mh_normal_params(const MetropolisNormal& spec) {
    validate_mh(spec);
    const double lam = mh_normal_lambda(spec.d, spec.s);
    if (!(lam < 1.0)) {
        fail(ErrorCode::MonotoneViolation, "lambda(d, s) = " + std::to_string(lam) + " >= 1: no drift off C");
    }
    const auto minor = mh_minorization(spec);
    bounds::DriftMinorization out;
    out.lambda = lam;
    out.big_k = std::exp(spec.s * spec.d) * lam;
    out.beta = minor.beta;
    out.beta_tilde = minor.beta_tilde;
    out.atomic = false;
    if (minor.k_tilde) {
        out.nu_info = bounds::NuVIntegralBound{*minor.k_tilde};
    } else {
        out.nu_info = bounds::NuConcentratedOnC{};
    }
    out.validate();
    return out;
}

competitors::CouplingInput mh_coupling_input(const MetropolisNormal& spec) {
    const auto dm = mh_normal_params(spec);
    competitors::CouplingInput in;
    in.lambda = dm.lambda;
    in.b = mh_normal_lambda(0.0, spec.s) - dm.lambda;
    in.v_min_outside = std::exp(spec.s * spec.d);
    in.big_k = dm.big_k;
    in.beta_tilde = dm.beta_tilde;
    return in;
}

bounds::DriftMinorization contracting_params(const ContractingNormal& spec) {
    validate_contracting(spec);
    const double t2 = spec.theta * spec.theta;
    const double c2 = spec.c * spec.c;
    const double sd = std::sqrt(1.0 - t2);
    const double abs_t = std::abs(spec.theta);
    bounds::DriftMinorization out;
    out.lambda = t2 + 2.0 * (1.0 - t2) / (1.0 + c2);
    out.big_k = 2.0 + t2 * (c2 - 1.0);
    out.beta_tilde = 2.0 * (std_normal_cdf((1.0 + abs_t) * spec.c / sd) - std_normal_cdf(abs_t * spec.c / sd));
    out.beta = out.beta_tilde;
    out.atomic = false;
    out.nu_info = bounds::NuConcentratedOnC{};
    out.validate();
    return out;
}

competitors::CouplingInput contracting_coupling_input(const ContractingNormal& spec) {
    validate_contracting(spec);
    require(spec.c > std::numbers::sqrt2, ErrorCode::InvalidParams, "coupling requires c > sqrt(2)");
    const double t2 = spec.theta * spec.theta;
    const double c2 = spec.c * spec.c;
    competitors::CouplingInput in;
    in.lambda = t2 + 2.0 * (1.0 - t2) / (1.0 + c2);
    in.b = 2.0 * (1.0 - t2) * c2 / (1.0 + c2);
    in.v_min_outside = 1.0 + c2;
    in.big_k = 2.0 + t2 * (c2 - 1.0);
    in.beta_tilde = 2.0 * (1.0 - std_normal_cdf(std::abs(spec.theta) * spec.c / std::sqrt(1.0 - t2)));
    return in;
}

bounds::DriftMinorization binomial_modification(const bounds::DriftMinorization& p, double sup_v_on_c) {
    p.validate();
    require(std::isfinite(sup_v_on_c) && sup_v_on_c >= 1.0, ErrorCode::InvalidParams, "sup of V on C must be >= 1");
    bounds::DriftMinorization out = p;
    out.lambda = 0.5 * (1.0 + p.lambda);
    out.big_k = 0.5 * (sup_v_on_c + p.big_k);
    out.beta = 0.5 * p.beta;
    // A singleton atom stays an atom of the lazy kernel.
    out.beta_tilde = p.atomic ? 1.0 : 0.5 * p.beta_tilde;
    out.validate();
    return out;
}

double sup_v_on_c(const ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ReflectingWalk>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, MetropolisNormal>) {
                return std::exp(m.s * m.d);
            } else {
                return 1.0 + m.c * m.c;
            }
        },
        spec);
}

TruncatedChain walk_truncated_chain(const ReflectingWalk& spec, std::size_t n_states) {
    spec.validate();
    require(n_states >= 2, ErrorCode::TruncationTooSmall, "need at least two states");
    const double p = spec.p;
    const double q = spec.q();
    const double stay = spec.stay_at_zero();
    const double ratio = q / p;

    // Stationary law of the untruncated chain.
    const double pi0_inf = 1.0 / (1.0 + (1.0 - stay) / p / (1.0 - ratio));
    const double tail = pi0_inf * (1.0 - stay) / p * std::pow(ratio, static_cast<double>(n_states - 1)) / (1.0 - ratio);
    if (!(tail < 1e-12)) {
        fail(ErrorCode::TruncationTooSmall,
             "stationary tail mass " + std::to_string(tail) + " beyond " + std::to_string(n_states) + " states");
    }

    TruncatedChain tc;
    tc.n_states = n_states;
    tc.tail_mass = tail;
    tc.matrix.assign(n_states * n_states, 0.0);
    auto cell = [&](std::size_t i, std::size_t j) -> double& { return tc.matrix[i * n_states + j]; };
    cell(0, 0) = stay;
    cell(0, 1) = 1.0 - stay;
    for (std::size_t i = 1; i < n_states; ++i) {
        cell(i, i - 1) = p;
        if (i + 1 < n_states) {
            cell(i, i + 1) = q;
        } else {
            cell(i, i) = q;
        }
    }

    tc.v.resize(n_states);
    tc.log_v.resize(n_states);
    const double log_v_step = 0.5 * std::log(p / q);
    for (std::size_t i = 0; i < n_states; ++i) {
        tc.log_v[i] = log_v_step * static_cast<double>(i);
        tc.v[i] = std::exp(tc.log_v[i]);
    }
    tc.c_set = {0};

    // Detailed balance holds on the truncated chain as well.
    tc.log_pi.resize(n_states);
    const double log_ratio = std::log(ratio);
    tc.log_pi[0] = 0.0;
    tc.log_pi[1] = std::log((1.0 - stay) / p);
    for (std::size_t i = 2; i < n_states; ++i) tc.log_pi[i] = tc.log_pi[i - 1] + log_ratio;
    double total = 0.0;
    for (double lw : tc.log_pi) total += std::exp(lw);
    const double log_total = std::log(total);
    tc.pi.resize(n_states);
    for (std::size_t i = 0; i < n_states; ++i) {
        tc.log_pi[i] -= log_total;
        tc.pi[i] = std::exp(tc.log_pi[i]);
    }
    return tc;
}

}  // namespace ergo::models
