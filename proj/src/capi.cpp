#include "ergocert/ergocert.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "ergocert/app.hpp"
#include "ergocert/competitors.hpp"
#include "ergocert/error.hpp"

struct ergo_certificate {
    ergo::bounds::Certificate cert;
};

namespace {

thread_local std::string g_last_error;

ergo_status status_of(ergo::ErrorCode code) {
    using ergo::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidParams: return ERGO_ERR_INVALID_PARAMS;
        case ErrorCode::OutOfRange: return ERGO_ERR_OUT_OF_RANGE;
        case ErrorCode::GammaOutOfRange: return ERGO_ERR_GAMMA_OUT_OF_RANGE;
        case ErrorCode::NoSignChange: return ERGO_ERR_NO_SIGN_CHANGE;
        case ErrorCode::NoConvergence: return ERGO_ERR_NO_CONVERGENCE;
        case ErrorCode::EmptyDomain: return ERGO_ERR_EMPTY_DOMAIN;
        case ErrorCode::NotReversible: return ERGO_ERR_NOT_REVERSIBLE;
        case ErrorCode::CouplingFails: return ERGO_ERR_COUPLING_FAILS;
        case ErrorCode::MonotoneViolation: return ERGO_ERR_MONOTONE_VIOLATION;
        case ErrorCode::TruncationTooSmall: return ERGO_ERR_TRUNCATION_TOO_SMALL;
        case ErrorCode::PeriodicSupport: return ERGO_ERR_PERIODIC_SUPPORT;
        case ErrorCode::HypothesisViolated: return ERGO_ERR_HYPOTHESIS_VIOLATED;
    }
    return ERGO_ERR_INTERNAL;
}

template <class F>
ergo_status guarded(F&& f) {
    g_last_error.clear();
    try {
        f();
        return ERGO_OK;
    } catch (const ergo::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = std::string("InvalidParams: malformed JSON: ") + e.what();
        return ERGO_ERR_INVALID_PARAMS;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ERGO_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return ERGO_ERR_INTERNAL;
    }
}

ergo_status null_argument(const char* what) {
    g_last_error = std::string("null argument: ") + what;
    return ERGO_ERR_NULL_ARGUMENT;
}

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ergo::bounds::DriftMinorization to_cpp(const ergo_constants& c) {
    ergo::bounds::DriftMinorization p;
    p.lambda = c.lambda;
    p.big_k = c.big_k;
    p.beta = c.beta;
    p.beta_tilde = c.beta_tilde;
    p.atomic = c.atomic != 0;
    switch (c.nu_kind) {
        case ERGO_NU_NONE: p.nu_info = ergo::bounds::NuNone{}; break;
        case ERGO_NU_CONCENTRATED_ON_C: p.nu_info = ergo::bounds::NuConcentratedOnC{}; break;
        case ERGO_NU_V_INTEGRAL_BOUND: p.nu_info = ergo::bounds::NuVIntegralBound{c.k_tilde}; break;
        default: ergo::fail(ergo::ErrorCode::InvalidParams, "unknown nu kind");
    }
    return p;
}

ergo_constants to_c(const ergo::bounds::DriftMinorization& p) {
    ergo_constants c{};
    c.lambda = p.lambda;
    c.big_k = p.big_k;
    c.beta = p.beta;
    c.beta_tilde = p.beta_tilde;
    c.atomic = p.atomic ? 1 : 0;
    c.nu_kind = ERGO_NU_NONE;
    c.k_tilde = 0.0;
    if (std::holds_alternative<ergo::bounds::NuConcentratedOnC>(p.nu_info)) c.nu_kind = ERGO_NU_CONCENTRATED_ON_C;
    if (const auto* vb = std::get_if<ergo::bounds::NuVIntegralBound>(&p.nu_info)) {
        c.nu_kind = ERGO_NU_V_INTEGRAL_BOUND;
        c.k_tilde = vb->k_tilde;
    }
    return c;
}

ergo::app::RenderOptions render_options(ergo_format format, int precision) {
    ergo::app::RenderOptions opts;
    switch (format) {
        case ERGO_FORMAT_TEXT: opts.format = ergo::app::Format::Text; break;
        case ERGO_FORMAT_JSON: opts.format = ergo::app::Format::Json; break;
        case ERGO_FORMAT_CSV: opts.format = ergo::app::Format::Csv; break;
        default: ergo::fail(ergo::ErrorCode::InvalidParams, "unknown output format");
    }
    ergo::require(precision >= 1 && precision <= 17, ergo::ErrorCode::InvalidParams,
                  "precision must be between 1 and 17");
    opts.precision = precision;
    return opts;
}

ergo::bounds::Symmetry to_cpp(ergo_symmetry s) {
    switch (s) {
        case ERGO_SYMMETRY_GENERAL: return ergo::bounds::Symmetry::General;
        case ERGO_SYMMETRY_REVERSIBLE: return ergo::bounds::Symmetry::Reversible;
        case ERGO_SYMMETRY_REVERSIBLE_POSITIVE: return ergo::bounds::Symmetry::ReversiblePositive;
    }
    ergo::fail(ergo::ErrorCode::InvalidParams, "unknown symmetry");
}

}  // namespace

extern "C" {

const char* ergo_status_name(ergo_status status) {
    switch (status) {
        case ERGO_OK: return "Ok";
        case ERGO_ERR_INVALID_PARAMS: return "InvalidParams";
        case ERGO_ERR_OUT_OF_RANGE: return "OutOfRange";
        case ERGO_ERR_GAMMA_OUT_OF_RANGE: return "GammaOutOfRange";
        case ERGO_ERR_NO_SIGN_CHANGE: return "NoSignChange";
        case ERGO_ERR_NO_CONVERGENCE: return "NoConvergence";
        case ERGO_ERR_EMPTY_DOMAIN: return "EmptyDomain";
        case ERGO_ERR_NOT_REVERSIBLE: return "NotReversible";
        case ERGO_ERR_COUPLING_FAILS: return "CouplingFails";
        case ERGO_ERR_MONOTONE_VIOLATION: return "MonotoneViolation";
        case ERGO_ERR_TRUNCATION_TOO_SMALL: return "TruncationTooSmall";
        case ERGO_ERR_PERIODIC_SUPPORT: return "PeriodicSupport";
        case ERGO_ERR_HYPOTHESIS_VIOLATED: return "HypothesisViolated";
        case ERGO_ERR_NULL_ARGUMENT: return "NullArgument";
        case ERGO_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* ergo_last_error(void) { return g_last_error.c_str(); }

void ergo_string_free(char* s) { std::free(s); }

ergo_status ergo_certificate_compute(const ergo_constants* constants, ergo_symmetry symmetry, const double* gamma,
                                     ergo_certificate** out) {
    if (!constants) return null_argument("constants");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        std::optional<double> g;
        if (gamma) g = *gamma;
        auto cert = ergo::bounds::certificate(to_cpp(*constants), to_cpp(symmetry), g);
        *out = new ergo_certificate{std::move(cert)};
    });
}

void ergo_certificate_free(ergo_certificate* cert) { delete cert; }

ergo_status ergo_certificate_rho(const ergo_certificate* cert, double* out) {
    if (!cert || !out) return null_argument("cert/out");
    *out = cert->cert.rho;
    return ERGO_OK;
}

ergo_status ergo_certificate_gamma(const ergo_certificate* cert, double* out) {
    if (!cert || !out) return null_argument("cert/out");
    *out = cert->cert.gamma;
    return ERGO_OK;
}

ergo_status ergo_certificate_big_m(const ergo_certificate* cert, double* out) {
    if (!cert || !out) return null_argument("cert/out");
    *out = cert->cert.big_m;
    return ERGO_OK;
}

ergo_status ergo_certificate_constants(const ergo_certificate* cert, ergo_constants* out) {
    if (!cert || !out) return null_argument("cert/out");
    *out = to_c(cert->cert.constants);
    return ERGO_OK;
}

ergo_status ergo_certificate_diagnostic(const ergo_certificate* cert, const char* name, double* out, int* found) {
    if (!cert || !name || !out || !found) return null_argument("cert/name/out/found");
    const auto v = cert->cert.diagnostic(name);
    *found = v ? 1 : 0;
    if (v) *out = *v;
    return ERGO_OK;
}

ergo_status ergo_certificate_render(const ergo_certificate* cert, ergo_format format, int precision, char** out) {
    if (!cert || !out) return null_argument("cert/out");
    *out = nullptr;
    return guarded([&] { *out = dup_string(ergo::app::render_certificate(cert->cert, render_options(format, precision))); });
}

ergo_status ergo_certificate_to_json(const ergo_certificate* cert, char** out) {
    if (!cert || !out) return null_argument("cert/out");
    *out = nullptr;
    return guarded([&] { *out = dup_string(ergo::app::certificate_to_json(cert->cert).dump()); });
}

ergo_status ergo_certificate_from_json(const char* json, ergo_certificate** out) {
    if (!json || !out) return null_argument("json/out");
    *out = nullptr;
    return guarded([&] {
        auto cert = ergo::app::certificate_from_json(nlohmann::json::parse(json));
        *out = new ergo_certificate{std::move(cert)};
    });
}

ergo_status ergo_mt_zeta(double lambda, double big_k, double beta, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = ergo::competitors::mt_zeta(lambda, big_k, beta); });
}

ergo_status ergo_mtb_zeta(double lambda, double big_k, double beta, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = ergo::competitors::mtb_zeta(lambda, big_k, beta); });
}

ergo_status ergo_coupling_rho(double lambda, double b, double v_min_outside, double big_k, double beta_tilde,
                              double* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = ergo::competitors::coupling_rho({lambda, b, v_min_outside, big_k, beta_tilde});
    });
}

ergo_status ergo_reflecting_walk_constants(double p, const double* epsilon, ergo_constants* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        ergo::models::ReflectingWalk w{p, std::nullopt};
        if (epsilon) w.epsilon = *epsilon;
        *out = to_c(ergo::models::reflecting_walk_params(w));
    });
}

ergo_status ergo_reflecting_walk_rho_exact(double p, double epsilon, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = ergo::models::reflecting_walk_rho_exact(p, epsilon); });
}

ergo_status ergo_mh_normal_lambda(double x, double s, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = ergo::models::mh_normal_lambda(x, s); });
}

ergo_status ergo_mh_normal_constants(double d, double s, int nu_variant, ergo_constants* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        ergo::require(nu_variant == 0 || nu_variant == 1, ergo::ErrorCode::InvalidParams, "nu_variant must be 0 or 1");
        const auto nu = nu_variant == 0 ? ergo::models::NuVariant::MtMeasure : ergo::models::NuVariant::InfimumMeasure;
        *out = to_c(ergo::models::mh_normal_params({d, s, nu}));
    });
}

ergo_status ergo_contracting_constants(double theta, double c, ergo_constants* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = to_c(ergo::models::contracting_params({theta, c})); });
}

ergo_status ergo_model_run(const char* request_json, ergo_format format, int precision, char** out) {
    if (!request_json || !out) return null_argument("request/out");
    *out = nullptr;
    return guarded([&] {
        const auto opts = render_options(format, precision);
        const auto req = ergo::app::model_request_from_json(nlohmann::json::parse(request_json));
        *out = dup_string(ergo::app::render_model(ergo::app::run_model(req), opts));
    });
}

ergo_status ergo_table_render(int number, ergo_format format, int precision, char** out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        const auto opts = render_options(format, precision);
        *out = dup_string(ergo::app::render_table(ergo::app::build_table(number), opts));
    });
}

ergo_status ergo_verify_run(const char* suite, uint64_t seed, ergo_format format, int precision, char** out,
                            int* all_pass) {
    if (!suite || !out || !all_pass) return null_argument("suite/out/all_pass");
    *out = nullptr;
    *all_pass = 0;
    return guarded([&] {
        const auto opts = render_options(format, precision);
        const auto report = ergo::app::run_suite(suite, seed);
        *out = dup_string(ergo::app::render_suite(report, opts));
        *all_pass = report.pass() ? 1 : 0;
    });
}

}  // extern "C"
