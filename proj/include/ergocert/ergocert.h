#ifndef ERGOCERT_ERGOCERT_H
#define ERGOCERT_ERGOCERT_H

/* C interface to the geometric-ergodicity certificate library.
 *
 * Every function returns an ergo_status. On failure a message is available
 * from ergo_last_error() on the calling thread. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * ergo_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ERGOCERT_BUILDING)
#    define ERGO_API __declspec(dllexport)
#  else
#    define ERGO_API __declspec(dllimport)
#  endif
#else
#  define ERGO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ergo_status {
    ERGO_OK = 0,
    ERGO_ERR_INVALID_PARAMS = 1,
    ERGO_ERR_OUT_OF_RANGE = 2,
    ERGO_ERR_GAMMA_OUT_OF_RANGE = 3,
    ERGO_ERR_NO_SIGN_CHANGE = 4,
    ERGO_ERR_NO_CONVERGENCE = 5,
    ERGO_ERR_EMPTY_DOMAIN = 6,
    ERGO_ERR_NOT_REVERSIBLE = 7,
    ERGO_ERR_COUPLING_FAILS = 8,
    ERGO_ERR_MONOTONE_VIOLATION = 9,
    ERGO_ERR_TRUNCATION_TOO_SMALL = 10,
    ERGO_ERR_PERIODIC_SUPPORT = 11,
    ERGO_ERR_HYPOTHESIS_VIOLATED = 12,
    ERGO_ERR_NULL_ARGUMENT = 13,
    ERGO_ERR_INTERNAL = 14
} ergo_status;

typedef enum ergo_symmetry {
    ERGO_SYMMETRY_GENERAL = 0,
    ERGO_SYMMETRY_REVERSIBLE = 1,
    ERGO_SYMMETRY_REVERSIBLE_POSITIVE = 2
} ergo_symmetry;

typedef enum ergo_nu_kind {
    ERGO_NU_NONE = 0,
    ERGO_NU_CONCENTRATED_ON_C = 1,
    ERGO_NU_V_INTEGRAL_BOUND = 2
} ergo_nu_kind;

typedef enum ergo_format {
    ERGO_FORMAT_TEXT = 0,
    ERGO_FORMAT_JSON = 1,
    ERGO_FORMAT_CSV = 2
} ergo_format;

/* Drift and minorization constants. beta_tilde must be 1 when atomic is
 * nonzero; k_tilde is read only for ERGO_NU_V_INTEGRAL_BOUND. */
typedef struct ergo_constants {
    double lambda;
    double big_k;
    double beta;
    double beta_tilde;
    int atomic;
    ergo_nu_kind nu_kind;
    double k_tilde;
} ergo_constants;

typedef struct ergo_certificate ergo_certificate;

/* Status name such as "InvalidParams". Never NULL. */
ERGO_API const char* ergo_status_name(ergo_status status);

/* Message of the last failure on this thread, "" if none. */
ERGO_API const char* ergo_last_error(void);

ERGO_API void ergo_string_free(char* s);

/* Certificates. gamma may be NULL for the default (1 + rho) / 2. */
ERGO_API ergo_status ergo_certificate_compute(const ergo_constants* constants, ergo_symmetry symmetry,
                                              const double* gamma, ergo_certificate** out);
ERGO_API void ergo_certificate_free(ergo_certificate* cert);
ERGO_API ergo_status ergo_certificate_rho(const ergo_certificate* cert, double* out);
ERGO_API ergo_status ergo_certificate_gamma(const ergo_certificate* cert, double* out);
ERGO_API ergo_status ergo_certificate_big_m(const ergo_certificate* cert, double* out);
ERGO_API ergo_status ergo_certificate_constants(const ergo_certificate* cert, ergo_constants* out);
/* Sets *found to 0 and leaves *out untouched when the name is unknown. */
ERGO_API ergo_status ergo_certificate_diagnostic(const ergo_certificate* cert, const char* name, double* out,
                                                 int* found);
ERGO_API ergo_status ergo_certificate_render(const ergo_certificate* cert, ergo_format format, int precision,
                                             char** out);
ERGO_API ergo_status ergo_certificate_to_json(const ergo_certificate* cert, char** out);
/* Recomputes from the stored constants; stored rho and M must match exactly. */
ERGO_API ergo_status ergo_certificate_from_json(const char* json, ergo_certificate** out);

/* Comparison estimates. */
ERGO_API ergo_status ergo_mt_zeta(double lambda, double big_k, double beta, double* out);
ERGO_API ergo_status ergo_mtb_zeta(double lambda, double big_k, double beta, double* out);
ERGO_API ergo_status ergo_coupling_rho(double lambda, double b, double v_min_outside, double big_k,
                                       double beta_tilde, double* out);

/* Benchmark models. epsilon may be NULL for the unmodified boundary. */
ERGO_API ergo_status ergo_reflecting_walk_constants(double p, const double* epsilon, ergo_constants* out);
ERGO_API ergo_status ergo_reflecting_walk_rho_exact(double p, double epsilon, double* out);
ERGO_API ergo_status ergo_mh_normal_lambda(double x, double s, double* out);
/* nu_variant: 0 for the truncated Gaussian measure, 1 for the pointwise infimum. */
ERGO_API ergo_status ergo_mh_normal_constants(double d, double s, int nu_variant, ergo_constants* out);
ERGO_API ergo_status ergo_contracting_constants(double theta, double c, ergo_constants* out);

/* Model runner. request_json: {"model", "params": {...}, "nu", "method",
 * "optimize", "exact"}; unknown keys are rejected. */
ERGO_API ergo_status ergo_model_run(const char* request_json, ergo_format format, int precision, char** out);

/* Benchmark table 1..6 beside its published values. */
ERGO_API ergo_status ergo_table_render(int number, ergo_format format, int precision, char** out);

/* suite: "kendall", "matrix", "mc" or "all". *all_pass is set to 1 when every
 * check passes. */
ERGO_API ergo_status ergo_verify_run(const char* suite, uint64_t seed, ergo_format format, int precision,
                                     char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
