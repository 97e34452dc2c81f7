#pragma once

// Comparison estimates: the MT and MTB bounds on
// zeta_C = sup_{|z| <= 1} |(1 - z) u(z)| and the coupling-method rate.

namespace ergo::competitors {

/// (32 - 8 beta^2) / beta^3 * ((K - lambda) / (1 - lambda))^2
double mt_zeta(double lambda, double big_k, double beta);

/// 1 + 2 log((K - lambda) / (1 - lambda)) / (beta log(1/lambda))
double mtb_zeta(double lambda, double big_k, double beta);

/// Constants for the bivariate drift used by the coupling method.
struct CouplingInput {
    double lambda = 0.0;
    double b = 0.0;              // sup over C of PV - lambda V
    double v_min_outside = 1.0;  // min of V off C
    double big_k = 0.0;
    double beta_tilde = 0.0;

    /// lambda + b / (1 + v_min_outside)
    double lambda1() const { return lambda + b / (1.0 + v_min_outside); }
};

/// 1 / R0 computed with lambda1 in place of lambda. Throws CouplingFails when
/// lambda1 >= 1 (the small set has to be enlarged).
double coupling_rho(const CouplingInput& in);

}  // namespace ergo::competitors
