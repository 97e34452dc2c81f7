#include "ergocert/competitors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergocert/error.hpp"

namespace ergo::competitors {

namespace {

void check_zeta_inputs(double lambda, double big_k, double beta) {
    require(lambda > 0.0 && lambda < 1.0, ErrorCode::InvalidParams, "lambda must lie in (0, 1)");
    require(big_k > lambda, ErrorCode::InvalidParams, "K must exceed lambda");
    require(beta > 0.0 && beta <= 1.0, ErrorCode::InvalidParams, "beta must lie in (0, 1]");
}

}  // namespace

double mt_zeta(double lambda, double big_k, double beta) {
    check_zeta_inputs(lambda, big_k, beta);
    const double ratio = (big_k - lambda) / (1.0 - lambda);
    return (32.0 - 8.0 * beta * beta) / (beta * beta * beta) * ratio * ratio;
}

double mtb_zeta(double lambda, double big_k, double beta) {
    check_zeta_inputs(lambda, big_k, beta);
    return 1.0 + 2.0 * std::log((big_k - lambda) / (1.0 - lambda)) / (beta * std::log(1.0 / lambda));
}

double coupling_rho(const CouplingInput& in) {
    require(std::isfinite(in.lambda) && in.lambda > 0.0 && in.lambda < 1.0, ErrorCode::InvalidParams,
            "lambda must lie in (0, 1)");
    require(in.b > 0.0, ErrorCode::InvalidParams, "b must be positive");
    require(in.v_min_outside >= 1.0, ErrorCode::InvalidParams, "min V outside C must be at least 1");
    require(in.beta_tilde > 0.0 && in.beta_tilde <= 1.0, ErrorCode::InvalidParams, "beta_tilde must lie in (0, 1]");
    const double lam1 = in.lambda1();
    if (!(lam1 < 1.0)) {
        fail(ErrorCode::CouplingFails, "lambda1 = " + std::to_string(lam1) + " >= 1; enlarge C");
    }
    if (in.beta_tilde == 1.0) return lam1;
    require(in.big_k > in.beta_tilde, ErrorCode::InvalidParams, "K must exceed beta_tilde");
    const double alpha1 = 1.0 + std::log((in.big_k - in.beta_tilde) / (1.0 - in.beta_tilde)) / std::log(1.0 / lam1);
    const double r0 = std::min(1.0 / lam1, std::pow(1.0 - in.beta_tilde, -1.0 / alpha1));
    return 1.0 / r0;
}

}  // namespace ergo::competitors
