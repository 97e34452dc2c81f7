#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ergocert/bounds.hpp"
#include "ergocert/competitors.hpp"

namespace ergo::models {

/// Bernoulli walk on {0, 1, 2, ...}: down with probability p > 1/2, up with q = 1 - p.
/// Without epsilon the boundary is P(0,0) = p; with epsilon it is P(0,0) = epsilon.
/// V(i) = (p/q)^(i/2), C = {0}.
struct ReflectingWalk {
    double p = 0.9;
    std::optional<double> epsilon;

    double q() const { return 1.0 - p; }
    double stay_at_zero() const { return epsilon.value_or(p); }
    void validate() const;
};

enum class NuVariant { MtMeasure, InfimumMeasure };

/// Random-walk Metropolis for N(0,1) with N(x,1) proposals, V = exp(s|x|), C = [-d, d].
struct MetropolisNormal {
    double d = 1.0;
    double s = 0.1;
    NuVariant nu_variant = NuVariant::MtMeasure;
};

/// P(x, .) = N(theta x, 1 - theta^2), V = 1 + x^2, C = [-c, c].
struct ContractingNormal {
    double theta = 0.5;
    double c = 1.5;
};

using ModelSpec = std::variant<ReflectingWalk, MetropolisNormal, ContractingNormal>;

/// Finite truncation of a countable chain with everything needed by the exact-distance oracle.
struct TruncatedChain {
    std::size_t n_states = 0;
    std::vector<double> matrix;   // row-major n_states x n_states
    std::vector<double> v;        // may overflow to +inf on long truncations; log_v stays finite
    std::vector<double> log_v;
    std::vector<std::size_t> c_set;
    std::vector<double> pi;
    std::vector<double> log_pi;
    double tail_mass = 0.0;       // stationary mass of the untruncated chain beyond the last state

    double at(std::size_t i, std::size_t j) const { return matrix[i * n_states + j]; }
};

bounds::DriftMinorization reflecting_walk_params(const ReflectingWalk& spec);

/// Exact V-geometric rate of the walk with boundary P(0,0) = epsilon < p.
double reflecting_walk_rho_exact(double p, double epsilon);

/// PV(x)/V(x) for the Metropolis chain, x >= 0, s >= 0.
double mh_normal_lambda(double x, double s);

bounds::DriftMinorization mh_normal_params(const MetropolisNormal& spec);
competitors::CouplingInput mh_coupling_input(const MetropolisNormal& spec);

bounds::DriftMinorization contracting_params(const ContractingNormal& spec);
competitors::CouplingInput contracting_coupling_input(const ContractingNormal& spec);

/// Constants for the lazy kernel (I + P)/2 with the same V, C and nu.
bounds::DriftMinorization binomial_modification(const bounds::DriftMinorization& p, double sup_v_on_c);

/// sup of V over C for the model (the input binomial_modification needs).
double sup_v_on_c(const ModelSpec& spec);

/// Truncation to states {0, ..., n_states - 1}; the top state keeps the
/// up-step as a self-loop. Throws TruncationTooSmall when the stationary tail
/// beyond the truncation is not below 1e-12.
TruncatedChain walk_truncated_chain(const ReflectingWalk& spec, std::size_t n_states);

}  // namespace ergo::models
