#pragma once

// Random valid parameter points shared by the unit and acceptance tests.

#include "ergocert/bounds.hpp"
#include "ergocert/kendall.hpp"
#include "oracles.hpp"

namespace generators {

inline ergo::kendall::KendallParams random_kendall_params(oracle::Sampler& s) {
    ergo::kendall::KendallParams p;
    p.beta = s.uniform(0.05, 1.0);
    p.big_r = s.uniform(1.01, 3.0);
    p.big_l = p.big_r * s.uniform(1.0, 3.0);
    return p;
}

inline ergo::bounds::DriftMinorization random_atomic(oracle::Sampler& s) {
    ergo::bounds::DriftMinorization p;
    p.lambda = s.uniform(0.05, 0.97);
    p.big_k = s.uniform(1.0, 4.0);
    p.beta = s.uniform(0.05, 1.0);
    p.atomic = true;
    p.beta_tilde = 1.0;
    return p;
}

inline ergo::bounds::DriftMinorization random_nonatomic(oracle::Sampler& s) {
    ergo::bounds::DriftMinorization p;
    p.atomic = false;
    p.lambda = s.uniform(0.3, 0.95);
    p.beta_tilde = s.uniform(0.1, 0.9);
    p.big_k = s.uniform(1.01, 3.0);
    p.beta = p.beta_tilde * s.uniform(0.3, 1.0);
    p.nu_info = ergo::bounds::NuNone{};
    return p;
}

/// Admissible atomic Kendall constraints (N >= 1 and beta R <= L).
inline bool kendall_admissible(const ergo::bounds::DriftMinorization& p) {
    const auto kp = ergo::bounds::atomic_kendall_params(p);
    return kp.n_ratio() >= 1.0 && kp.beta * kp.big_r <= kp.big_l;
}

}  // namespace generators
