#pragma once

#include <cstddef>
#include <functional>

namespace ergo::numerics {

using ScalarFn = std::function<double(double)>;

/// Search interval for the bisection solver.
struct Bracket {
    double lo = 0.0;
    double hi = 1.0;
    double tol_abs = 1e-12;   // stop once hi - lo is below this
    int max_iter = 200;

    void validate() const;
};

inline constexpr double kResidualTol = 1e-10;

/// Solves f(x) = target by bisection. f must change sign (relative to target)
/// between the bracket endpoints; a zero at an endpoint is returned as is.
/// Iterates until the bracket is narrower than tol_abs and the residual is
/// below tol_residual, or until the bracket cannot be split further in
/// floating point.
double solve_monotone(const ScalarFn& f, double target, const Bracket& bracket,
                      double tol_residual = kResidualTol);

enum class GridSpacing {
    Linear,
    LogFromLo,   // offsets from lo are log-spaced, concentrating points near lo
};

struct MaximizeOptions {
    std::size_t grid_points = 512;
    double refine_tol = 1e-10;
    GridSpacing spacing = GridSpacing::Linear;
    double log_min_offset = 1e-9;   // smallest offset (relative to hi - lo) for LogFromLo
};

struct Maximum {
    double argmax;
    double value;
};

/// Grid scan over [lo, hi] followed by golden-section refinement on the two
/// cells adjacent to the best grid point. Non-finite objective values are
/// treated as -infinity.
Maximum maximize_scalar(const ScalarFn& f, double lo, double hi, const MaximizeOptions& opts = {});

/// Standard normal distribution function.
double std_normal_cdf(double x) noexcept;

}  // namespace ergo::numerics
