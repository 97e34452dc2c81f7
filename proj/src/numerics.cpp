#include "ergocert/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ergocert/error.hpp"

namespace ergo::numerics {

void Bracket::validate() const {
    require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, ErrorCode::InvalidParams,
            "bracket requires lo < hi");
    require(tol_abs > 0.0, ErrorCode::InvalidParams, "bracket tolerance must be positive");
    require(max_iter >= 1, ErrorCode::InvalidParams, "bracket max_iter must be at least 1");
}

double solve_monotone(const ScalarFn& f, double target, const Bracket& bracket, double tol_residual) {
    bracket.validate();
    double lo = bracket.lo;
    double hi = bracket.hi;
    double f_lo = f(lo) - target;
    double f_hi = f(hi) - target;
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::isnan(f_lo) || std::isnan(f_hi) || std::signbit(f_lo) == std::signbit(f_hi)) {
        fail(ErrorCode::NoSignChange, "objective does not change sign on [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "]");
    }

    const bool increasing = f_lo < 0.0;
    for (int iter = 0; iter < bracket.max_iter; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;

        const double f_mid = f(mid) - target;
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == increasing) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if (hi - lo <= bracket.tol_abs) {
            const bool lo_better = std::abs(f_lo) <= std::abs(f_hi);
            const double best_res = lo_better ? std::abs(f_lo) : std::abs(f_hi);
            if (best_res <= tol_residual || !std::isfinite(best_res)) {
                return lo_better ? lo : hi;
            }
            // residual still large: keep narrowing while floating point allows
        }
    }
    fail(ErrorCode::NoConvergence, "bisection exhausted " + std::to_string(bracket.max_iter) + " iterations");
}

namespace {

double finite_or_lowest(double v) {
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

}  // namespace

Maximum maximize_scalar(const ScalarFn& f, double lo, double hi, const MaximizeOptions& opts) {
    require(std::isfinite(lo) && std::isfinite(hi), ErrorCode::InvalidParams, "maximize bounds must be finite");
    if (!(lo < hi)) fail(ErrorCode::EmptyDomain, "maximize requires lo < hi");
    const std::size_t n = std::max<std::size_t>(opts.grid_points, 3);

    std::vector<double> grid(n);
    const double width = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        if (opts.spacing == GridSpacing::Linear) {
            grid[i] = lo + width * t;
        } else {
            const double log_min = std::log(opts.log_min_offset);
            grid[i] = lo + width * std::exp(log_min * (1.0 - t));
        }
    }
    grid.back() = hi;

    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = finite_or_lowest(f(grid[i]));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (!std::isfinite(best_val)) {
        fail(ErrorCode::EmptyDomain, "objective is not finite anywhere on the grid");
    }

    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[best + 1 == n ? n - 1 : best + 1];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = finite_or_lowest(f(c));
    double fd = finite_or_lowest(f(d));
    for (int iter = 0; iter < 200 && (b - a) > opts.refine_tol; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = finite_or_lowest(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = finite_or_lowest(f(d));
        }
    }

    Maximum result{grid[best], best_val};
    for (double x : {c, d, 0.5 * (a + b)}) {
        const double v = finite_or_lowest(f(x));
        if (v > result.value) result = {x, v};
    }
    return result;
}

double std_normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace ergo::numerics
