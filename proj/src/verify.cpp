#include "ergocert/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "ergocert/error.hpp"
#include "ergocert/kendall.hpp"

namespace ergo::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Differences d_n = u_n - u_inf. Past the support the d_n obey the renewal
/// recursion, which conserves Q = sum_j d_{n-j} b(>j); the true sequence has
/// Q = 0, so the drift rounding puts into the non-decaying mode is removed
/// every step. This keeps d_n accurate relative to its own size.
class DifferenceSequence {
public:
    explicit DifferenceSequence(const IncrementDistribution& b) : b_(b.probs), mean_(b.mean()) {
        tail_.resize(b_.size());
        double t = 1.0;
        for (std::size_t j = 0; j < b_.size(); ++j) {
            t -= b_[j];
            tail_[j] = std::max(t, 0.0);   // b(> j + 1)
        }
        u_inf_ = 1.0 / mean_;
        d_.push_back(1.0 - u_inf_);
    }

    double u_inf() const { return u_inf_; }
    const std::vector<double>& values() const { return d_; }

    void extend_to(std::size_t n_max) {
        const std::size_t m = b_.size();
        d_.reserve(n_max + 1);
        while (d_.size() <= n_max) {
            const std::size_t n = d_.size();
            const std::size_t kmax = std::min(n, m);
            double s = 0.0;
            for (std::size_t k = 1; k <= kmax; ++k) s += b_[k - 1] * d_[n - k];
            if (n < m) {
                // u_{n-k} = 0 for k > n contributes -u_inf b(> n).
                s -= u_inf_ * tail_[n - 1];
            }
            d_.push_back(s);
            if (n + 1 >= m && m > 1) deflate(n);
        }
    }

private:
    void deflate(std::size_t n) {
        const std::size_t m = b_.size();
        double q = d_[n];
        for (std::size_t j = 1; j < m; ++j) q += d_[n - j] * tail_[j - 1];
        const double c = q / mean_;
        for (std::size_t j = 0; j < m; ++j) d_[n - j] -= c;
    }

    std::vector<double> b_;
    std::vector<double> tail_;
    double mean_;
    double u_inf_;
    std::vector<double> d_;
};

double window_max(const std::vector<double>& d, std::size_t end, std::size_t width) {
    double m = 0.0;
    const std::size_t start = end >= width ? end - width : 0;
    for (std::size_t i = start; i < end; ++i) m = std::max(m, std::abs(d[i]));
    return m;
}

double envelope_rate(const std::vector<double>& d, std::size_t width) {
    const std::size_t n2 = d.size();
    const std::size_t n1 = n2 / 2;
    require(n1 >= width, ErrorCode::InvalidParams, "sequence too short for decay estimate");
    const double e1 = window_max(d, n1, width);
    const double e2 = window_max(d, n2, width);
    if (e1 <= 0.0) return 0.0;
    if (e2 <= 0.0) return 0.0;
    return std::exp((std::log(e2) - std::log(e1)) / static_cast<double>(n2 - n1));
}

/// Transition matrix with entries reweighted by V(y) / V(z), in row-major CSR.
struct WeightedCsr {
    std::vector<std::size_t> row_start;
    std::vector<std::size_t> col;
    std::vector<double> val;
};

WeightedCsr weighted_csr(const models::TruncatedChain& tc) {
    WeightedCsr m;
    m.row_start.reserve(tc.n_states + 1);
    m.row_start.push_back(0);
    for (std::size_t z = 0; z < tc.n_states; ++z) {
        for (std::size_t y = 0; y < tc.n_states; ++y) {
            const double pzy = tc.at(z, y);
            if (pzy != 0.0) {
                m.col.push_back(y);
                m.val.push_back(pzy * std::exp(tc.log_v[y] - tc.log_v[z]));
            }
        }
        m.row_start.push_back(m.col.size());
    }
    return m;
}

}  // namespace

void IncrementDistribution::validate() const {
    require(!probs.empty(), ErrorCode::InvalidParams, "increment law is empty");
    double total = 0.0;
    std::size_t g = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        require(std::isfinite(probs[k]) && probs[k] >= 0.0, ErrorCode::InvalidParams,
                "increment probabilities must be finite and nonnegative");
        total += probs[k];
        if (probs[k] > 0.0) g = std::gcd(g, k + 1);
    }
    require(std::abs(total - 1.0) <= 1e-12, ErrorCode::InvalidParams, "increment probabilities must sum to 1");
    if (g != 1) fail(ErrorCode::PeriodicSupport, "support has period " + std::to_string(g));
}

double IncrementDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) m += static_cast<double>(k + 1) * probs[k];
    return m;
}

double IncrementDistribution::generating_function(double r) const {
    double s = 0.0;
    double rk = 1.0;
    for (double bk : probs) {
        rk *= r;
        s += bk * rk;
    }
    return s;
}

RenewalSequence renewal_from_increments(const IncrementDistribution& b, std::size_t n_max) {
    b.validate();
    RenewalSequence seq;
    seq.u.assign(n_max + 1, 0.0);
    seq.u[0] = 1.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t kmax = std::min(n, b.probs.size());
        double s = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) s += b.probs[k - 1] * seq.u[n - k];
        seq.u[n] = s;
    }
    seq.u_inf = 1.0 / b.mean();
    return seq;
}

double renewal_decay_rate(const IncrementDistribution& b, const RenewalSequence& seq) {
    std::vector<double> d(seq.u.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = seq.u[i] - seq.u_inf;
    return envelope_rate(d, std::max<std::size_t>(b.probs.size(), 2));
}

KendallReport kendall_check(const IncrementDistribution& b, double beta, double big_r, double big_l, double r,
                            std::size_t n_max) {
    b.validate();
    const kendall::KendallParams kp{beta, big_r, big_l};
    kp.validate();
    if (b.probs[0] < beta) {
        fail(ErrorCode::HypothesisViolated, "b_1 = " + std::to_string(b.probs[0]) + " is below beta");
    }
    const double gf = b.generating_function(big_r);
    if (gf > big_l * (1.0 + 1e-12)) {
        fail(ErrorCode::HypothesisViolated, "sum b_k R^k = " + std::to_string(gf) + " exceeds L");
    }
    const double r1 = kendall::solve_r1(kp);
    require(r > 1.0 && r < r1, ErrorCode::InvalidParams, "r must lie in (1, R1)");

    KendallReport rep;
    rep.bound = kendall::k1(r, kp);
    rep.rate_bound = 1.0 / r1;

    const std::size_t width = std::max<std::size_t>(b.probs.size(), 8);
    const double log_r = std::log(r);
    DifferenceSequence seq(b);

    // Grow the series until |d_n| r^n over a full window is negligible next to
    // the largest term seen.
    std::size_t n_end = std::min<std::size_t>(n_max, 64 * width);
    double peak = 0.0;
    for (;;) {
        seq.extend_to(n_end);
        const auto& d = seq.values();
        peak = 0.0;
        for (std::size_t n = 0; n < d.size(); ++n) peak = std::max(peak, std::abs(d[n]) * std::exp(n * log_r));
        double last = 0.0;
        for (std::size_t n = d.size() - width; n < d.size(); ++n)
            last = std::max(last, std::abs(d[n]) * std::exp(n * log_r));
        if (last <= 1e-15 * peak || n_end >= n_max) break;
        n_end = std::min(n_max, 2 * n_end);
    }
    const auto& d = seq.values();
    const std::size_t terms = d.size();
    rep.terms = terms;
    rep.decay_rate = envelope_rate(d, width);

    // Tail majorant: every later window is bounded by the last one shrunk by
    // (decay_rate r)^width per window.
    double last = 0.0;
    for (std::size_t n = terms - width; n < terms; ++n) last = std::max(last, std::abs(d[n]) * std::exp(n * log_r));
    const double q = std::pow(rep.decay_rate * r, static_cast<double>(width));
    const double tail = q < 1.0 ? static_cast<double>(width) * last * q / (1.0 - q) : kInf;

    std::vector<double> a(terms);
    for (std::size_t n = 0; n < terms; ++n) a[n] = d[n] == 0.0 ? 0.0 : d[n] * std::exp(n * log_r);
    double sup = 0.0;
    constexpr int kAngles = 64;
    for (int j = 0; j < kAngles; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / kAngles;
        const std::complex<double> step = std::polar(1.0, phi);
        std::complex<double> s = 0.0;
        std::complex<double> z = 1.0;
        for (std::size_t n = 0; n < terms; ++n) {
            s += a[n] * z;
            z = (n + 1) % 256 == 0 ? std::polar(1.0, phi * static_cast<double>(n + 1)) : z * step;
        }
        sup = std::max(sup, std::abs(s));
    }
    rep.measured_sup = sup + tail;
    rep.pass = rep.measured_sup <= rep.bound && rep.decay_rate <= rep.rate_bound + 1e-6;
    return rep;
}

IncrementDistribution kendall_family(double beta, int k) {
    require(beta > 0.0 && beta < 1.0 && k >= 2, ErrorCode::InvalidParams, "family needs 0 < beta < 1, k >= 2");
    IncrementDistribution b;
    b.probs.assign(static_cast<std::size_t>(k), 0.0);
    b.probs[0] = beta;
    b.probs[static_cast<std::size_t>(k) - 1] = 1.0 - beta;
    return b;
}

double kendall_family_asymptotic(double beta, int k) {
    const double kd = static_cast<double>(k);
    return 2.0 * std::numbers::pi * std::numbers::pi * beta / ((1.0 - beta) * (1.0 - beta)) / (kd * kd * kd);
}

FamilyReport kendall_family_check(double beta, int k, double rel_tol) {
    FamilyReport rep;
    rep.k = k;
    rep.asymptotic = kendall_family_asymptotic(beta, k);
    const auto b = kendall_family(beta, k);
    b.validate();
    // Long enough for the dominant pair of roots to decay by e^-8 past the
    // first window, so the faster modes have died out.
    const auto n_end = static_cast<std::size_t>(std::ceil(16.0 / rep.asymptotic));
    DifferenceSequence seq(b);
    seq.extend_to(std::max<std::size_t>(n_end, 8 * static_cast<std::size_t>(k)));
    const double rate = envelope_rate(seq.values(), static_cast<std::size_t>(k));
    rep.measured = 1.0 / rate - 1.0;
    rep.rel_error = std::abs(rep.measured - rep.asymptotic) / rep.asymptotic;
    rep.pass = rep.rel_error <= rel_tol;
    return rep;
}

std::vector<double> log_distance_profile(const models::TruncatedChain& tc, std::size_t x, std::size_t n_max) {
    require(x < tc.n_states, ErrorCode::InvalidParams, "start state outside the truncation");
    const std::size_t ns = tc.n_states;
    const WeightedCsr m = weighted_csr(tc);

    // w = V (delta_x P^n - pi), kept scaled by exp(log_scale).
    std::vector<double> s(ns), inv_v(ns), w(ns), next(ns);
    for (std::size_t y = 0; y < ns; ++y) {
        s[y] = std::exp(tc.log_v[y] + tc.log_pi[y]);
        inv_v[y] = std::exp(-tc.log_v[y]);
        w[y] = -s[y];
    }
    w[x] += std::exp(tc.log_v[x]);
    double log_scale = 0.0;

    std::vector<double> out;
    out.reserve(n_max + 1);
    auto record = [&] {
        double total = 0.0;
        for (double wy : w) total += std::abs(wy);
        out.push_back(total > 0.0 ? std::log(total) + log_scale : -kInf);
    };
    record();
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t z = 0; z < ns; ++z) {
            const double wz = w[z];
            if (wz == 0.0) continue;
            for (std::size_t k = m.row_start[z]; k < m.row_start[z + 1]; ++k) next[m.col[k]] += wz * m.val[k];
        }
        w.swap(next);
        // Remove the stationary component that rounding reintroduces.
        double mass = 0.0;
        for (std::size_t y = 0; y < ns; ++y) mass += w[y] * inv_v[y];
        double peak = 0.0;
        for (std::size_t y = 0; y < ns; ++y) {
            w[y] -= mass * s[y];
            peak = std::max(peak, std::abs(w[y]));
        }
        if (peak > 0.0 && peak < 1e-100) {
            for (double& wy : w) wy *= 1e100;
            log_scale -= 100.0 * std::numbers::ln10;
        }
        record();
    }
    return out;
}

double matrix_vnorm_distance(const models::TruncatedChain& tc, std::size_t x, std::size_t n) {
    return std::exp(log_distance_profile(tc, x, n).back());
}

double empirical_decay_rate(const models::TruncatedChain& tc, std::size_t n1, std::size_t n2) {
    require(n2 > n1, ErrorCode::InvalidParams, "need n2 > n1");
    const auto prof = log_distance_profile(tc, 0, n2);
    return std::exp((prof[n2] - prof[n1]) / static_cast<double>(n2 - n1));
}

DominationReport certificate_domination(const std::vector<std::vector<double>>& profiles,
                                        const models::TruncatedChain& tc, double big_m, double gamma) {
    DominationReport rep;
    rep.worst_ratio = -kInf;
    const double log_m = std::log(big_m);
    const double log_g = std::log(gamma);
    for (std::size_t x = 0; x < profiles.size(); ++x) {
        for (std::size_t n = 0; n < profiles[x].size(); ++n) {
            const double log_ratio = profiles[x][n] - (log_m + tc.log_v[x] + static_cast<double>(n) * log_g);
            if (log_ratio > rep.worst_ratio) {
                rep.worst_ratio = log_ratio;
                rep.worst_x = x;
                rep.worst_n = n;
            }
        }
    }
    rep.worst_ratio = std::exp(rep.worst_ratio);
    rep.pass = rep.worst_ratio <= 1.0;
    return rep;
}

DominationReport certificate_domination(const models::TruncatedChain& tc, const bounds::Certificate& cert,
                                        std::size_t x_max, std::size_t n_max) {
    std::vector<std::vector<double>> profiles(x_max + 1);
    parallel_for(x_max + 1, [&](std::size_t x) { profiles[x] = log_distance_profile(tc, x, n_max); });
    return certificate_domination(profiles, tc, cert.big_m, cert.gamma);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGolden))) {}

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double CounterRng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

McReport mc_regeneration(const models::ReflectingWalk& spec, std::size_t x0, double r, std::size_t samples,
                         std::uint64_t seed) {
    const auto params = models::reflecting_walk_params(spec);
    require(r >= 1.0 && r <= 1.0 / params.lambda * (1.0 + 1e-12), ErrorCode::InvalidParams,
            "r must lie in [1, 1/lambda]");
    require(samples >= 2, ErrorCode::InvalidParams, "need at least two samples");
    const double v_x0 = std::pow(std::sqrt(spec.p / spec.q()), static_cast<double>(x0));
    const double r_eval = std::min(r, 1.0 / params.lambda);

    McReport rep;
    rep.samples = samples;
    rep.bound = bounds::regeneration_bounds(r_eval, params, v_x0, x0 == 0).g_bound;

    std::vector<double> values(samples);
    const double log_r = std::log(r);
    const double stay = spec.stay_at_zero();
    parallel_for(samples, [&](std::size_t i) {
        CounterRng rng(seed, i);
        std::size_t x = x0;
        std::uint64_t tau = 0;
        do {
            const double u = rng.next_unit();
            if (x == 0) {
                x = u < stay ? 0 : 1;
            } else {
                x = u < spec.p ? x - 1 : x + 1;
            }
            ++tau;
        } while (x != 0);
        values[i] = std::exp(static_cast<double>(tau) * log_r);
    });

    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(samples);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    rep.mean_r_tau = mean;
    rep.std_err = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
    rep.pass = rep.mean_r_tau <= rep.bound + 3.0 * rep.std_err;
    return rep;
}

std::size_t thread_count() {
    if (const char* env = std::getenv("ERGO_CERT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ergo::verify
