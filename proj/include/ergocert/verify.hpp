#pragma once

// Independent oracles used to check the certificates: renewal sequences by
// direct convolution, exact V-weighted distances on truncated chains, and
// Monte-Carlo regeneration times.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ergocert/bounds.hpp"
#include "ergocert/models.hpp"

namespace ergo::verify {

/// Law of the renewal increment: probs[k - 1] = b_k.
struct IncrementDistribution {
    std::vector<double> probs;

    /// Checks b_k >= 0, sum = 1 within 1e-12 and gcd of the support = 1.
    void validate() const;
    double mean() const;
    /// sum_k b_k r^k
    double generating_function(double r) const;
};

struct RenewalSequence {
    std::vector<double> u;   // u_0 .. u_N
    double u_inf = 0.0;
};

/// u_n = sum_{k=1..n} b_k u_{n-k}, u_0 = 1; u_inf = 1 / mean.
RenewalSequence renewal_from_increments(const IncrementDistribution& b, std::size_t n_max);

/// Geometric decay rate of |u_n - u_inf| from envelope maxima over two windows
/// ending at n_end/2 and n_end. The window covers the support of b.
double renewal_decay_rate(const IncrementDistribution& b, const RenewalSequence& seq);

struct KendallReport {
    double measured_sup = 0.0;   // sup over |z| = r of the renewal series, tail majorant included
    double bound = 0.0;          // k1 at r
    double decay_rate = 0.0;
    double rate_bound = 0.0;     // 1 / R1
    std::size_t terms = 0;       // series terms summed before the tail majorant
    bool pass = false;
};

/// Compares the renewal series of b with the general Kendall bounds at radius r.
/// Throws HypothesisViolated unless b_1 >= beta and sum b_k R^k <= L.
KendallReport kendall_check(const IncrementDistribution& b, double beta, double big_r, double big_l, double r,
                            std::size_t n_max);

/// b(z) = beta z + (1 - beta) z^k.
IncrementDistribution kendall_family(double beta, int k);

/// 2 pi^2 beta / (1 - beta)^2 k^-3, the leading term of the family's radius minus one.
double kendall_family_asymptotic(double beta, int k);

struct FamilyReport {
    int k = 0;
    double measured = 0.0;     // measured radius minus one
    double asymptotic = 0.0;
    double rel_error = 0.0;
    bool pass = false;
};

FamilyReport kendall_family_check(double beta, int k, double rel_tol = 0.1);

/// sum_y V(y) |P^n(x, y) - pi(y)|, computed in log space. Entry n of the
/// result is the log of the distance after n steps, for n = 0..n_max.
std::vector<double> log_distance_profile(const models::TruncatedChain& tc, std::size_t x, std::size_t n_max);

double matrix_vnorm_distance(const models::TruncatedChain& tc, std::size_t x, std::size_t n);

/// Empirical decay rate exp((log d(n2) - log d(n1)) / (n2 - n1)) from x = 0.
/// n1 and n2 should have the same parity to cancel period-two oscillation.
double empirical_decay_rate(const models::TruncatedChain& tc, std::size_t n1, std::size_t n2);

struct DominationReport {
    double worst_ratio = 0.0;   // max over (x, n) of distance / (M V(x) gamma^n)
    std::size_t worst_x = 0;
    std::size_t worst_n = 0;
    bool pass = false;
};

/// Checks distance(x, n) <= M V(x) gamma^n for all x <= x_max, n <= n_max.
DominationReport certificate_domination(const models::TruncatedChain& tc, const bounds::Certificate& cert,
                                        std::size_t x_max, std::size_t n_max);

/// Same check against precomputed profiles (profiles[x] from log_distance_profile).
DominationReport certificate_domination(const std::vector<std::vector<double>>& profiles,
                                        const models::TruncatedChain& tc, double big_m, double gamma);

struct McReport {
    double mean_r_tau = 0.0;
    double std_err = 0.0;
    double bound = 0.0;
    std::size_t samples = 0;
    bool pass = false;
};

/// Simulates tau, the first return time n >= 1 of the walk to C = {0} from x0,
/// and compares the sample mean of r^tau with the drift bound on E r^tau.
McReport mc_regeneration(const models::ReflectingWalk& spec, std::size_t x0, double r, std::size_t samples,
                         std::uint64_t seed);

/// Counter-based generator: the k-th draw of stream s depends only on (seed, s, k).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double next_unit();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// One line of a verification report.
struct Check {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool pass = false;
};

/// Worker count from ERGO_CERT_THREADS, else the hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) over thread_count() workers. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ergo::verify
