#include <algorithm>
#include <cmath>
#include <sstream>

#include "app_internal.hpp"
#include "ergocert/app.hpp"
#include "ergocert/error.hpp"
#include "ergocert/kendall.hpp"

namespace ergo::app {

using nlohmann::json;

namespace {

constexpr std::size_t kKendallTerms = 400000;
constexpr std::size_t kXMax = 30;
constexpr std::size_t kNMax = 200;
constexpr std::size_t kRateN1 = 1000;
constexpr std::size_t kRateN2 = 2000;
constexpr double kRateTol = 0.01;

verify::Check upper_check(std::string name, double measured, double bound) {
    return {std::move(name), measured, bound, bound - measured, measured <= bound};
}

std::string walk_label(const models::ReflectingWalk& w) {
    std::string s = "walk_p" + format_number(w.p, 4);
    if (w.epsilon) s += "_eps" + format_number(*w.epsilon, 4);
    return s;
}

/// Truncation that leaves every state reachable in n_max steps from x <= x_max
/// away from the top boundary, enlarged further if the stationary tail demands it.
models::TruncatedChain oracle_chain(const models::ReflectingWalk& w, std::size_t x_max, std::size_t n_max) {
    std::size_t n = x_max + n_max + 2;
    for (;;) {
        try {
            return models::walk_truncated_chain(w, n);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TruncationTooSmall) throw;
            n *= 2;
        }
    }
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const verify::Check& c) { return c.pass; });
}

std::size_t SuiteReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const verify::Check& c) { return c.pass; }));
}

KendallCase random_kendall_case(std::uint64_t seed, std::uint64_t index) {
    verify::CounterRng rng(seed, index);
    KendallCase kc;
    const std::size_t m = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
    kc.b.probs.assign(m, 0.0);
    const double b1 = 0.05 + 0.9 * rng.next_unit();
    double rest = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
        kc.b.probs[k] = rng.next_unit();
        rest += kc.b.probs[k];
    }
    kc.b.probs[0] = b1;
    if (rest > 0.0) {
        for (std::size_t k = 1; k < m; ++k) kc.b.probs[k] *= (1.0 - b1) / rest;
    } else {
        kc.b.probs[0] = 1.0;
    }
    kc.beta = kc.b.probs[0] * (0.5 + 0.5 * rng.next_unit());
    kc.big_r = 1.05 + 1.95 * rng.next_unit();
    kc.big_l = kc.b.generating_function(kc.big_r) * (1.0 + 0.5 * rng.next_unit());
    const double r1 = kendall::solve_r1({kc.beta, kc.big_r, kc.big_l});
    kc.r = 1.0 + (r1 - 1.0) * (0.1 + 0.8 * rng.next_unit());
    return kc;
}

std::vector<verify::Check> kendall_checks(std::uint64_t seed, std::size_t cases) {
    std::vector<verify::KendallReport> reports(cases);
    verify::parallel_for(cases, [&](std::size_t i) {
        const auto kc = random_kendall_case(seed, i);
        reports[i] = verify::kendall_check(kc.b, kc.beta, kc.big_r, kc.big_l, kc.r, kKendallTerms);
    });
    std::vector<verify::Check> out;
    for (std::size_t i = 0; i < cases; ++i) {
        const auto& r = reports[i];
        const std::string base = "kendall.random[" + std::to_string(i) + "]";
        out.push_back(upper_check(base + ".series_sup", r.measured_sup, r.bound));
        out.push_back(upper_check(base + ".decay_rate", r.decay_rate, r.rate_bound + 1e-6));
    }
    for (int k : {40, 80}) {
        const auto fr = verify::kendall_family_check(0.3, k, 0.1);
        out.push_back(upper_check("kendall.family.k" + std::to_string(k) + ".rel_error", fr.rel_error, 0.1));
    }
    return out;
}

std::vector<verify::Check> matrix_checks() {
    using bounds::Symmetry;
    struct Case {
        models::ReflectingWalk walk;
        std::vector<Symmetry> symmetries;
    };
    const std::vector<Case> cases = {
        {{2.0 / 3.0, std::nullopt}, {Symmetry::General, Symmetry::Reversible, Symmetry::ReversiblePositive}},
        {{0.9, std::nullopt}, {Symmetry::General, Symmetry::Reversible, Symmetry::ReversiblePositive}},
        {{0.8, 0.25}, {Symmetry::General, Symmetry::Reversible}},
    };

    std::vector<verify::Check> out;
    for (const auto& c : cases) {
        const auto tc = oracle_chain(c.walk, kXMax, kNMax);
        std::vector<std::vector<double>> profiles(kXMax + 1);
        verify::parallel_for(kXMax + 1, [&](std::size_t x) { profiles[x] = verify::log_distance_profile(tc, x, kNMax); });
        const auto constants = models::reflecting_walk_params(c.walk);
        const std::string label = walk_label(c.walk);

        double tightest = -1.0;
        bounds::Certificate tight_cert;
        for (auto sym : c.symmetries) {
            const auto cert = bounds::certificate(constants, sym);
            const auto rep = verify::certificate_domination(profiles, tc, cert.big_m, cert.gamma);
            out.push_back(upper_check("matrix.domination." + label + "." + std::string(cert.method()),
                                      rep.worst_ratio, 1.0));
            if (rep.worst_ratio > tightest) {
                tightest = rep.worst_ratio;
                tight_cert = cert;
            }
        }
        // Falsification control: shrinking M by 1e3 must break domination.
        const auto ctrl = verify::certificate_domination(profiles, tc, tight_cert.big_m * 1e-3, tight_cert.gamma);
        out.push_back({"matrix.control." + label + "." + std::string(tight_cert.method()) + "_m_times_1e-3",
                       ctrl.worst_ratio, 1.0, ctrl.worst_ratio - 1.0, !ctrl.pass});
    }

    const auto pairs = boundary_walk_pairs();
    std::vector<verify::Check> rates(pairs.size());
    verify::parallel_for(pairs.size(), [&](std::size_t i) {
        const models::ReflectingWalk w{pairs[i].first, pairs[i].second};
        const auto tc = oracle_chain(w, 0, kRateN2);
        const double measured = verify::empirical_decay_rate(tc, kRateN1, kRateN2);
        const double exact = models::reflecting_walk_rho_exact(w.p, *w.epsilon);
        const double err = std::abs(measured - exact);
        rates[i] = {"matrix.rate." + walk_label(w), measured, exact, kRateTol - err, err <= kRateTol};
    });
    out.insert(out.end(), rates.begin(), rates.end());
    return out;
}

std::vector<verify::Check> mc_checks(std::uint64_t seed, std::size_t samples) {
    std::vector<verify::Check> out;
    std::uint64_t stream = 0;
    for (double p : {2.0 / 3.0, 0.9}) {
        const models::ReflectingWalk w{p, std::nullopt};
        const double r = 1.0 / models::reflecting_walk_params(w).lambda;
        for (std::size_t x0 : {std::size_t{0}, std::size_t{3}}) {
            // Distinct seeds per configuration keep the four runs independent.
            const auto rep = verify::mc_regeneration(w, x0, r, samples, seed + 0x1000003ULL * ++stream);
            const double allowed = rep.bound + 3.0 * rep.std_err;
            out.push_back({"mc.regeneration." + walk_label(w) + ".x0_" + std::to_string(x0), rep.mean_r_tau,
                           rep.bound, allowed - rep.mean_r_tau, rep.pass});
        }
    }
    return out;
}

SuiteReport run_suite(std::string_view suite, std::uint64_t seed) {
    SuiteReport rep;
    rep.suite = std::string(suite);
    const bool all = suite == "all";
    require(all || suite == "kendall" || suite == "matrix" || suite == "mc", ErrorCode::InvalidParams,
            "unknown suite '" + std::string(suite) + "' (expected kendall, matrix, mc or all)");
    auto append = [&](std::vector<verify::Check> v) { rep.checks.insert(rep.checks.end(), v.begin(), v.end()); };
    if (all || suite == "kendall") append(kendall_checks(seed));
    if (all || suite == "matrix") append(matrix_checks());
    if (all || suite == "mc") append(mc_checks(seed));
    return rep;
}

std::string render_suite(const SuiteReport& report, const RenderOptions& opts) {
    const int pr = opts.precision;
    if (opts.format == Format::Json) {
        json checks = json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"name", c.name},
                              {"measured", detail::number_or_null(c.measured)},
                              {"bound", detail::number_or_null(c.bound)},
                              {"margin", detail::number_or_null(c.margin)},
                              {"pass", c.pass}});
        }
        json doc{{"suite", report.suite},
                 {"pass", report.pass()},
                 {"passed", report.passed()},
                 {"total", report.checks.size()},
                 {"checks", checks}};
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    if (opts.format == Format::Csv) {
        os << "name,measured,bound,margin,pass\n";
        for (const auto& c : report.checks) {
            os << detail::csv_field(c.name) << ',' << format_number(c.measured, pr) << ','
               << format_number(c.bound, pr) << ',' << format_number(c.margin, pr) << ','
               << (c.pass ? "true" : "false") << '\n';
        }
        return os.str();
    }
    for (const auto& c : report.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name << "  measured=" << format_number(c.measured, pr)
           << "  bound=" << format_number(c.bound, pr) << "  margin=" << format_number(c.margin, pr) << '\n';
    }
    os << "suite " << report.suite << ": " << report.passed() << "/" << report.checks.size() << " checks passed\n";
    return os.str();
}

}  // namespace ergo::app
