#include <cmath>
#include <limits>
#include <numbers>

#include "app_internal.hpp"
#include "ergocert/app.hpp"
#include "ergocert/competitors.hpp"
#include "ergocert/error.hpp"

namespace ergo::app {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bounds::Symmetry method_symmetry(Method m) {
    switch (m) {
        case Method::Thm11: return bounds::Symmetry::General;
        case Method::Thm12: return bounds::Symmetry::Reversible;
        default: return bounds::Symmetry::ReversiblePositive;
    }
}

bool is_theorem(Method m) { return m == Method::Thm11 || m == Method::Thm12 || m == Method::Thm13; }

double theorem_rho(const bounds::DriftMinorization& p, Method m) {
    switch (m) {
        case Method::Thm11: return bounds::rho_general(p).rho;
        case Method::Thm12: return bounds::rho_reversible(p).rho;
        default: return bounds::rho_positive(p).rho;
    }
}

bounds::DriftMinorization model_constants(const models::ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> bounds::DriftMinorization {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, models::ReflectingWalk>) {
                return models::reflecting_walk_params(m);
            } else if constexpr (std::is_same_v<T, models::MetropolisNormal>) {
                return models::mh_normal_params(m);
            } else {
                return models::contracting_params(m);
            }
        },
        spec);
}

double rho_or_inf(const models::ModelSpec& spec, Method method) {
    try {
        return model_rho(spec, method);
    } catch (const Error&) {
        return kInf;
    }
}

struct GridBest {
    double d = 0.0;
    double s = 0.0;
    double rho = kInf;
};

/// Scans d = d_lo + i dd, s = s_lo + j ds (both in hundredths) and keeps the
/// first minimum in row-major order.
GridBest scan_mh(Method method, models::NuVariant nu, int d_lo, int d_hi, int d_step, int s_lo, int s_hi,
                 int s_step) {
    const int rows = (d_hi - d_lo) / d_step + 1;
    std::vector<GridBest> best(static_cast<std::size_t>(rows));
    verify::parallel_for(static_cast<std::size_t>(rows), [&](std::size_t i) {
        const int di = d_lo + static_cast<int>(i) * d_step;
        GridBest b;
        for (int si = s_lo; si <= s_hi; si += s_step) {
            const models::MetropolisNormal spec{di / 100.0, si / 100.0, nu};
            const double rho = rho_or_inf(spec, method);
            if (rho < b.rho) b = {spec.d, spec.s, rho};
        }
        best[i] = b;
    });
    GridBest out;
    for (const auto& b : best) {
        if (b.rho < out.rho) out = b;
    }
    return out;
}

std::vector<std::pair<std::string, double>> mh_reference(Method method, models::NuVariant nu) {
    // Published optima (d, s) for each method and minorizing measure.
    const bool mt = nu == models::NuVariant::MtMeasure;
    switch (method) {
        case Method::Thm11: return {{"d", 1.0}, {"s", mt ? 0.13 : 0.16}};
        case Method::Coupling: return {{"d", mt ? 1.8 : 1.9}, {"s", 1.1}};
        case Method::Thm12: return {{"d", 1.0}, {"s", mt ? 0.07 : 0.11}};
        case Method::Thm13: return {{"d", 1.1}, {"s", mt ? 0.16 : 0.22}};
        default: return {};
    }
}

std::vector<std::pair<std::string, double>> contracting_reference(Method method, double theta) {
    struct Row {
        double theta, coupling_c, c;
    };
    static const Row rows[] = {{0.5, 2.1, 1.5}, {0.75, 1.7, 1.2}, {0.9, 1.5, 1.1}};
    if (method == Method::Thm11) return {};
    for (const auto& r : rows) {
        if (std::abs(r.theta - std::abs(theta)) < 1e-12) return {{"c", method == Method::Coupling ? r.coupling_c : r.c}};
    }
    return {};
}

double required(const ModelRequest& req, const std::string& key) {
    const auto it = req.params.find(key);
    require(it != req.params.end(), ErrorCode::InvalidParams, req.model + " needs --" + key);
    return it->second;
}

void allow_only(const ModelRequest& req, std::initializer_list<const char*> keys) {
    for (const auto& [k, _] : req.params) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        require(ok, ErrorCode::InvalidParams, "parameter '" + k + "' does not apply to " + req.model);
    }
}

models::NuVariant parse_nu(const std::string& s) {
    if (s == "mt") return models::NuVariant::MtMeasure;
    if (s == "infimum") return models::NuVariant::InfimumMeasure;
    fail(ErrorCode::InvalidParams, "unknown nu variant '" + s + "' (expected mt or infimum)");
}

}  // namespace

std::optional<Method> method_from_string(std::string_view s) noexcept {
    if (s == "thm1.1") return Method::Thm11;
    if (s == "thm1.2") return Method::Thm12;
    if (s == "thm1.3") return Method::Thm13;
    if (s == "coupling") return Method::Coupling;
    if (s == "binomial") return Method::Binomial;
    return std::nullopt;
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Thm11: return "thm1.1";
        case Method::Thm12: return "thm1.2";
        case Method::Thm13: return "thm1.3";
        case Method::Coupling: return "coupling";
        case Method::Binomial: return "binomial";
    }
    return "thm1.1";
}

double model_rho(const models::ModelSpec& spec, Method method) {
    if (is_theorem(method)) return theorem_rho(model_constants(spec), method);
    if (method == Method::Binomial) {
        const auto lazy = models::binomial_modification(model_constants(spec), models::sup_v_on_c(spec));
        return bounds::rho_positive(lazy).rho;
    }
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, models::ReflectingWalk>) {
                fail(ErrorCode::InvalidParams, "the coupling comparison is not available for the walk");
            } else if constexpr (std::is_same_v<T, models::MetropolisNormal>) {
                return competitors::coupling_rho(models::mh_coupling_input(m));
            } else {
                return competitors::coupling_rho(models::contracting_coupling_input(m));
            }
        },
        spec);
}

MhTuning optimize_mh(Method method, models::NuVariant nu) {
    GridBest best;
    if (method == Method::Thm11) {
        const auto coarse = scan_mh(method, nu, 50, 300, 5, 1, 146, 5);
        const int dc = static_cast<int>(std::lround(coarse.d * 100.0));
        const int sc = static_cast<int>(std::lround(coarse.s * 100.0));
        best = scan_mh(method, nu, std::max(50, dc - 5), std::min(300, dc + 5), 1, std::max(1, sc - 5),
                       std::min(150, sc + 5), 1);
    } else {
        best = scan_mh(method, nu, 50, 300, 1, 1, 150, 1);
    }
    require(std::isfinite(best.rho), ErrorCode::EmptyDomain, "no admissible tuning on the grid");
    return {best.d, best.s, best.rho};
}

ContractingTuning optimize_contracting(Method method, double theta) {
    const int lo = method == Method::Coupling ? 142 : 101;
    const int n = 500 - lo + 1;
    std::vector<double> rho(static_cast<std::size_t>(n));
    verify::parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        rho[i] = rho_or_inf(models::ContractingNormal{theta, (lo + static_cast<int>(i)) / 100.0}, method);
    });
    ContractingTuning best;
    best.rho = kInf;
    for (int i = 0; i < n; ++i) {
        if (rho[static_cast<std::size_t>(i)] < best.rho) best = {(lo + i) / 100.0, rho[static_cast<std::size_t>(i)]};
    }
    require(std::isfinite(best.rho), ErrorCode::EmptyDomain, "no admissible tuning on the grid");
    return best;
}

ModelRequest model_request_from_json(const json& doc) {
    require(doc.is_object(), ErrorCode::InvalidParams, "model request must be a JSON object");
    ModelRequest req;
    for (const auto& [key, val] : doc.items()) {
        if (key == "model") {
            req.model = val.get<std::string>();
        } else if (key == "nu") {
            req.nu = val.get<std::string>();
        } else if (key == "method") {
            req.method = val.get<std::string>();
        } else if (key == "optimize") {
            req.optimize = val.get<bool>();
        } else if (key == "exact") {
            req.exact = val.get<bool>();
        } else if (key == "params") {
            require(val.is_object(), ErrorCode::InvalidParams, "params must be an object");
            for (const auto& [pk, pv] : val.items()) {
                require(pv.is_number(), ErrorCode::InvalidParams, "parameter '" + pk + "' must be numeric");
                req.params[pk] = pv.get<double>();
            }
        } else {
            fail(ErrorCode::InvalidParams, "unknown request field '" + key + "'");
        }
    }
    return req;
}

ModelResult run_model(const ModelRequest& req) {
    const auto method = method_from_string(req.method);
    require(method.has_value(), ErrorCode::InvalidParams, "unknown method '" + req.method + "'");

    ModelResult res;
    res.model = req.model;
    res.method = std::string(to_string(*method));
    res.optimized = req.optimize;

    models::ModelSpec spec;
    if (req.model == "reflecting-walk") {
        allow_only(req, {"p", "epsilon"});
        require(!req.optimize, ErrorCode::InvalidParams, "the walk has no tuning parameters to optimize");
        models::ReflectingWalk w{required(req, "p"), std::nullopt};
        if (req.params.count("epsilon")) w.epsilon = req.params.at("epsilon");
        w.validate();
        res.tuning.emplace_back("p", w.p);
        if (w.epsilon) res.tuning.emplace_back("epsilon", *w.epsilon);
        if (req.exact) {
            // Without a modified boundary the walk is stochastically monotone and rho_V = lambda.
            res.rho_exact = w.epsilon ? models::reflecting_walk_rho_exact(w.p, *w.epsilon)
                                      : 2.0 * std::sqrt(w.p * w.q());
        }
        spec = w;
    } else if (req.model == "mh-normal") {
        allow_only(req, {"d", "s"});
        const auto nu = parse_nu(req.nu);
        models::MetropolisNormal m{0.0, 0.0, nu};
        if (req.optimize) {
            const auto t = optimize_mh(*method, nu);
            m.d = t.d;
            m.s = t.s;
        } else {
            m.d = required(req, "d");
            m.s = required(req, "s");
        }
        res.tuning = {{"d", m.d}, {"s", m.s}};
        res.reference_tuning = mh_reference(*method, nu);
        spec = m;
    } else if (req.model == "contracting-normal") {
        allow_only(req, {"theta", "c"});
        models::ContractingNormal m{required(req, "theta"), 0.0};
        m.c = req.optimize ? optimize_contracting(*method, m.theta).c : required(req, "c");
        res.tuning = {{"theta", m.theta}, {"c", m.c}};
        res.reference_tuning = contracting_reference(*method, m.theta);
        spec = m;
    } else {
        fail(ErrorCode::InvalidParams,
             "unknown model '" + req.model + "' (expected reflecting-walk, mh-normal or contracting-normal)");
    }
    require(!req.exact || req.model == "reflecting-walk", ErrorCode::InvalidParams,
            "--exact is only available for the reflecting walk");

    if (is_theorem(*method)) {
        res.certificate = bounds::certificate(model_constants(spec), method_symmetry(*method));
        res.rho = res.certificate->rho;
    } else {
        res.rho = model_rho(spec, *method);
        if (*method == Method::Binomial) res.rho_squared = *res.rho * *res.rho;
    }
    return res;
}

json model_result_to_json(const ModelResult& res) {
    json doc;
    doc["model"] = res.model;
    doc["method"] = res.method;
    doc["optimized"] = res.optimized;
    json tuning = json::object();
    for (const auto& [k, v] : res.tuning) tuning[k] = v;
    doc["tuning"] = tuning;
    if (!res.reference_tuning.empty()) {
        json ref = json::object();
        for (const auto& [k, v] : res.reference_tuning) ref[k] = v;
        doc["reference_tuning"] = ref;
    }
    if (res.rho) {
        doc["rho"] = *res.rho;
        doc["one_minus_rho"] = 1.0 - *res.rho;
    }
    if (res.rho_squared) doc["rho_squared"] = *res.rho_squared;
    if (res.rho_exact) doc["rho_exact"] = *res.rho_exact;
    if (res.certificate) doc["certificate"] = certificate_to_json(*res.certificate);
    return doc;
}

std::string render_model(const ModelResult& res, const RenderOptions& opts) {
    if (opts.format == Format::Json) return model_result_to_json(res).dump(2) + "\n";
    const int pr = opts.precision;
    std::vector<std::pair<std::string, std::string>> rows = {{"model", res.model}, {"method", res.method}};
    for (const auto& [k, v] : res.tuning) rows.emplace_back(k, format_number(v, pr));
    for (const auto& [k, v] : res.reference_tuning) rows.emplace_back("reference_" + k, format_number(v, pr));
    if (res.rho) {
        rows.emplace_back("rho", format_number(*res.rho, pr));
        rows.emplace_back("one_minus_rho", format_number(1.0 - *res.rho, pr));
    }
    if (res.rho_squared) rows.emplace_back("rho_squared", format_number(*res.rho_squared, pr));
    if (res.rho_exact) rows.emplace_back("rho_exact", format_number(*res.rho_exact, pr));
    if (res.certificate) {
        rows.emplace_back("gamma", format_number(res.certificate->gamma, pr));
        rows.emplace_back("M", format_number(res.certificate->big_m, pr));
        for (const auto& d : res.certificate->diagnostics) rows.emplace_back(d.name, format_number(d.value, pr));
    }
    if (opts.format == Format::Csv) {
        std::string out = "key,value\n";
        for (const auto& [k, v] : rows) out += detail::csv_field(k) + "," + detail::csv_field(v) + "\n";
        return out;
    }
    return detail::render_pairs(rows);
}

}  // namespace ergo::app
