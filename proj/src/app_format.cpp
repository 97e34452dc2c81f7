#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

#include "app_internal.hpp"
#include "ergocert/app.hpp"
#include "ergocert/error.hpp"

namespace ergo::app {

using nlohmann::json;

std::optional<Format> format_from_string(std::string_view s) noexcept {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

std::string format_number(double x, int precision) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(precision) << x;
    return os.str();
}

namespace detail {

std::string render_pairs(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

json number_or_null(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

double number_field(const json& doc, const char* key) {
    require(doc.contains(key) && doc.at(key).is_number(), ErrorCode::InvalidParams,
            std::string("missing numeric field '") + key + "'");
    return doc.at(key).get<double>();
}

}  // namespace detail

namespace {

std::string nu_kind(const bounds::NuInfo& nu) {
    if (std::holds_alternative<bounds::NuConcentratedOnC>(nu)) return "concentrated_on_C";
    if (std::holds_alternative<bounds::NuVIntegralBound>(nu)) return "v_integral_bound";
    return "none";
}

}  // namespace

json certificate_to_json(const bounds::Certificate& cert) {
    using detail::number_or_null;
    const auto& c = cert.constants;
    json doc;
    doc["method"] = std::string(cert.method());
    doc["lambda"] = c.lambda;
    doc["K"] = c.big_k;
    doc["beta"] = c.beta;
    doc["beta_tilde"] = c.beta_tilde;
    doc["atomic"] = c.atomic;
    doc["nu"] = nu_kind(c.nu_info);
    if (const auto* vb = std::get_if<bounds::NuVIntegralBound>(&c.nu_info)) doc["k_tilde"] = vb->k_tilde;
    doc["symmetry"] = std::string(bounds::to_string(cert.symmetry));
    doc["rho"] = cert.rho;
    doc["gamma"] = cert.gamma;
    doc["M"] = number_or_null(cert.big_m);
    json diag = json::object();
    for (const auto& d : cert.diagnostics) diag[d.name] = number_or_null(d.value);
    doc["diagnostics"] = diag;
    return doc;
}

bounds::Certificate certificate_from_json(const json& doc) {
    using detail::number_field;
    require(doc.is_object(), ErrorCode::InvalidParams, "certificate must be a JSON object");
    static const std::vector<std::string> known = {"method", "lambda", "K",     "beta", "beta_tilde", "atomic", "nu",
                                                   "k_tilde", "symmetry", "rho", "gamma", "M",        "diagnostics"};
    for (const auto& [key, _] : doc.items()) {
        require(std::find(known.begin(), known.end(), key) != known.end(), ErrorCode::InvalidParams,
                "unknown certificate field '" + key + "'");
    }
    bounds::DriftMinorization p;
    p.lambda = number_field(doc, "lambda");
    p.big_k = number_field(doc, "K");
    p.beta = number_field(doc, "beta");
    p.beta_tilde = doc.contains("beta_tilde") ? number_field(doc, "beta_tilde") : 1.0;
    p.atomic = doc.value("atomic", true);
    const std::string nu = doc.value("nu", std::string("none"));
    if (nu == "none") {
        p.nu_info = bounds::NuNone{};
    } else if (nu == "concentrated_on_C") {
        p.nu_info = bounds::NuConcentratedOnC{};
    } else if (nu == "v_integral_bound") {
        p.nu_info = bounds::NuVIntegralBound{number_field(doc, "k_tilde")};
    } else {
        fail(ErrorCode::InvalidParams, "unknown nu kind '" + nu + "'");
    }
    const std::string sym_name = doc.value("symmetry", std::string("general"));
    const auto sym = bounds::symmetry_from_string(sym_name);
    require(sym.has_value(), ErrorCode::InvalidParams, "unknown symmetry '" + sym_name + "'");

    std::optional<double> gamma;
    if (doc.contains("gamma")) gamma = number_field(doc, "gamma");
    auto cert = bounds::certificate(p, *sym, gamma);

    if (doc.contains("method")) {
        require(doc.at("method") == std::string(cert.method()), ErrorCode::InvalidParams,
                "method does not match the symmetry");
    }
    if (doc.contains("rho")) {
        require(number_field(doc, "rho") == cert.rho, ErrorCode::InvalidParams,
                "stored rho differs from the recomputed value");
    }
    if (doc.contains("M") && doc.at("M").is_number()) {
        require(number_field(doc, "M") == cert.big_m, ErrorCode::InvalidParams,
                "stored M differs from the recomputed value");
    }
    return cert;
}

std::string render_certificate(const bounds::Certificate& cert, const RenderOptions& opts) {
    if (opts.format == Format::Json) return certificate_to_json(cert).dump(2) + "\n";
    const int pr = opts.precision;
    const auto& c = cert.constants;
    std::vector<std::pair<std::string, std::string>> rows = {
        {"method", std::string(cert.method())},
        {"symmetry", std::string(bounds::to_string(cert.symmetry))},
        {"lambda", format_number(c.lambda, pr)},
        {"K", format_number(c.big_k, pr)},
        {"beta", format_number(c.beta, pr)},
        {"beta_tilde", format_number(c.beta_tilde, pr)},
        {"atomic", c.atomic ? "true" : "false"},
        {"nu", nu_kind(c.nu_info)},
    };
    if (const auto* vb = std::get_if<bounds::NuVIntegralBound>(&c.nu_info))
        rows.emplace_back("k_tilde", format_number(vb->k_tilde, pr));
    rows.emplace_back("rho", format_number(cert.rho, pr));
    rows.emplace_back("gamma", format_number(cert.gamma, pr));
    rows.emplace_back("M", format_number(cert.big_m, pr));
    for (const auto& d : cert.diagnostics) rows.emplace_back(d.name, format_number(d.value, pr));

    if (opts.format == Format::Csv) {
        std::string out = "key,value\n";
        for (const auto& [k, v] : rows) out += detail::csv_field(k) + "," + detail::csv_field(v) + "\n";
        return out;
    }
    return detail::render_pairs(rows);
}

}  // namespace ergo::app
