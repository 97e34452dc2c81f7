// Command-line front end: certificates, benchmark models, tables and the
// verification suites. Exit codes: 0 success, 1 failed verification,
// 2 usage or validation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ergocert/ergocert.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Global {
    std::string format = "text";
    int precision = 6;
    std::string output;
    std::uint64_t seed = 1;
};

ergo_format parse_format(const std::string& s) {
    if (s == "json") return ERGO_FORMAT_JSON;
    if (s == "csv") return ERGO_FORMAT_CSV;
    return ERGO_FORMAT_TEXT;
}

int report_error(ergo_status st) {
    std::cerr << "error: " << ergo_last_error() << " (" << ergo_status_name(st) << ")\n";
    return kExitUsage;
}

int emit(const Global& g, char* text) {
    const std::string body = text ? text : "";
    ergo_string_free(text);
    if (g.output.empty()) {
        std::cout << body;
        return kExitOk;
    }
    std::ofstream out(g.output);
    if (!out) {
        std::cerr << "error: cannot open " << g.output << " for writing\n";
        return kExitUsage;
    }
    out << body;
    return kExitOk;
}

struct BoundArgs {
    std::optional<double> lambda, big_k, beta, beta_tilde, k_tilde, gamma;
    bool atomic = false;
    std::string nu = "none";
    std::string symmetry = "general";
    std::string input;
};

int run_bound(const Global& g, const BoundArgs& a) {
    ergo_certificate* cert = nullptr;
    if (!a.input.empty()) {
        std::ifstream in(a.input);
        if (!in) {
            std::cerr << "error: cannot read " << a.input << "\n";
            return kExitUsage;
        }
        const std::string doc((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (const auto st = ergo_certificate_from_json(doc.c_str(), &cert); st != ERGO_OK) return report_error(st);
    } else {
        for (const auto& [name, v] : {std::pair{"--lambda", a.lambda}, {"--K", a.big_k}, {"--beta", a.beta}}) {
            if (!v) {
                std::cerr << "error: " << name << " is required (or pass --input)\n";
                return kExitUsage;
            }
        }
        ergo_constants c{};
        c.lambda = *a.lambda;
        c.big_k = *a.big_k;
        c.beta = *a.beta;
        c.beta_tilde = a.beta_tilde.value_or(1.0);
        c.atomic = a.atomic ? 1 : 0;
        if (a.nu == "concentrated") {
            c.nu_kind = ERGO_NU_CONCENTRATED_ON_C;
        } else if (a.nu == "v-integral") {
            if (!a.k_tilde) {
                std::cerr << "error: --nu v-integral needs --k-tilde\n";
                return kExitUsage;
            }
            c.nu_kind = ERGO_NU_V_INTEGRAL_BOUND;
            c.k_tilde = *a.k_tilde;
        } else {
            c.nu_kind = ERGO_NU_NONE;
        }
        ergo_symmetry sym = ERGO_SYMMETRY_GENERAL;
        if (a.symmetry == "reversible") sym = ERGO_SYMMETRY_REVERSIBLE;
        if (a.symmetry == "reversible-positive") sym = ERGO_SYMMETRY_REVERSIBLE_POSITIVE;
        const double gamma = a.gamma.value_or(0.0);
        if (const auto st = ergo_certificate_compute(&c, sym, a.gamma ? &gamma : nullptr, &cert); st != ERGO_OK)
            return report_error(st);
    }
    char* text = nullptr;
    const auto st = ergo_certificate_render(cert, parse_format(g.format), g.precision, &text);
    ergo_certificate_free(cert);
    if (st != ERGO_OK) return report_error(st);
    return emit(g, text);
}

struct ModelArgs {
    std::string name;
    std::map<std::string, std::optional<double>> params = {{"p", std::nullopt},     {"epsilon", std::nullopt},
                                                           {"d", std::nullopt},     {"s", std::nullopt},
                                                           {"theta", std::nullopt}, {"c", std::nullopt}};
    std::string nu = "mt";
    std::string method = "thm1.2";
    bool optimize = false;
    bool exact = false;
};

int run_model(const Global& g, const ModelArgs& a) {
    nlohmann::json req;
    req["model"] = a.name;
    req["nu"] = a.nu;
    req["method"] = a.method;
    req["optimize"] = a.optimize;
    req["exact"] = a.exact;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : a.params) {
        if (v) params[k] = *v;
    }
    req["params"] = params;
    char* text = nullptr;
    if (const auto st = ergo_model_run(req.dump().c_str(), parse_format(g.format), g.precision, &text);
        st != ERGO_OK)
        return report_error(st);
    return emit(g, text);
}

int run_table(const Global& g, int number) {
    char* text = nullptr;
    if (const auto st = ergo_table_render(number, parse_format(g.format), g.precision, &text); st != ERGO_OK)
        return report_error(st);
    return emit(g, text);
}

int run_verify(const Global& g, const std::string& suite) {
    char* text = nullptr;
    int all_pass = 0;
    if (const auto st = ergo_verify_run(suite.c_str(), g.seed, parse_format(g.format), g.precision, &text, &all_pass);
        st != ERGO_OK)
        return report_error(st);
    const int rc = emit(g, text);
    if (rc != kExitOk) return rc;
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computable geometric convergence certificates for Markov chains"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--precision", g.precision, "Significant digits in text and CSV output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_option("--output", g.output, "Write output to this file instead of stdout");
    app.add_option("--seed", g.seed, "Seed for randomized suites")->capture_default_str();

    BoundArgs bound;
    auto* bound_cmd = app.add_subcommand("bound", "Certificate from drift and minorization constants");
    bound_cmd->add_option("--lambda", bound.lambda, "Drift factor off C");
    bound_cmd->add_option("--K", bound.big_k, "Bound on PV over C");
    bound_cmd->add_option("--beta", bound.beta, "Lower bound on beta_tilde nu(C)");
    bound_cmd->add_option("--beta-tilde", bound.beta_tilde, "Minorization constant (1 for an atom)");
    bound_cmd->add_flag("--atomic", bound.atomic, "C is an atom");
    bound_cmd->add_option("--nu", bound.nu, "Side information on nu")
        ->check(CLI::IsMember({"none", "concentrated", "v-integral"}))
        ->capture_default_str();
    bound_cmd->add_option("--k-tilde", bound.k_tilde, "Bound on nu(C) + integral of V off C");
    bound_cmd->add_option("--symmetry", bound.symmetry, "Structure of the chain")
        ->check(CLI::IsMember({"general", "reversible", "reversible-positive"}))
        ->capture_default_str();
    bound_cmd->add_option("--gamma", bound.gamma, "Rate at which M is evaluated (default (1 + rho) / 2)");
    bound_cmd->add_option("--input", bound.input, "Re-ingest a JSON certificate and recompute it");

    ModelArgs model;
    auto* model_cmd = app.add_subcommand("model", "Certificate for a benchmark chain");
    model_cmd->add_option("name", model.name, "reflecting-walk, mh-normal or contracting-normal")->required();
    for (auto& [key, slot] : model.params) model_cmd->add_option("--" + key, slot);
    model_cmd->add_option("--nu", model.nu, "Minorizing measure for mh-normal")
        ->check(CLI::IsMember({"mt", "infimum"}))
        ->capture_default_str();
    model_cmd->add_option("--method", model.method, "thm1.1, thm1.2, thm1.3, coupling or binomial")
        ->capture_default_str();
    model_cmd->add_flag("--optimize", model.optimize, "Grid-search the tuning parameters");
    model_cmd->add_flag("--exact", model.exact, "Also report the exact rate (reflecting walk)");

    int table_no = 0;
    auto* table_cmd = app.add_subcommand("table", "Reproduce a benchmark table");
    table_cmd->add_option("n", table_no, "Table number, 1 to 6")->required();

    std::string suite;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->add_option("suite", suite, "kendall, matrix, mc or all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (bound_cmd->parsed()) return run_bound(g, bound);
    if (model_cmd->parsed()) return run_model(g, model);
    if (table_cmd->parsed()) return run_table(g, table_no);
    if (verify_cmd->parsed()) return run_verify(g, suite);
    return kExitUsage;
}
