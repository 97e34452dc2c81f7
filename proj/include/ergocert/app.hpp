#pragma once

// Front-end layer shared by the C API and the command line: serialization,
// the reproduced benchmark tables, the model runner and the verify suites.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ergocert/bounds.hpp"
#include "ergocert/models.hpp"
#include "ergocert/verify.hpp"

namespace ergo::app {

enum class Format { Text, Json, Csv };

std::optional<Format> format_from_string(std::string_view s) noexcept;

struct RenderOptions {
    Format format = Format::Text;
    int precision = 6;   // significant digits for text and CSV; JSON keeps full precision
};

/// Decimal rendering with the given number of significant digits.
std::string format_number(double x, int precision);

// Certificates

nlohmann::json certificate_to_json(const bounds::Certificate& cert);

/// Rebuilds the certificate from its constants, symmetry and gamma. When the
/// document also carries rho and M they must match the recomputation exactly.
bounds::Certificate certificate_from_json(const nlohmann::json& doc);

std::string render_certificate(const bounds::Certificate& cert, const RenderOptions& opts);

// Benchmark models

enum class Method { Thm11, Thm12, Thm13, Coupling, Binomial };

std::optional<Method> method_from_string(std::string_view s) noexcept;
std::string_view to_string(Method m) noexcept;

/// Rate produced by a method on a model. For Binomial this is the rate of the
/// lazy kernel, not its square.
double model_rho(const models::ModelSpec& spec, Method method);

struct MhTuning {
    double d = 0.0;
    double s = 0.0;
    double rho = 1.0;
};

/// Grid search over d in [0.5, 3], s in [0.01, 1.5] at step 0.01. The general
/// method scans a 0.05 grid first and refines at 0.01 around the best cell.
MhTuning optimize_mh(Method method, models::NuVariant nu);

struct ContractingTuning {
    double c = 0.0;
    double rho = 1.0;
};

/// Grid search over c in (1, 5] at step 0.01 (c > sqrt 2 for coupling).
ContractingTuning optimize_contracting(Method method, double theta);

struct ModelRequest {
    std::string model;                     // reflecting-walk | mh-normal | contracting-normal
    std::map<std::string, double> params;  // p, epsilon | d, s | theta, c
    std::string nu = "mt";                 // mt | infimum
    std::string method = "thm1.2";
    bool optimize = false;
    bool exact = false;
};

/// Unknown keys are rejected.
ModelRequest model_request_from_json(const nlohmann::json& doc);

struct ModelResult {
    std::string model;
    std::string method;
    std::vector<std::pair<std::string, double>> tuning;
    std::vector<std::pair<std::string, double>> reference_tuning;   // published optimum, when known
    bool optimized = false;
    std::optional<double> rho;
    std::optional<double> rho_squared;   // binomial method
    std::optional<double> rho_exact;     // --exact
    std::optional<bounds::Certificate> certificate;
};

ModelResult run_model(const ModelRequest& req);
nlohmann::json model_result_to_json(const ModelResult& res);
std::string render_model(const ModelResult& res, const RenderOptions& opts);

// Tables

struct TableCell {
    std::string row;
    std::string column;
    std::optional<double> computed;
    std::optional<double> reference;
    std::string note;
};

struct Table {
    int number = 0;
    std::string title;
    std::vector<TableCell> cells;
};

/// Reproduces table n in 1..6 next to its published values. InvalidParams otherwise.
Table build_table(int number);
std::string render_table(const Table& table, const RenderOptions& opts);

// Verification suites

struct SuiteReport {
    std::string suite;
    std::vector<verify::Check> checks;

    bool pass() const;
    std::size_t passed() const;
};

/// suite is kendall, matrix, mc or all.
SuiteReport run_suite(std::string_view suite, std::uint64_t seed);
std::string render_suite(const SuiteReport& report, const RenderOptions& opts);

// Pieces of the suites, exposed for the tests.

/// Random increment law with b_1 >= 0.05 and support of size 2..8, together
/// with admissible (beta, R, L) and a radius r inside (1, R1).
struct KendallCase {
    verify::IncrementDistribution b;
    double beta = 0.0;
    double big_r = 0.0;
    double big_l = 0.0;
    double r = 0.0;
};

KendallCase random_kendall_case(std::uint64_t seed, std::uint64_t index);

std::vector<verify::Check> kendall_checks(std::uint64_t seed, std::size_t cases = 200);
std::vector<verify::Check> matrix_checks();
std::vector<verify::Check> mc_checks(std::uint64_t seed, std::size_t samples = 100000);

/// The fifteen (p, epsilon) pairs of the boundary-modified walk table.
std::vector<std::pair<double, double>> boundary_walk_pairs();

}  // namespace ergo::app
