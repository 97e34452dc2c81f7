#include <cmath>
#include <iomanip>
#include <sstream>

#include "app_internal.hpp"
#include "ergocert/app.hpp"
#include "ergocert/competitors.hpp"
#include "ergocert/error.hpp"

namespace ergo::app {

using nlohmann::json;

namespace {

constexpr const char* kNoFormula = "skipped: needs constants that are not given in closed form";
constexpr const char* kExternal = "skipped: external estimate";

std::string p_label(double p) { return p == 2.0 / 3.0 ? "2/3" : format_number(p, 6); }

TableCell cell(std::string row, std::string column, std::optional<double> computed, std::optional<double> reference,
               std::string note = {}) {
    return {std::move(row), std::move(column), computed, reference, std::move(note)};
}

Table table1() {
    Table t{1, "Reflecting walk on the half line: Kendall-type rates and zeta_C", {}};
    struct Ref {
        double p, mt_rho, mt_zeta, mtb_rho, mtb_zeta, thm11, mts_rho, mts_zeta, thm12, lt;
    };
    // Reference row per p: MT, MTB, 1.1, MT*, 1.2, LT.
    const Ref refs[] = {
        {2.0 / 3.0, 0.99994, 1119, 0.9991, 63.55, 0.9994, 0.9965, 13, 0.9428, 0.9428},
        {0.9, 0.9967, 78.77, 0.9470, 2.764, 0.9060, 0.9722, 7.313, 0.6, 0.6},
    };
    for (const auto& r : refs) {
        const std::string col = "p=" + p_label(r.p);
        const auto c = models::reflecting_walk_params({r.p, std::nullopt});
        t.cells.push_back(cell("MT", col + " rho", std::nullopt, r.mt_rho, kNoFormula));
        t.cells.push_back(
            cell("MT", col + " zeta_C", competitors::mt_zeta(c.lambda, c.big_k, c.beta), r.mt_zeta));
        t.cells.push_back(cell("MTB", col + " rho", std::nullopt, r.mtb_rho, kNoFormula));
        t.cells.push_back(
            cell("MTB", col + " zeta_C", competitors::mtb_zeta(c.lambda, c.big_k, c.beta), r.mtb_zeta));
        t.cells.push_back(cell("1.1", col + " rho", bounds::rho_general(c).rho, r.thm11));
        t.cells.push_back(cell("MT*", col + " rho", std::nullopt, r.mts_rho, kNoFormula));
        t.cells.push_back(cell("MT*", col + " zeta_C", std::nullopt, r.mts_zeta, kNoFormula));
        t.cells.push_back(cell("1.2", col + " rho", bounds::rho_reversible(c).rho, r.thm12));
        t.cells.push_back(cell("LT", col + " rho", bounds::rho_positive(c).rho, r.lt, "rho = lambda"));
    }
    return t;
}

Table mh_table(int number, models::NuVariant nu) {
    const bool mt = nu == models::NuVariant::MtMeasure;
    Table t{number,
            std::string("Metropolis sampler for N(0,1), ") + (mt ? "truncated Gaussian" : "pointwise infimum") +
                " minorizing measure: 1 - rho at the published (d, s)",
            {}};
    struct Row {
        const char* label;
        std::optional<Method> method;
        double d, s, one_minus_rho;
    };
    std::vector<Row> rows;
    if (mt) {
        rows = {{"MT", std::nullopt, 1.4, 4e-5, 1.6e-8},
                {"thm1.1", Method::Thm11, 1.0, 0.13, 6.3e-7},
                {"Coupling", Method::Coupling, 1.8, 1.1, 0.00068},
                {"thm1.2", Method::Thm12, 1.0, 0.07, 0.0091},
                {"thm1.3", Method::Thm13, 1.1, 0.16, 0.0253}};
    } else {
        rows = {{"thm1.1", Method::Thm11, 1.0, 0.16, 1.7e-6},
                {"Coupling", Method::Coupling, 1.9, 1.1, 0.00187},
                {"thm1.2", Method::Thm12, 1.0, 0.11, 0.0135},
                {"thm1.3", Method::Thm13, 1.1, 0.22, 0.0333}};
    }
    for (const auto& r : rows) {
        t.cells.push_back(cell(r.label, "d", std::nullopt, r.d, "input"));
        t.cells.push_back(cell(r.label, "s", std::nullopt, r.s, "input"));
        if (!r.method) {
            t.cells.push_back(cell(r.label, "1-rho", std::nullopt, r.one_minus_rho, kNoFormula));
            continue;
        }
        const double rho = model_rho(models::MetropolisNormal{r.d, r.s, nu}, *r.method);
        t.cells.push_back(cell(r.label, "1-rho", 1.0 - rho, r.one_minus_rho));
    }
    return t;
}

Table table4() {
    Table t{4, "Contracting normals N(theta x, 1 - theta^2)", {}};
    struct Row {
        double theta, c_coupling, coupling, c, thm12, thm13, binomial_sq;
    };
    const Row rows[] = {
        {0.5, 2.1, 0.946, 1.5, 0.950, 0.897, 0.952},
        {0.75, 1.7, 0.9963, 1.2, 0.9958, 0.9847, 0.9924},
        {0.9, 1.5, 0.99998, 1.1, 0.99998, 0.99948, 0.99974},
    };
    for (const auto& r : rows) {
        const std::string row = "theta=" + format_number(r.theta, 6);
        const models::ContractingNormal at_c{r.theta, r.c};
        t.cells.push_back(cell(row, "Coupling c", std::nullopt, r.c_coupling, "input"));
        t.cells.push_back(cell(row, "Coupling rho", model_rho(models::ContractingNormal{r.theta, r.c_coupling},
                                                            Method::Coupling),
                               r.coupling));
        t.cells.push_back(cell(row, "c", std::nullopt, r.c, "input"));
        t.cells.push_back(cell(row, "thm1.2 rho", model_rho(at_c, Method::Thm12), r.thm12));
        t.cells.push_back(cell(row, "thm1.3 rho", model_rho(at_c, Method::Thm13), r.thm13,
                               "positivity of P assumed for theta > 0"));
        const double lazy = model_rho(at_c, Method::Binomial);
        t.cells.push_back(cell(row, "Binomial rho~^2", lazy * lazy, r.binomial_sq));
    }
    return t;
}

Table table5() {
    Table t{5, "Walk with boundary P(0,0) = epsilon: reversible rate and exact rho_V", {}};
    // rho_F, rho, rho_V for each (p, epsilon) in row-major order.
    const double refs[15][3] = {
        {0.9997, 0.9909, 0.9864}, {0.9995, 0.9798, 0.9798}, {0.9994, 0.9798, 0.9798},
        {0.9964, 0.9830, 0.9731}, {0.9830, 0.9165, 0.9165}, {0.9757, 0.9165, 0.9165},
        {0.9793, 0.9759, 0.9633}, {0.9333, 0.8796, 0.8409}, {0.9333, 0.8000, 0.8000},
        {0.9696, 0.9687, 0.9559}, {0.8539, 0.8470, 0.7885}, {0.7500, 0.6817, 0.6250},
        {0.9564, 0.9645, 0.9528}, {0.7853, 0.8289, 0.7679}, {0.5814, 0.6667, 0.5556},
    };
    const auto pairs = boundary_walk_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [p, eps] = pairs[i];
        const std::string col = "p=" + format_number(p, 6) + " eps=" + format_number(eps, 6);
        const auto c = models::reflecting_walk_params({p, eps});
        t.cells.push_back(cell("rho_F", col, std::nullopt, refs[i][0], kExternal));
        t.cells.push_back(cell("rho", col, bounds::rho_reversible(c).rho, refs[i][1]));
        t.cells.push_back(cell("rho_V", col, models::reflecting_walk_rho_exact(p, eps), refs[i][2]));
    }
    return t;
}

Table table6() {
    Table t{6, "Binomial modification of the walk: rho~^2 with rho~ = (1 + lambda) / 2", {}};
    const double ps[] = {0.6, 0.7, 0.8, 0.9, 0.95};
    const double refs[] = {0.9799, 0.9186, 0.8100, 0.6400, 0.5154};
    for (int i = 0; i < 5; ++i) {
        const double lazy = model_rho(models::ReflectingWalk{ps[i], std::nullopt}, Method::Binomial);
        t.cells.push_back(cell("rho~^2", "p=" + format_number(ps[i], 6), lazy * lazy, refs[i]));
    }
    return t;
}

std::optional<double> abs_diff(const TableCell& c) {
    if (c.computed && c.reference) return std::abs(*c.computed - *c.reference);
    return std::nullopt;
}

std::string opt_number(const std::optional<double>& x, int pr) { return x ? format_number(*x, pr) : ""; }

}  // namespace

std::vector<std::pair<double, double>> boundary_walk_pairs() {
    std::vector<std::pair<double, double>> out;
    for (double p : {0.6, 0.7, 0.8, 0.9, 0.95}) {
        for (double eps : {0.05, 0.25, 0.5}) out.emplace_back(p, eps);
    }
    return out;
}

Table build_table(int number) {
    switch (number) {
        case 1: return table1();
        case 2: return mh_table(2, models::NuVariant::MtMeasure);
        case 3: return mh_table(3, models::NuVariant::InfimumMeasure);
        case 4: return table4();
        case 5: return table5();
        case 6: return table6();
        default: fail(ErrorCode::InvalidParams, "table number must be between 1 and 6");
    }
}

std::string render_table(const Table& table, const RenderOptions& opts) {
    const int pr = opts.precision;
    if (opts.format == Format::Json) {
        json cells = json::array();
        for (const auto& c : table.cells) {
            json j;
            j["row"] = c.row;
            j["column"] = c.column;
            j["computed"] = c.computed ? json(*c.computed) : json(nullptr);
            j["reference"] = c.reference ? json(*c.reference) : json(nullptr);
            const auto d = abs_diff(c);
            j["abs_diff"] = d ? json(*d) : json(nullptr);
            j["note"] = c.note;
            cells.push_back(j);
        }
        json doc{{"table", table.number}, {"title", table.title}, {"cells", cells}};
        return doc.dump(2) + "\n";
    }
    if (opts.format == Format::Csv) {
        std::string out = "row,column,computed,reference,abs_diff,note\n";
        for (const auto& c : table.cells) {
            out += detail::csv_field(c.row) + "," + detail::csv_field(c.column) + "," + opt_number(c.computed, pr) +
                   "," + opt_number(c.reference, pr) + "," + opt_number(abs_diff(c), pr) + "," +
                   detail::csv_field(c.note) + "\n";
        }
        return out;
    }
    std::vector<std::vector<std::string>> grid = {{"row", "column", "computed", "reference", "abs_diff", "note"}};
    for (const auto& c : table.cells) {
        grid.push_back({c.row, c.column, opt_number(c.computed, pr), opt_number(c.reference, pr),
                        opt_number(abs_diff(c), pr), c.note});
    }
    std::vector<std::size_t> width(6, 0);
    for (const auto& r : grid) {
        for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
    }
    std::ostringstream os;
    os << "Table " << table.number << ": " << table.title << "\n";
    for (const auto& r : grid) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            os << std::left << std::setw(static_cast<int>(width[j]) + (j + 1 < r.size() ? 2 : 0)) << r[j];
        }
        os << "\n";
    }
    std::string out = os.str();
    // Trailing padding on rows with an empty note.
    std::string cleaned;
    std::istringstream is(out);
    for (std::string line; std::getline(is, line);) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        cleaned += line + "\n";
    }
    return cleaned;
}

}  // namespace ergo::app
