#include "dmom/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dmom {

namespace {

void add_complex(std::vector<std::string>& cols, const std::string& name) {
    cols.push_back(name + "_re");
    cols.push_back(name + "_im");
}

void push_complex(std::vector<Cell>& row, cplx z) {
    row.emplace_back(z.real());
    row.emplace_back(z.imag());
}

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, std::string>) {
                if (v.find_first_of(",\"\n") == std::string::npos) return v;
                std::string q = "\"";
                for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                return q + "\"";
            } else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::to_string(v);
        },
        c);
}

nlohmann::json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else return v;
        },
        c);
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

}  // namespace

std::string version_string() { return "0.1.0"; }

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json fit_json(const FitResult& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"n_points", f.n_points}};
}

Report moment_report(const std::vector<MomentRow>& rows, bool timing) {
    Report r;
    r.columns = {"q", "parity"};
    for (const char* n : {"alpha", "beta", "lhs", "main", "secondary", "residual"}) add_complex(r.columns, n);
    for (const char* n : {"residual_norm", "residual_norm_d", "divisor_count", "D", "error_budget", "near_sqrt_divisors"})
        r.columns.emplace_back(n);
    if (timing) r.columns.emplace_back("runtime_ms");
    for (const auto& m : rows) {
        std::vector<Cell> row{m.q, to_string(m.parity)};
        for (cplx z : {m.alpha, m.beta, m.lhs, m.main, m.secondary, m.residual}) push_complex(row, z);
        row.insert(row.end(), {m.residual_norm, m.residual_norm_d, m.divisor_count, m.D, m.error_budget,
                               m.near_sqrt_divisors});
        if (timing) row.push_back(opt_cell(m.runtime_ms));
        r.rows.push_back(std::move(row));
    }
    return r;
}

Report hb_report(const HbProbe& p) {
    Report r;
    r.columns = {"k", "t_recover", "hb_main", "remainder", "t_series", "series_diff"};
    for (const auto& h : p.rows) {
        std::optional<double> diff;
        if (h.t_series) diff = *h.t_series - h.t_recover;
        r.rows.push_back({h.k, h.t_recover, h.hb_main, h.remainder, opt_cell(h.t_series), opt_cell(diff)});
    }
    auto est = nlohmann::json::array();
    for (const auto& e : p.estimates)
        est.push_back({{"k", e.k}, {"c0", e.c0}, {"power", std::isfinite(e.power) ? nlohmann::json(e.power) : nullptr}});
    r.meta["summary"] = {{"c0", p.c0},
                         {"c0_spread", p.c0_spread},
                         {"c0_stable", p.c0_stable},
                         {"estimates", est},
                         {"decay_fit", fit_json(p.decay)},
                         {"decay_k_min", p.decay_k_min},
                         {"law", p.law},
                         {"max_series_diff", p.max_series_diff}};
    return r;
}

Report reciprocity_report(const std::vector<ReciprocityRow>& rows) {
    Report r;
    r.columns = {"h", "p", "S_p_h", "S_h_minus_p", "rhs", "residual", "bound_scale", "ratio", "large_case",
                 "beyond_two_thirds"};
    for (const auto& x : rows)
        r.rows.push_back({x.h, x.p, x.s_ph, x.s_hp, x.rhs, x.residual, x.bound_scale, x.ratio, x.large_case,
                          x.beyond_range});
    return r;
}

Report kernel_report(const std::vector<KernelCell>& cells) {
    Report r;
    r.columns = {"cell"};
    for (const char* n : {"alpha", "beta", "delta", "numeric", "reference"}) add_complex(r.columns, n);
    for (const char* n : {"diff", "tolerance", "ok", "error"}) r.columns.emplace_back(n);
    for (const auto& c : cells) {
        std::vector<Cell> row{c.name};
        for (cplx z : {c.alpha, c.beta, c.delta, c.numeric, c.reference}) push_complex(row, z);
        row.insert(row.end(), {c.diff, c.tolerance, c.ok, c.error});
        r.rows.push_back(std::move(row));
    }
    return r;
}

void write_csv(const Report& r, std::ostream& out) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

void write_json(const Report& r, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["meta"] = r.meta;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = json_cell(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace dmom
