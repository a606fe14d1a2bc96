#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dmom/verify.hpp"

namespace dmom {

// Empty monostate cells print as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, std::string, double, i64, u64, bool>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json meta = nlohmann::json::object();
};

std::string version_string();

Report moment_report(const std::vector<MomentRow>& rows, bool timing);
Report hb_report(const HbProbe& probe);
Report reciprocity_report(const std::vector<ReciprocityRow>& rows);
Report kernel_report(const std::vector<KernelCell>& cells);

// Doubles are written with 17 significant digits.
std::string format_double(double x);
void write_csv(const Report& r, std::ostream& out);
void write_json(const Report& r, std::ostream& out);
nlohmann::json fit_json(const FitResult& f);

}  // namespace dmom
