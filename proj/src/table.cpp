#include "repzeta/table.hpp"

#include "repzeta/arith.hpp"

#include <sstream>

namespace repzeta {

TableFormat parse_table_format(const std::string& text) {
    if (text == "csv") return TableFormat::csv;
    if (text == "json") return TableFormat::json;
    throw UsageError("unknown output format '" + text + "' (csv or json)");
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string cell_text(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

}  // namespace

std::string emit_table(const Table& t, TableFormat format) {
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.rows[i].size() != t.columns.size())
            throw ShapeError("row " + std::to_string(i) + " has " + std::to_string(t.rows[i].size()) +
                             " cells, header has " + std::to_string(t.columns.size()));
    if (format == TableFormat::json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_escape(t.columns[c]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(cell_text(row[c]));
        os << "\n";
    }
    return os.str();
}

Table kprime_profile_table(std::uint64_t p, unsigned k_max) {
    Table t;
    t.columns = {"k", "pp_min", "f_p", "running_inf"};
    for (const auto& row : kprime_profile(p, k_max)) t.add_row({row.k, to_string(row.pp_min), row.value, row.running_inf});
    return t;
}

Table abscissa_sweep_table(const std::vector<std::pair<std::string, GroupSpec>>& specs, std::uint64_t X,
                           const AbscissaOptions& opts) {
    Table t;
    t.columns = {"label", "family", "estimate", "residual", "x_lo", "x_hi", "samples"};
    for (const auto& [label, spec] : specs) {
        auto e = estimate_abscissa(spec, X, opts);
        t.add_row({label, family_name(spec), e.value, e.residual, e.x_lo, e.x_hi, e.samples});
    }
    return t;
}

}  // namespace repzeta
