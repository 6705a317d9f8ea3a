#pragma once

#include "repzeta/abscissa.hpp"
#include "repzeta/errors.hpp"
#include "repzeta/spec.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace repzeta {

enum class TableFormat { csv, json };
TableFormat parse_table_format(const std::string& text);

// Cells are JSON scalars; strings are written unquoted in CSV unless they
// need quoting.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::ordered_json>> rows;

    void add_row(std::vector<nlohmann::ordered_json> row) { rows.push_back(std::move(row)); }
};

struct ShapeError : UsageError {
    using UsageError::UsageError;
};

// CSV: header line, RFC 4180 quoting, "\n" line ends. JSON: array of objects
// in column order. Throws ShapeError when a row length differs from the
// header.
std::string emit_table(const Table& t, TableFormat format);

std::string csv_escape(const std::string& field);

// Columns k, pp_min, f_p, running_inf.
Table kprime_profile_table(std::uint64_t p, unsigned k_max);

// Columns label, family, estimate, residual, x_lo, x_hi, samples.
Table abscissa_sweep_table(const std::vector<std::pair<std::string, GroupSpec>>& specs, std::uint64_t X,
                           const AbscissaOptions& opts = {});

}  // namespace repzeta
