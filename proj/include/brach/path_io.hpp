// Tabular output shared by the CLI subcommands.
//
// Two formats carry the same content:
//   csv        `# key=value` metadata lines, one column-name row, then
//              comma-separated rows. Reals are printed with 17 significant
//              digits so every value round-trips exactly.
//   structured a JSON object {"meta": {...}, "columns": [...], "rows": [[...]]}
//              with keys in insertion order.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "brach/core.hpp"

namespace brach {

enum class OutputFormat { csv, structured };

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
    std::string title;
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_real(double value);

void write_table(std::ostream& out, const Table& table, OutputFormat format);

/// Reads the (theta, rho) samples of one curve back from csv `path` output.
/// Rows whose `curve` column differs from `curve` are skipped; tables without
/// a `curve` column are read whole. Throws InvalidArgument on malformed input.
DiscretePath read_path_csv(std::istream& in, const std::string& curve = "brachistochrone");

}  // namespace brach
