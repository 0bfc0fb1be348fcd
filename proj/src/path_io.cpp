#include "brach/path_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "brach/errors.hpp"
#include "json.hpp"

namespace brach {

namespace {

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, double>) return format_real(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::to_string(v);
        },
        cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_real(v);
            }
            return v;
        },
        cell);
}

// Quotes a field that holds a delimiter, quote or line break.
std::string csv_field(const Cell& cell) {
    std::string text = cell_text(cell);
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c != '"') fields.back() += c;
            else if (i + 1 < line.size() && line[i + 1] == '"') fields.back() += line[++i];
            else quoted = false;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

double parse_real(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw InvalidArgument(fmt::format("line {}: '{}' is not a number", line_no, text));
    }
    return value;
}

}  // namespace

std::string format_real(double value) {
    return fmt::format("{:.17g}", value);
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (format == OutputFormat::csv) {
        if (!table.title.empty()) out << "# " << table.title << '\n';
        for (const auto& [key, value] : table.meta) {
            out << "# " << key << '=' << cell_text(value) << '\n';
        }
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << '\n';
        }
        return;
    }

    nlohmann::ordered_json doc;
    doc["title"] = table.title;
    auto& meta = doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) meta[key] = cell_json(value);
    doc["columns"] = table.columns;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto& r = rows.emplace_back(nlohmann::ordered_json::array());
        for (const auto& cell : row) r.push_back(cell_json(cell));
    }
    out << doc.dump(2) << '\n';
}

DiscretePath read_path_csv(std::istream& in, const std::string& curve) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        header = split_csv(line);
        break;
    }
    const auto column = [&](const std::string& name) -> std::ptrdiff_t {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    const auto theta_col = column("theta");
    const auto rho_col = column("rho");
    const auto curve_col = column("curve");
    if (theta_col < 0 || rho_col < 0) {
        throw InvalidArgument("path table needs 'theta' and 'rho' columns");
    }

    DiscretePath path;
    double deepest = 2.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw InvalidArgument(fmt::format("line {}: expected {} fields, got {}", line_no,
                                              header.size(), fields.size()));
        }
        if (curve_col >= 0 && fields[static_cast<std::size_t>(curve_col)] != curve) continue;
        PolarPoint p;
        p.theta = parse_real(fields[static_cast<std::size_t>(theta_col)], line_no);
        p.rho = parse_real(fields[static_cast<std::size_t>(rho_col)], line_no);
        if (p.rho < deepest) {
            deepest = p.rho;
            path.min_index = path.points.size();
        }
        path.points.push_back(p);
    }
    validate_path(path);
    return path;
}

}  // namespace brach
