#include "ppra/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace ppra {

Cell Cell::str(std::string v) {
    Cell c;
    c.kind = Kind::text;
    c.text = std::move(v);
    return c;
}

Cell Cell::num(double v) {
    Cell c;
    c.kind = Kind::real;
    c.real = v;
    return c;
}

Cell Cell::count(std::int64_t v) {
    Cell c;
    c.kind = Kind::integer;
    c.integer = v;
    return c;
}

Cell Cell::flag(bool v) {
    Cell c;
    c.kind = Kind::boolean;
    c.boolean = v;
    return c;
}

void ReportDocument::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw EmitError("report row width does not match the column count");
    rows.push_back(std::move(cells));
}

std::string format_double(double v) {
    // 17 significant digits, locale-independent; strtod round-trips the bits
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string cell_to_string(const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::text: return cell.text;
        case Cell::Kind::real: return format_double(cell.real);
        case Cell::Kind::integer: return std::to_string(cell.integer);
        case Cell::Kind::boolean: return cell.boolean ? "true" : "false";
    }
    return {};
}

void check_finite(const ReportDocument& doc) {
    for (const auto& row : doc.rows)
        for (const auto& cell : row)
            if (cell.kind == Cell::Kind::real && !std::isfinite(cell.real))
                throw EmitError("non-finite value in report");
    if (doc.has_summary && !std::isfinite(doc.summary.max_deviation))
        throw EmitError("non-finite value in report summary");
}

void emit_csv(const ReportDocument& doc, std::ostream& os) {
    os << "schema_version,command\n";
    os << csv_quote(doc.schema_version) << ',' << csv_quote(doc.command) << '\n';
    for (std::size_t i = 0; i < doc.columns.size(); ++i)
        os << (i ? "," : "") << csv_quote(doc.columns[i]);
    os << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_quote(cell_to_string(row[i]));
        os << '\n';
    }
    if (doc.has_summary) {
        os << "summary_pass,summary_fail,summary_max_deviation\n";
        os << doc.summary.pass_count << ',' << doc.summary.fail_count << ','
           << format_double(doc.summary.max_deviation) << '\n';
    }
}

void emit_json(const ReportDocument& doc, std::ostream& os) {
    nlohmann::ordered_json j;
    j["schema_version"] = doc.schema_version;
    j["command"] = doc.command;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            const std::string& key = doc.columns[i];
            switch (cell.kind) {
                case Cell::Kind::text: obj[key] = cell.text; break;
                case Cell::Kind::real: obj[key] = cell.real; break;
                case Cell::Kind::integer: obj[key] = cell.integer; break;
                case Cell::Kind::boolean: obj[key] = cell.boolean; break;
            }
        }
        j["rows"].push_back(std::move(obj));
    }
    if (doc.has_summary) {
        j["summary"] = {{"pass_count", doc.summary.pass_count},
                        {"fail_count", doc.summary.fail_count},
                        {"max_deviation", doc.summary.max_deviation}};
    }
    os << j.dump(2) << '\n';
}

}  // namespace

void emit(const ReportDocument& doc, ReportFormat format, std::ostream& os) {
    check_finite(doc);
    if (format == ReportFormat::csv)
        emit_csv(doc, os);
    else
        emit_json(doc, os);
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;

    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
                any = false;
            }
        } else {
            field += c;
        }
        ++i;
    }
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ppra
