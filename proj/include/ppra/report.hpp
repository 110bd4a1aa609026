#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppra {

enum class ReportFormat { csv, json };

// One typed cell; reals render with 17 significant digits in CSV so a
// strtod round-trip reproduces the exact bits.
struct Cell {
    enum class Kind { text, real, integer, boolean };
    Kind kind = Kind::text;
    std::string text;
    double real = 0.0;
    std::int64_t integer = 0;
    bool boolean = false;

    static Cell str(std::string v);
    static Cell num(double v);
    static Cell count(std::int64_t v);
    static Cell flag(bool v);
};

struct ReportSummary {
    std::int64_t pass_count = 0;
    std::int64_t fail_count = 0;
    double max_deviation = 0.0;
};

struct ReportDocument {
    std::string schema_version = "1";
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool has_summary = false;
    ReportSummary summary;

    void add_row(std::vector<Cell> cells);
};

// Thrown when a report contains a non-finite numeric field (the emitter
// refuses to write it) or on malformed documents.
struct EmitError : std::runtime_error {
    explicit EmitError(const std::string& what) : std::runtime_error(what) {}
};

std::string format_double(double v);  // %.17g

// CSV: header row, RFC 4180 quoting.  JSON: one document, snake_case keys.
void emit(const ReportDocument& doc, ReportFormat format, std::ostream& os);

// Minimal RFC 4180 reader used by the round-trip tests and cache tooling.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace ppra
