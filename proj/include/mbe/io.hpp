#pragma once

// The .mbe instance language and report renderers.
//
//   # comment
//   vertex v0              vertex lines fix the total order
//   simplex v0 v1 v2       faces are added by closure (with a warning)
//   map v3 -> v2           optional; when present, one line per vertex
//   f [v0,v1] = 3          optional; when present, one line per simplex
//   f v2 = 0

#include "mbe/complex.hpp"
#include "mbe/morse.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mbe {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Instance {
    OrderedComplex complex;
    std::optional<SimplicialSelfMap> map;
    std::optional<MorseBottFunction> function;

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct ParsedInstance {
    Instance instance;
    std::vector<std::string> warnings;  // "line N: ..."
};

ParsedInstance parse_instance(std::string_view text);
std::string render_instance(const Instance& instance);

/// Comma- or whitespace-separated simplex specs ("[v0,v1] v2") closed
/// under faces. Throws ParseError (line 1) on unknown names or simplices.
Subcomplex parse_subcomplex(const OrderedComplex& complex, std::string_view specs);

enum class ReportFormat { Text, Csv, Json };

/// Throws UsageError for anything but text, csv or json.
ReportFormat parse_report_format(std::string_view name);

/// Numbers are printed as exact integers; a non-integer value throws
/// InvariantBreach.
std::string render_report(const InequalityReport& report, ReportFormat format);

/// Parses "3", "1..5" or "1,2,4" into a list of powers. Throws UsageError.
std::vector<int> parse_power_list(std::string_view spec);

}  // namespace mbe
