#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace needlecast {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// One output cell. Doubles render with 17 significant digits in every
/// format, so parsing the output reproduces the bits.
using Value = std::variant<std::int64_t, double, std::string>;

/// Machine-readable result of one CLI command. The same record serializes
/// to a comma-separated table or a JSON object with identical numeric
/// content.
struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, Value>> lattice;  // a, b, lambda, mu
    std::vector<std::pair<std::string, Value>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    std::vector<std::pair<std::string, Value>> meta;
};

std::string format_value(const Value& v);
std::string to_csv(const OutputRecord& rec);
std::string to_json(const OutputRecord& rec);

}  // namespace needlecast
