#include "needlecast/output_record.hpp"

#include <cmath>
#include <cstdio>

namespace needlecast {

namespace {

std::string format_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

std::string json_value(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) {
        if (!std::isfinite(*d)) return "null";
        return format_double(*d);
    }
    return json_escape(std::get<std::string>(v));
}

void append_json_object(std::string& out,
                        const std::vector<std::pair<std::string, Value>>& kv) {
    out += '{';
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i > 0) out += ", ";
        out += json_escape(kv[i].first);
        out += ": ";
        out += json_value(kv[i].second);
    }
    out += '}';
}

}  // namespace

std::string format_value(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    return std::get<std::string>(v);
}

std::string to_csv(const OutputRecord& rec) {
    std::string out;
    const auto preamble = [&out](const std::string& key, const Value& v) {
        out += "# ";
        out += key;
        out += ',';
        out += csv_escape(format_value(v));
        out += '\n';
    };
    preamble("schema_version", static_cast<std::int64_t>(kSchemaVersion));
    preamble("command", rec.command);
    for (const auto& [k, v] : rec.lattice) preamble("lattice." + k, v);
    for (const auto& [k, v] : rec.params) preamble("param." + k, v);
    for (const auto& [k, v] : rec.meta) preamble("meta." + k, v);

    for (std::size_t c = 0; c < rec.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += csv_escape(rec.columns[c]);
    }
    out += '\n';
    for (const auto& row : rec.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += csv_escape(format_value(row[c]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const OutputRecord& rec) {
    std::string out = "{\n";
    out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
    out += "  \"command\": " + json_escape(rec.command) + ",\n";
    out += "  \"lattice\": ";
    append_json_object(out, rec.lattice);
    out += ",\n  \"params\": ";
    append_json_object(out, rec.params);
    out += ",\n  \"columns\": [";
    for (std::size_t c = 0; c < rec.columns.size(); ++c) {
        if (c > 0) out += ", ";
        out += json_escape(rec.columns[c]);
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < rec.rows.size(); ++r) {
        out += r == 0 ? "\n" : ",\n";
        out += "    [";
        for (std::size_t c = 0; c < rec.rows[r].size(); ++c) {
            if (c > 0) out += ", ";
            out += json_value(rec.rows[r][c]);
        }
        out += ']';
    }
    out += rec.rows.empty() ? "]" : "\n  ]";
    out += ",\n  \"meta\": ";
    append_json_object(out, rec.meta);
    out += "\n}\n";
    return out;
}

}  // namespace needlecast
