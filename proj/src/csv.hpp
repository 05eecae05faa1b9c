#pragma once

// Minimal RFC 4180 field handling. Quoted fields may contain commas and
// doubled quotes but not line breaks.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace citerank::detail {

inline std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char ch = line[k];
        if (quoted) {
            if (ch != '"') {
                current += ch;
            } else if (k + 1 < line.size() && line[k + 1] == '"') {
                current += '"';
                ++k;
            } else {
                quoted = false;
            }
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
            was_quoted = false;
        } else if (ch == '"') {
            if (was_quoted || !trim(current).empty()) {
                throw std::invalid_argument("unexpected quote inside unquoted field");
            }
            current.clear();
            quoted = true;
            was_quoted = true;
        } else {
            current += ch;
        }
    }
    if (quoted) {
        throw std::invalid_argument("unterminated quoted field");
    }
    fields.push_back(std::move(current));
    return fields;
}

inline std::string csv_escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                              (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace citerank::detail
