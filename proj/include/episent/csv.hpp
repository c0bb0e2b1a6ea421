#pragma once

#include <istream>
#include <string>
#include <vector>

#include "episent/types.hpp"

namespace episent {

// RFC-4180 CSV: comma-delimited, double-quote quoting with "" escapes,
// fields may contain embedded newlines when quoted. Accepts LF and CRLF
// line endings and strips a UTF-8 BOM from the first field.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    bool row_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_started) {
                    in_quotes = true;
                    field_started = true;
                    row_started = true;
                } else {
                    field.push_back('"');
                }
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                if (in.peek() == '\n') in.get(c);
                end_row();
                break;
            case '\n':
                end_row();
                break;
            default:
                field.push_back(c);
                field_started = true;
                row_started = true;
                break;
        }
    }
    if (in_quotes) throw SchemaError("csv: unterminated quoted field at end of input");
    if (row_started || field_started || !field.empty() || !row.empty()) end_row();

    if (!rows.empty() && !rows[0].empty()) {
        std::string& first = rows[0][0];
        if (first.size() >= 3 && static_cast<unsigned char>(first[0]) == 0xEF &&
            static_cast<unsigned char>(first[1]) == 0xBB &&
            static_cast<unsigned char>(first[2]) == 0xBF)
            first.erase(0, 3);
    }
    return rows;
}

}  // namespace episent
