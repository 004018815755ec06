#include "stri/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

namespace stri::csv {

std::string escape(const std::string& field) {
    bool quote = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << "\r\n";
}

Table read(std::istream& in) {
    Table t;
    std::string line;
    bool in_quotes = false;
    std::vector<std::string> row;
    std::string field;
    auto flush_field = [&]() {
        row.push_back(field);
        field.clear();
    };
    auto flush_row = [&]() {
        flush_field();
        t.rows.push_back(row);
        row.clear();
    };
    std::string buffer;
    char c;
    bool row_started = false;
    while (in.get(c)) {
        if (!in_quotes && !row_started && field.empty() && row.empty() && c == '#') {
            std::string comment;
            std::getline(in, comment);
            if (!comment.empty() && comment.back() == '\r') comment.pop_back();
            if (!comment.empty() && comment.front() == ' ') comment.erase(0, 1);
            t.comments.push_back(comment);
            continue;
        }
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; row_started = true; break;
            case ',': flush_field(); row_started = true; break;
            case '\r': break;
            case '\n':
                if (row_started || !field.empty() || !row.empty()) flush_row();
                row_started = false;
                break;
            default: field += c; row_started = true; break;
        }
    }
    if (row_started || !field.empty() || !row.empty()) flush_row();
    return t;
}

}  // namespace stri::csv
