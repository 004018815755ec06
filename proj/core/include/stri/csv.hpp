#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stri::csv {

// RFC 4180: quote fields containing comma, quote, or newline
std::string escape(const std::string& field);
std::string format_double(double v);  // %.17g, locale-independent

void write_row(std::ostream& out, const std::vector<std::string>& fields);

struct Table {
    std::vector<std::string> comments;  // leading '#' lines, without the '#'
    std::vector<std::vector<std::string>> rows;  // first row = header
};

Table read(std::istream& in);

}  // namespace stri::csv
