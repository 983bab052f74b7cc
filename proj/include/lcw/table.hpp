#pragma once

// Row/column reports rendered as aligned text, CSV or JSON.

#include <string>
#include <string_view>
#include <vector>

namespace lcw::report {

enum class Format { text, csv, json };

// Throws usage_error for anything but text, csv, json.
Format parse_format(std::string_view name);

struct Table {
    std::string id;
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;

    void add_row(std::vector<std::string> row);
    std::string render(Format f) const;
};

std::string fixed(double v, int digits);
std::string with_commas(unsigned long long v);

} // namespace lcw::report
