#include "lcw/table.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lcw/error.hpp"

namespace lcw::report {

Format parse_format(std::string_view name)
{
    if (name == "text")
        return Format::text;
    if (name == "csv")
        return Format::csv;
    if (name == "json")
        return Format::json;
    fail(errc::usage_error, "unknown format '" + std::string(name) + "' (text, csv, json)");
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != columns.size())
        fail(errc::range_error, "row width " + std::to_string(row.size()) + " != " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

// Display width; counts UTF-8 code points, not bytes.
std::size_t width_of(const std::string& s)
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string render_text(const Table& t)
{
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t c = 0; c < w.size(); ++c) {
        w[c] = width_of(t.columns[c]);
        for (const auto& r : t.rows)
            w[c] = std::max(w[c], width_of(r[c]));
    }
    std::ostringstream os;
    if (!t.title.empty())
        os << t.title << "\n\n";
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c)
                s += "  ";
            s += cells[c];
            if (c + 1 < cells.size())
                s.append(w[c] - width_of(cells[c]), ' ');
        }
        os << s << '\n';
    };
    line(t.columns);
    std::vector<std::string> rule;
    for (auto n : w)
        rule.emplace_back(n, '-');
    line(rule);
    for (const auto& r : t.rows)
        line(r);
    for (const auto& n : t.notes)
        os << "# " << n << '\n';
    return os.str();
}

std::string render_csv(const Table& t)
{
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            os << (c ? "," : "") << csv_cell(cells[c]);
        os << '\n';
    };
    line(t.columns);
    for (const auto& r : t.rows)
        line(r);
    return os.str();
}

std::string render_json(const Table& t)
{
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["title"] = t.title;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json o;
        for (std::size_t c = 0; c < r.size(); ++c)
            o[t.columns[c]] = r[c];
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    j["notes"] = t.notes;
    return j.dump(2) + "\n";
}

} // namespace

std::string Table::render(Format f) const
{
    switch (f) {
    case Format::text: return render_text(*this);
    case Format::csv: return render_csv(*this);
    case Format::json: return render_json(*this);
    }
    return {};
}

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string with_commas(unsigned long long v)
{
    std::string s = std::to_string(v);
    for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3)
        s.insert(static_cast<std::size_t>(i), ",");
    return s;
}

} // namespace lcw::report
