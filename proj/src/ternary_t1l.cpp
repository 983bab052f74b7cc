#include "lcw/ternary_t1l.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "lcw/error.hpp"

namespace lcw::t1l {

namespace {

// Reference dictionary, one row per image: nibble on each Σdc page or "-".
struct RefRow {
    const char* word;
    std::array<const char*, 4> nibble;
};

constexpr RefRow reference_rows[] = {
    {"LLL", {"-", "-", "-", "1001"}},
    {"LLz", {"-", "-", "-", "0011"}},
    {"LzL", {"-", "-", "-", "1101"}},
    {"zLL", {"-", "-", "-", "1000"}},
    {"LLH", {"-", "-", "0110", "0110"}},
    {"Lzz", {"-", "0101", "0101", "0101"}},
    {"LHL", {"-", "1100", "1100", "1100"}},
    {"zLz", {"-", "0000", "0000", "0000"}},
    {"zzL", {"-", "1111", "1111", "1111"}},
    {"HLL", {"-", "-", "1010", "1010"}},
    {"LzH", {"0111", "0111", "0111", "0111"}},
    {"LHz", {"0100", "0100", "0100", "0100"}},
    {"zLH", {"0001", "0001", "0001", "0001"}},
    {"zzz", {"-", "-", "-", "-"}},
    {"zHL", {"1110", "1110", "1110", "1110"}},
    {"HLz", {"0010", "0010", "0010", "0010"}},
    {"HzL", {"1011", "1011", "1011", "1011"}},
    {"LHH", {"0110", "0110", "-", "-"}},
    {"zzH", {"0011", "0011", "0011", "-"}},
    {"zHz", {"1101", "1101", "1101", "-"}},
    {"HLH", {"1001", "1001", "1001", "-"}},
    {"Hzz", {"1000", "1000", "1000", "-"}},
    {"HHL", {"1010", "1010", "-", "-"}},
    {"zHH", {"0101", "-", "-", "-"}},
    {"HzH", {"0000", "-", "-", "-"}},
    {"HHz", {"1111", "-", "-", "-"}},
    {"HHH", {"1100", "-", "-", "-"}},
};

// Broadened dictionary in the same image order: per page m index, R_n and
// R_{n-1} (-1 = blank).
struct Cell {
    int m, r, r_prev;
};

struct BroadRow {
    const char* word;
    std::array<Cell, 4> cell;
};

constexpr Cell none{-1, 0, -1};

constexpr BroadRow broadened_rows[] = {
    {"LLL", {none, none, none, Cell{0, 2, -1}}},
    {"LLz", {none, none, none, Cell{1, 2, 5}}},
    {"LzL", {none, none, none, Cell{2, 2, 4}}},
    {"zLL", {none, none, none, Cell{3, 2, 5}}},
    {"LLH", {none, Cell{17, 1, -1}, Cell{0, 2, 2}, Cell{4, 2, 3}}},
    {"Lzz", {none, Cell{16, 2, -1}, Cell{1, 2, 2}, Cell{5, 2, 3}}},
    {"LHL", {none, Cell{15, 1, -1}, Cell{2, 2, 3}, Cell{6, 2, 3}}},
    {"zLz", {none, Cell{14, 1, -1}, Cell{3, 2, 3}, Cell{7, 2, 3}}},
    {"zzL", {none, Cell{13, 2, -1}, Cell{4, 2, 2}, Cell{8, 2, 3}}},
    {"HLL", {none, Cell{12, 1, -1}, Cell{5, 2, 2}, Cell{9, 2, 3}}},
    {"LzH", {Cell{15, 2, -1}, Cell{11, 2, 3}, Cell{6, 2, 3}, Cell{10, 2, -1}}},
    {"LHz", {Cell{14, 2, -1}, Cell{10, 2, 3}, Cell{7, 2, 3}, Cell{11, 2, -1}}},
    {"zLH", {Cell{13, 2, -1}, Cell{9, 2, 3}, Cell{8, 2, 3}, Cell{12, 2, -1}}},
    {"zzz", {none, none, none, none}},
    {"zHL", {Cell{12, 2, -1}, Cell{8, 2, 3}, Cell{9, 2, 3}, Cell{13, 2, -1}}},
    {"HLz", {Cell{11, 2, -1}, Cell{7, 2, 3}, Cell{10, 2, 3}, Cell{14, 2, -1}}},
    {"HzL", {Cell{10, 2, -1}, Cell{6, 2, 3}, Cell{11, 2, 3}, Cell{15, 2, -1}}},
    {"LHH", {Cell{9, 2, 3}, Cell{5, 2, 2}, Cell{12, 1, -1}, none}},
    {"zzH", {Cell{8, 2, 3}, Cell{4, 2, 2}, Cell{13, 2, -1}, none}},
    {"zHz", {Cell{7, 2, 3}, Cell{3, 2, 3}, Cell{14, 1, -1}, none}},
    {"HLH", {Cell{6, 2, 3}, Cell{2, 2, 3}, Cell{15, 1, -1}, none}},
    {"Hzz", {Cell{5, 2, 3}, Cell{1, 2, 2}, Cell{16, 2, -1}, none}},
    {"HHL", {Cell{4, 2, 3}, Cell{0, 2, 2}, Cell{17, 1, -1}, none}},
    {"zHH", {Cell{3, 2, 5}, none, none, none}},
    {"HzH", {Cell{2, 2, 4}, none, none, none}},
    {"HHz", {Cell{1, 2, 5}, none, none, none}},
    {"HHH", {Cell{0, 2, -1}, none, none, none}},
};

void check_sigma(int sigma)
{
    if (sigma < min_sigma || sigma > max_sigma)
        fail(errc::range_error, "Σdc " + std::to_string(sigma) + " outside 1..4");
}

Dictionary make_reference()
{
    std::array<std::vector<PageEntry>, 4> pages;
    for (const RefRow& row : reference_rows) {
        for (int p = 0; p < 4; ++p) {
            const std::string_view nib = row.nibble[p];
            if (nib == "-")
                continue;
            const auto code = static_cast<std::uint8_t>(std::stoi(std::string(nib), nullptr, 2));
            pages[p].push_back(PageEntry{parse_word(row.word), code, 2, std::nullopt});
        }
    }
    return Dictionary(Variant::reference, std::move(pages));
}

Dictionary make_broadened()
{
    std::array<std::vector<PageEntry>, 4> pages;
    for (const BroadRow& row : broadened_rows) {
        for (int p = 0; p < 4; ++p) {
            const Cell& c = row.cell[p];
            if (c.m < 0)
                continue;
            PageEntry e{parse_word(row.word), static_cast<std::uint8_t>(c.m), static_cast<std::uint8_t>(c.r),
                        std::nullopt};
            if (c.r_prev >= 0)
                e.reprs_prev = static_cast<std::uint8_t>(c.r_prev);
            pages[p].push_back(e);
        }
    }
    return Dictionary(Variant::broadened, std::move(pages));
}

int value_index(std::int8_t v) { return v + 1; }

} // namespace

char symbol_char(std::int8_t v)
{
    switch (v) {
    case -1: return 'L';
    case 0: return 'z';
    case 1: return 'H';
    }
    fail(errc::range_error, "not a PAM-3 symbol value");
}

Word parse_word(std::string_view text)
{
    Word w{};
    std::size_t n = 0;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        std::int8_t v;
        if (c == 'L' || c == 'l' || c == '-')
            v = -1;
        else if (c == 'z' || c == 'Z' || c == '0')
            v = 0;
        else if (c == 'H' || c == 'h' || c == '+')
            v = 1;
        else
            fail(errc::parse_error, std::string("not a PAM-3 symbol: '") + c + "'");
        if (n == 3)
            fail(errc::parse_error, "word longer than three symbols");
        w[n++] = v;
    }
    if (n != 3)
        fail(errc::parse_error, "word shorter than three symbols");
    return w;
}

std::string format_word(const Word& w, bool spaced)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (spaced && i)
            s.push_back(' ');
        s.push_back(symbol_char(w[i]));
    }
    return s;
}

WordMetrics word_metrics(const Word& w)
{
    WordMetrics m;
    for (std::size_t i = 0; i < w.size(); ++i) {
        m.delta_dc += w[i];
        m.peak_pos = std::max(m.peak_pos, m.delta_dc);
        m.peak_neg = std::min(m.peak_neg, m.delta_dc);
        if (i && w[i] != w[i - 1])
            ++m.transits;
    }
    return m;
}

std::string_view variant_name(Variant v) { return v == Variant::reference ? "reference" : "broadened"; }

Dictionary::Dictionary(Variant v, std::array<std::vector<PageEntry>, 4> pages)
    : variant_(v), pages_(std::move(pages))
{
    for (int p = 0; p < 4; ++p) {
        auto& page = pages_[p];
        std::sort(page.begin(), page.end(), [](const PageEntry& a, const PageEntry& b) { return a.code < b.code; });
        unsigned reprs = 0;
        for (std::size_t i = 0; i < page.size(); ++i) {
            if (page[i].code != i)
                fail(errc::range_error, "page codes are not 0..n-1");
            const int next = p + 1 + word_metrics(page[i].word).delta_dc;
            if (next < min_sigma || next > max_sigma)
                fail(errc::range_error, "word " + format_word(page[i].word) + " leaves the pages");
            reprs += page[i].reprs;
        }
        if (reprs != cipher_points)
            fail(errc::range_error, "page representations do not cover the cipher space");
    }
}

const std::vector<PageEntry>& Dictionary::page(int sigma) const
{
    check_sigma(sigma);
    return pages_[sigma - 1];
}

std::optional<std::size_t> Dictionary::find(int sigma, const Word& w) const
{
    const auto& p = page(sigma);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].word == w)
            return i;
    return std::nullopt;
}

const Dictionary& reference_dictionary()
{
    static const Dictionary d = make_reference();
    return d;
}

const Dictionary& broadened_dictionary()
{
    static const Dictionary d = make_broadened();
    return d;
}

const Dictionary& dictionary(Variant v)
{
    return v == Variant::reference ? reference_dictionary() : broadened_dictionary();
}

Encoded encode_nibble(std::uint32_t code, int sigma, Variant v)
{
    const auto& page = dictionary(v).page(sigma);
    if (code >= page.size())
        fail(errc::range_error, "code " + std::to_string(code) + " beyond page of " + std::to_string(page.size()));
    const Word& w = page[code].word;
    return {w, sigma + word_metrics(w).delta_dc};
}

Decoded decode_word(const Word& w, int sigma, Variant v)
{
    const auto idx = dictionary(v).find(sigma, w);
    if (!idx)
        fail(errc::page_miss, format_word(w) + " not on page Σdc=" + std::to_string(sigma));
    return {static_cast<std::uint32_t>(*idx), sigma + word_metrics(w).delta_dc};
}

std::uint32_t cipher_point(const Dictionary& d, int sigma, std::uint32_t code, std::uint32_t key)
{
    const auto& page = d.page(sigma);
    if (code >= page.size())
        fail(errc::range_error, "code beyond page");
    if (key >= cipher_points)
        fail(errc::range_error, "word key wider than 5 bits");
    std::uint32_t start = 0;
    for (std::uint32_t i = 0; i < code; ++i)
        start += page[i].reprs;
    return (start + key % page[code].reprs + key) % cipher_points;
}

std::uint32_t plain_code(const Dictionary& d, int sigma, std::uint32_t point, std::uint32_t key)
{
    const auto& page = d.page(sigma);
    if (point >= cipher_points || key >= cipher_points)
        fail(errc::range_error, "cipher point or key wider than 5 bits");
    std::uint32_t off = (point + cipher_points - key) % cipher_points;
    for (std::uint32_t i = 0; i < page.size(); ++i) {
        if (off < page[i].reprs)
            return i;
        off -= page[i].reprs;
    }
    fail(errc::range_error, "cipher point outside the page");
}

std::string_view delimiter_name(DelimiterKind k)
{
    switch (k) {
    case DelimiterKind::ssd: return "SSD";
    case DelimiterKind::esd: return "ESD";
    case DelimiterKind::esd_err: return "ESD_ERR";
    }
    return "?";
}

Word delimiter_third(int sigma, bool s4)
{
    check_sigma(sigma);
    static constexpr std::array<const char*, 4> zero{"LzH", "Lzz", "LzL", "LLL"};
    static constexpr std::array<const char*, 4> one{"HHH", "HLH", "Hzz", "HzL"};
    return parse_word((s4 ? one : zero)[sigma - 1]);
}

Word delimiter_fourth(DelimiterKind k, int sigma, bool s4)
{
    check_sigma(sigma);
    const int defined = s4 ? 4 : 1;
    if (sigma != defined)
        fail(errc::undefined_cell, "no fourth delimiter word at Σdc=" + std::to_string(sigma) +
                                       " with s4=" + (s4 ? "1" : "0"));
    static constexpr std::array<const char*, 3> zero{"HHL", "HLH", "LHH"};
    static constexpr std::array<const char*, 3> one{"LLH", "LHL", "HLL"};
    return parse_word((s4 ? one : zero)[static_cast<std::size_t>(k)]);
}

std::vector<Word> delimiter(DelimiterKind k, int sigma, bool s4)
{
    const Word silent{0, 0, 0};
    return {silent, silent, delimiter_third(sigma, s4), delimiter_fourth(k, sigma, s4)};
}

std::string_view slot_name(EventSlot s)
{
    switch (s) {
    case EventSlot::fade_in: return "fade_in";
    case EventSlot::flag: return "flag";
    case EventSlot::meta: return "meta";
    }
    return "?";
}

std::vector<std::uint8_t> event_pattern(int sigma, EventSlot slot)
{
    check_sigma(sigma);
    switch (slot) {
    case EventSlot::fade_in:
        if (sigma == 1 || sigma == 4)
            return {1, 9};
        return {0, 11};
    case EventSlot::flag:
        if (sigma == 1 || sigma == 4)
            fail(errc::slot_unavailable, "no flag pair at Σdc=" + std::to_string(sigma));
        return {0, 17};
    case EventSlot::meta: {
        std::vector<std::uint8_t> all(broadened_dictionary().page(sigma).size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = static_cast<std::uint8_t>(i);
        return all;
    }
    }
    return {};
}

namespace {

using Matrix = std::array<std::array<cpp_rational, 4>, 4>;

Matrix transition_matrix(const Dictionary& d)
{
    Matrix p{};
    for (int s = 1; s <= 4; ++s)
        for (const PageEntry& e : d.page(s))
            p[s - 1][s - 1 + word_metrics(e.word).delta_dc] += cpp_rational(e.reprs, cipher_points);
    return p;
}

// Strongly connected components of the positive-probability graph.
std::vector<std::vector<int>> components(const Matrix& p)
{
    std::array<std::array<bool, 4>, 4> reach{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            reach[i][j] = i == j || p[i][j] > 0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
    std::vector<std::vector<int>> out;
    std::array<bool, 4> seen{};
    for (int i = 0; i < 4; ++i) {
        if (seen[i])
            continue;
        std::vector<int> comp;
        for (int j = 0; j < 4; ++j)
            if (reach[i][j] && reach[j][i]) {
                comp.push_back(j + 1);
                seen[j] = true;
            }
        out.push_back(comp);
    }
    return out;
}

// pi P = pi, sum pi = 1, by Gauss-Jordan over the rationals.
std::array<cpp_rational, 4> stationary(const Matrix& p)
{
    // Rows 0..2: (P^T - I) pi = 0, row 3: sum = 1.
    std::array<std::array<cpp_rational, 5>, 4> a{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j)
            a[i][j] = p[j][i] - (i == j ? 1 : 0);
        a[i][4] = 0;
    }
    for (int j = 0; j < 4; ++j)
        a[3][j] = 1;
    a[3][4] = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            fail(errc::reducible, "singular stationary system");
        std::swap(a[piv], a[col]);
        const cpp_rational inv = 1 / a[col][col];
        for (auto& v : a[col])
            v *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            const cpp_rational f = a[r][col];
            for (int c = 0; c < 5; ++c)
                a[r][c] -= f * a[col][c];
        }
    }
    return {a[0][4], a[1][4], a[2][4], a[3][4]};
}

} // namespace

std::array<std::optional<unsigned>, 3> run_bounds(const Dictionary& d)
{
    // State after a word: (page, last symbol, run length of that symbol).
    // Runs longer than the cap can only come from a cycle.
    constexpr unsigned cap = 64;
    std::array<unsigned, 3> best{};
    std::set<std::tuple<int, int, unsigned>> seen;
    std::vector<std::tuple<int, int, unsigned>> todo;
    for (int s = 1; s <= 4; ++s)
        todo.emplace_back(s, 0, 0);  // empty history
    bool overflow[3] = {false, false, false};
    while (!todo.empty()) {
        auto [s, sym, run] = todo.back();
        todo.pop_back();
        if (!seen.insert({s, sym, run}).second)
            continue;
        for (const PageEntry& e : d.page(s)) {
            int cur = sym;
            unsigned len = run;
            for (std::int8_t v : e.word) {
                const int idx = value_index(v);
                if (len > 0 && idx == cur) {
                    ++len;
                } else {
                    cur = idx;
                    len = 1;
                }
                best[cur] = std::max(best[cur], len);
            }
            if (len > cap) {
                overflow[cur] = true;
                continue;
            }
            todo.emplace_back(s + word_metrics(e.word).delta_dc, cur, len);
        }
    }
    std::array<std::optional<unsigned>, 3> out;
    for (int i = 0; i < 3; ++i)
        if (!overflow[i])
            out[i] = best[i];
    return out;
}

PortraitStats portrait(Variant v)
{
    const Dictionary& d = dictionary(v);
    const Matrix p = transition_matrix(d);
    const auto comps = components(p);
    if (comps.size() != 1) {
        std::string msg = "page chain has " + std::to_string(comps.size()) + " components:";
        for (const auto& c : comps) {
            msg += " {";
            for (int s : c)
                msg += std::to_string(s);
            msg += "}";
        }
        fail(errc::reducible, msg);
    }

    PortraitStats st{};
    st.variant = v;
    st.page = stationary(p);
    for (int s = 1; s <= 4; ++s) {
        for (const PageEntry& e : d.page(s)) {
            const cpp_rational pw = st.page[s - 1] * cpp_rational(e.reprs, cipher_points);
            int level = s;
            for (int ph = 0; ph < 3; ++ph) {
                level += e.word[ph];
                st.sigma[ph][level] += pw;
                st.letter[ph][value_index(e.word[ph])] += pw;
                if (ph < 2) {
                    if (e.word[ph] != e.word[ph + 1])
                        st.transit[ph] += pw;
                    continue;
                }
                // Last letter against the first letter of the next word.
                for (const PageEntry& f : d.page(level))
                    if (f.word[0] != e.word[2])
                        st.transit[2] += pw * cpp_rational(f.reprs, cipher_points);
            }
        }
    }
    for (int ph = 0; ph < 3; ++ph) {
        for (int k = 0; k < 6; ++k)
            st.sigma_avg[k] += st.sigma[ph][k] / 3;
        for (int k = 0; k < 3; ++k)
            st.letter_avg[k] += st.letter[ph][k] / 3;
        st.transit_avg += st.transit[ph] / 3;
    }
    st.max_run = run_bounds(d);
    return st;
}

std::string format_rational(const cpp_rational& q)
{
    const auto num = boost::multiprecision::numerator(q);
    const auto den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

} // namespace lcw::t1l
