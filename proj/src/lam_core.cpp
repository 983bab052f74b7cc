#include "lcw/lam_core.hpp"

#include <algorithm>
#include <cctype>

#include "lcw/error.hpp"

namespace lcw::lam {

namespace {

// Level held during each half bit of a Manchester stream.
std::vector<Level> half_levels(std::span<const CodeBit> bits)
{
    std::vector<Level> halves;
    halves.reserve(bits.size() * 2);
    for (CodeBit b : bits) {
        if (b == CodeBit::CD0) {
            halves.push_back(Level::H);
            halves.push_back(Level::L);
        } else {
            halves.push_back(Level::L);
            halves.push_back(Level::H);
        }
    }
    return halves;
}

void require_no_kk(std::span<const Letter> letters)
{
    for (std::size_t i = 1; i < letters.size(); ++i) {
        if (letters[i] == Letter::K && letters[i - 1] == Letter::K)
            fail(errc::invalid_run, "KK run at letter " + std::to_string(i - 1));
    }
}

} // namespace

LetterStream parse_letters(std::string_view text)
{
    LetterStream out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == 'J' || c == 'j')
            out.push_back(Letter::J);
        else if (c == 'K' || c == 'k')
            out.push_back(Letter::K);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            fail(errc::parse_error, std::string("not a JK letter: '") + c + "'");
    }
    return out;
}

std::string format_letters(std::span<const Letter> letters)
{
    std::string s;
    s.reserve(letters.size());
    for (Letter l : letters)
        s.push_back(l == Letter::J ? 'J' : 'K');
    return s;
}

Level parse_level(std::string_view text)
{
    if (text == "L" || text == "l")
        return Level::L;
    if (text == "H" || text == "h")
        return Level::H;
    fail(errc::parse_error, "level must be L or H");
}

char level_char(Level l) { return l == Level::L ? 'L' : 'H'; }

std::vector<CodeBit> parse_bits(std::string_view text)
{
    std::vector<CodeBit> bits;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (text.substr(i, 3) == "CD0" || text.substr(i, 3) == "cd0") {
            bits.push_back(CodeBit::CD0);
            i += 3;
        } else if (text.substr(i, 3) == "CD1" || text.substr(i, 3) == "cd1") {
            bits.push_back(CodeBit::CD1);
            i += 3;
        } else if (c == '0' || c == '1') {
            bits.push_back(c == '0' ? CodeBit::CD0 : CodeBit::CD1);
            ++i;
        } else {
            fail(errc::parse_error, std::string("bad code bit near '") + c + "'");
        }
    }
    return bits;
}

std::string format_pulse(const Pulse& p)
{
    std::string s(p.width == Width::narrow ? "N" : "W");
    s.push_back(p.polarity == Polarity::positive ? '+' : '-');
    return s;
}

bool has_kk_run(std::span<const Letter> letters)
{
    return std::adjacent_find(letters.begin(), letters.end(), [](Letter a, Letter b) {
               return a == Letter::K && b == Letter::K;
           }) != letters.end();
}

LetterStream bits_to_letters(std::span<const CodeBit> bits, Level initial_level)
{
    const auto halves = half_levels(bits);
    LetterStream out;
    out.reserve(halves.size());
    Level prev = initial_level;
    for (Level h : halves) {
        out.push_back(h == prev ? Letter::K : Letter::J);
        prev = h;
    }
    return out;
}

std::vector<CodeBit> letters_to_bits(std::span<const Letter> letters, Level initial_level)
{
    require_no_kk(letters);
    if (letters.size() % 2 != 0)
        fail(errc::framing_error, "letter count " + std::to_string(letters.size()) +
                                      " does not fill whole bit cells");
    std::vector<CodeBit> bits;
    bits.reserve(letters.size() / 2);
    Level level = initial_level;
    for (std::size_t i = 0; i < letters.size(); i += 2) {
        if (letters[i] == Letter::J)
            level = flip(level);
        const Level first = level;
        if (letters[i + 1] != Letter::J)
            fail(errc::framing_error, "bit cell " + std::to_string(i / 2) + " has no mid-bit jump");
        level = flip(level);
        bits.push_back(first == Level::H ? CodeBit::CD0 : CodeBit::CD1);
    }
    return bits;
}

std::vector<Pulse> pulse_train(std::span<const CodeBit> bits)
{
    const auto halves = half_levels(bits);
    std::vector<Pulse> pulses;
    // Indices of halves that start a new level run.
    std::vector<std::size_t> starts;
    for (std::size_t i = 1; i < halves.size(); ++i)
        if (halves[i] != halves[i - 1])
            starts.push_back(i);
    for (std::size_t k = 0; k + 1 < starts.size(); ++k) {
        const std::size_t len = starts[k + 1] - starts[k];
        pulses.push_back(Pulse{halves[starts[k]] == Level::H ? Polarity::positive : Polarity::negative,
                               len == 1 ? Width::narrow : Width::wide});
    }
    return pulses;
}

LetterStream glue_pulses(std::span<const Pulse> pulses)
{
    LetterStream out;
    if (pulses.empty())
        return out;
    out.push_back(Letter::J);
    for (const Pulse& p : pulses) {
        if (p.width == Width::wide)
            out.push_back(Letter::K);
        out.push_back(Letter::J);
    }
    return out;
}

std::vector<int> dc_contributions(std::span<const Letter> letters, Level initial_level)
{
    require_no_kk(letters);
    std::vector<int> out;
    out.reserve(letters.size());
    Level level = initial_level;
    for (Letter l : letters) {
        if (l == Letter::J) {
            level = flip(level);
            out.push_back(0);
        } else {
            out.push_back(level == Level::H ? 1 : -1);
        }
    }
    return out;
}

ImageMetrics metrics(std::span<const Letter> letters, Level initial_level)
{
    require_no_kk(letters);
    ImageMetrics m;
    std::vector<Level> trace;
    trace.reserve(letters.size());
    Level level = initial_level;
    int running = 0;
    for (Letter l : letters) {
        if (l == Letter::J) {
            level = flip(level);
            ++m.j_count;
        } else {
            running += level == Level::H ? 1 : -1;
            ++m.k_count;
            m.peak_pos = std::max(m.peak_pos, running);
            m.peak_neg = std::min(m.peak_neg, running);
        }
        trace.push_back(level);
    }
    m.dc_bias = running;
    m.final_level = level;
    m.inverting = (m.j_count % 2) == 1;
    m.transit_count = m.j_count;
    if (!trace.empty()) {
        auto head_end = std::find_if(trace.begin(), trace.end(), [&](Level x) { return x != trace.front(); });
        m.head_run = static_cast<std::size_t>(head_end - trace.begin());
        auto tail_end = std::find_if(trace.rbegin(), trace.rend(), [&](Level x) { return x != trace.back(); });
        m.tail_run = static_cast<std::size_t>(tail_end - trace.rbegin());
    }
    return m;
}

} // namespace lcw::lam
