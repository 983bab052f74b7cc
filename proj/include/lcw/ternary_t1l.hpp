#pragma once

// Paged PAM-3 transport dictionaries indexed by the running disparity
// (Σdc in 1..4), their delimiters, event word pairs and coding portrait.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lcw::t1l {

using boost::multiprecision::cpp_rational;

// Symbol values: L = -1, z = 0, H = +1.
using Word = std::array<std::int8_t, 3>;

inline constexpr int min_sigma = 1;
inline constexpr int max_sigma = 4;
inline constexpr unsigned cipher_points = 32;

char symbol_char(std::int8_t v);
// "LzH" or "L z H"; throws parse_error.
Word parse_word(std::string_view text);
std::string format_word(const Word& w, bool spaced = false);

struct WordMetrics {
    int delta_dc = 0;
    int peak_pos = 0;  // running extrema of the partial sums, from 0
    int peak_neg = 0;
    int transits = 0;

    friend bool operator==(const WordMetrics&, const WordMetrics&) = default;
};

WordMetrics word_metrics(const Word& w);

enum class Variant : std::uint8_t { reference, broadened };

std::string_view variant_name(Variant v);

struct PageEntry {
    Word word;
    std::uint8_t code = 0;               // nibble, or m index for the broadened pages
    std::uint8_t reprs = 0;              // R_n: cipher points of this word
    std::optional<std::uint8_t> reprs_prev;  // R_{n-1}, kept as data
};

class Dictionary {
public:
    Dictionary(Variant v, std::array<std::vector<PageEntry>, 4> pages);

    Variant variant() const noexcept { return variant_; }
    // Entries ordered by code; throws range_error outside 1..4.
    const std::vector<PageEntry>& page(int sigma) const;
    std::optional<std::size_t> find(int sigma, const Word& w) const;

private:
    Variant variant_;
    std::array<std::vector<PageEntry>, 4> pages_;
};

const Dictionary& reference_dictionary();
const Dictionary& broadened_dictionary();
const Dictionary& dictionary(Variant v);

struct Encoded {
    Word word;
    int next_sigma;
};

struct Decoded {
    std::uint32_t code;  // nibble or word index
    int next_sigma;
};

// Throws range_error for a bad Σdc or code.
Encoded encode_nibble(std::uint32_t code, int sigma, Variant v = Variant::reference);
// Throws page_miss when the word is not on the current page.
Decoded decode_word(const Word& w, int sigma, Variant v = Variant::reference);

// Cipher side: each word owns R_n consecutive points of the 32-point space in
// page order; the 5-bit key picks the representation and rotates the space.
std::uint32_t cipher_point(const Dictionary& d, int sigma, std::uint32_t code, std::uint32_t key);
std::uint32_t plain_code(const Dictionary& d, int sigma, std::uint32_t point, std::uint32_t key);

enum class DelimiterKind : std::uint8_t { ssd, esd, esd_err };

std::string_view delimiter_name(DelimiterKind k);

// Third word of a delimiter for (Σdc, s4).
Word delimiter_third(int sigma, bool s4);
// Fourth word; throws undefined_cell where the table leaves it blank.
Word delimiter_fourth(DelimiterKind k, int sigma, bool s4);
// z z z, z z z, third, fourth.
std::vector<Word> delimiter(DelimiterKind k, int sigma, bool s4);

enum class EventSlot : std::uint8_t { fade_in, flag, meta };

std::string_view slot_name(EventSlot s);

// Reserved m indices of the broadened page; meta admits every word.
// Throws slot_unavailable for a flag at Σdc 1 or 4.
std::vector<std::uint8_t> event_pattern(int sigma, EventSlot slot);

struct PortraitStats {
    Variant variant;
    std::array<cpp_rational, 4> page;                 // word-level Σdc 1..4
    std::array<std::array<cpp_rational, 6>, 3> sigma; // [phase][Σdc 0..5] after letter
    std::array<std::array<cpp_rational, 3>, 3> letter;// [phase][L, z, H]
    std::array<cpp_rational, 3> transit;              // letter t differs from t+1
    std::array<cpp_rational, 6> sigma_avg;
    std::array<cpp_rational, 3> letter_avg;
    cpp_rational transit_avg;
    std::array<std::optional<unsigned>, 3> max_run;   // L, z, H; none if unbounded
};

// Exact stationary statistics under uniform cipher points (word probability
// R_n / 32, or 1/16 on the reference pages). Throws reducible when the page
// chain is not irreducible.
PortraitStats portrait(Variant v);

// Max run of each symbol over every legal word sequence (automaton search).
std::array<std::optional<unsigned>, 3> run_bounds(const Dictionary& d);

std::string format_rational(const cpp_rational& q);

} // namespace lcw::t1l
