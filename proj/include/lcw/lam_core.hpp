#pragma once

// Jump-and-keep (JK) model of Manchester signaling.
//
// One letter per half bit time. J toggles the line level, K holds it.
// A narrow pulse glues to JJ and a wide pulse to JKJ, sharing the boundary
// J with its neighbours, so a legal stream never contains KK.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcw::lam {

enum class Letter : std::uint8_t { J, K };
enum class Level : std::uint8_t { L, H };

// Manchester code bits: CD0 is high-then-low, CD1 is low-then-high.
enum class CodeBit : std::uint8_t { CD0, CD1 };

enum class Polarity : std::uint8_t { positive, negative };
enum class Width : std::uint8_t { narrow, wide };

struct Pulse {
    Polarity polarity;
    Width width;

    friend bool operator==(const Pulse&, const Pulse&) = default;
};

inline constexpr int bit_time_ns = 100;

constexpr int duration_ns(Width w) { return w == Width::narrow ? bit_time_ns / 2 : bit_time_ns; }

constexpr Level flip(Level l) { return l == Level::L ? Level::H : Level::L; }

using LetterStream = std::vector<Letter>;

struct ImageMetrics {
    std::size_t j_count = 0;
    std::size_t k_count = 0;
    int dc_bias = 0;       // half-bit level units
    int peak_pos = 0;      // >= 0
    int peak_neg = 0;      // <= 0
    Level final_level = Level::L;
    bool inverting = false;
    std::size_t transit_count = 0;
    std::size_t head_run = 0;  // letters at the head holding the first level
    std::size_t tail_run = 0;

    friend bool operator==(const ImageMetrics&, const ImageMetrics&) = default;
};

// Accepts "JKJ" as well as "J K J"; throws errc::parse_error otherwise.
LetterStream parse_letters(std::string_view text);
std::string format_letters(std::span<const Letter> letters);
Level parse_level(std::string_view text);
char level_char(Level l);
std::vector<CodeBit> parse_bits(std::string_view text);  // "CD0,CD1,..." or "01..."
std::string format_pulse(const Pulse& p);                 // "N+", "W-", ...

bool has_kk_run(std::span<const Letter> letters);

// Letter i is J when half bit i differs in level from half bit i-1, the
// half before the first bit being `initial_level`.
LetterStream bits_to_letters(std::span<const CodeBit> bits, Level initial_level);

// Inverse of bits_to_letters. Throws invalid_run on KK, framing_error when
// the stream has odd length or a bit cell lacks its mid-bit J.
std::vector<CodeBit> letters_to_bits(std::span<const Letter> letters, Level initial_level);

// Complete MDI pulses of a bit sequence: every pulse bounded by a level
// change on both sides. The partial pulses at the stream ends are dropped.
std::vector<Pulse> pulse_train(std::span<const CodeBit> bits);

// J, then [K] J per pulse.
LetterStream glue_pulses(std::span<const Pulse> pulses);

// Per-letter DC contribution: J gives 0 and toggles, K gives +1 at H and
// -1 at L and holds. Throws invalid_run on KK.
std::vector<int> dc_contributions(std::span<const Letter> letters, Level initial_level);

ImageMetrics metrics(std::span<const Letter> letters, Level initial_level = Level::L);

} // namespace lcw::lam
