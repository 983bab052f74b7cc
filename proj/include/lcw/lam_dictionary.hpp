#pragma once

// Valid JK serial images, their census, and the two-page switched codec.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "lcw/lam_core.hpp"

namespace lcw::lam {

enum class Mask : std::uint8_t { JJ, JK, KJ, KK };

Mask mask_of(std::span<const Letter> letters);
std::string_view mask_name(Mask m);  // "J...J" etc.

// Bias class at initial level L.
enum class Pattern : std::uint8_t { balanced, unit, other };

Pattern pattern_of(int bias);
std::string_view pattern_name(Pattern p);

struct ValidImage {
    LetterStream letters;
    Mask mask = Mask::JJ;
    int bias = 0;
    Pattern pattern = Pattern::balanced;
    std::size_t transits = 0;
    std::size_t droop = 0;  // max(head_run, tail_run)
};

ValidImage make_image(std::span<const Letter> letters);

inline constexpr unsigned max_image_letters = 24;

// Fibonacci with F(1) = F(2) = 1.
std::uint64_t fibonacci(unsigned n);
// F(M) + 2 F(M-1).
std::uint64_t valid_image_count(unsigned M);

// Every KK-free image of M letters except the K...K class, lexicographic
// (J < K). Throws size_limit outside [2, 24].
std::vector<ValidImage> enumerate_valid(unsigned M);

struct ImageFilter {
    std::optional<int> max_abs_bias;  // none: any bias
    bool balanced_only = false;
    std::size_t min_transits = 0;
    std::optional<std::size_t> max_droop;

    bool accepts(const ValidImage& img) const;

    static ImageFilter open() { return {}; }
    static ImageFilter bias_within(int b) { return ImageFilter{b, false, 0, std::nullopt}; }
    static ImageFilter balanced() { return ImageFilter{0, true, 0, std::nullopt}; }
};

// |bias| <= 1, except balanced-only at M = 16.
ImageFilter applicability_filter(unsigned M);

struct CensusCell {
    std::uint64_t balanced = 0;
    std::uint64_t unit = 0;   // |bias| = 1
    std::uint64_t other = 0;

    std::uint64_t total() const { return balanced + unit + other; }
};

struct Census {
    unsigned M = 0;
    std::array<CensusCell, 3> by_mask{};  // J...J, J...K, K...J; filtered

    const CensusCell& cell(Mask m) const { return by_mask.at(static_cast<std::size_t>(m)); }
    std::uint64_t total() const;
    // One page: J...J plus J...K.
    std::uint64_t page_total() const { return cell(Mask::JJ).total() + cell(Mask::JK).total(); }
};

Census census(unsigned M, const ImageFilter& filter = ImageFilter::open());

enum class PageId : std::uint8_t { A, B };

char page_char(PageId p);

struct Page {
    PageId id = PageId::A;
    std::vector<ValidImage> words;

    std::size_t size() const { return words.size(); }
    std::optional<std::size_t> index_of(std::span<const Letter> word) const;

    void reindex();

private:
    std::unordered_map<std::string, std::size_t> index_;
};

struct PagePair {
    unsigned M = 0;
    Page a;  // J-starting words: J...J and J...K
    Page b;  // J-ending words: J...J and K...J

    const Page& page(PageId id) const { return id == PageId::A ? a : b; }
};

// Throws empty_page when the filter leaves either page empty.
PagePair build_pages(unsigned M, const ImageFilter& filter);

// A word ending in K must be followed by a J-starting word (page A).
PageId next_page(std::span<const Letter> previous);

inline constexpr PageId first_page = PageId::A;

// Page-switched codec. Value n selects word n of the current page.
// Throws value_out_of_range on encode and decode_error on decode.
LetterStream encode_stream(std::span<const std::uint32_t> data, const PagePair& pages);
std::vector<std::uint32_t> decode_stream(std::span<const Letter> letters, const PagePair& pages);

enum class Multiplex : std::uint8_t { absent, single, variants };

std::string_view multiplex_name(Multiplex v);

struct MultiplexVerdict {
    unsigned m = 0;          // data bits per word
    unsigned M = 0;          // letters per word (2m)
    std::uint64_t n_a = 0;   // page size
    std::uint64_t n_q = 0;   // 2^m + 1
    Multiplex verdict = Multiplex::absent;
};

// Throws range_error outside 1 <= m <= 8.
MultiplexVerdict multiplex_feasible(unsigned m);

// Fixed point of the two-page chain where a J-ending word leads to page A:
// p(A) = p(A) p(J|A) + p(B) p(J|B). Throws degenerate for the reducible and
// period-2 chains, range_error for inputs outside [0, 1].
std::pair<double, double> stationary_two_page(double p_j_given_a, double p_j_given_b);

using Rational = boost::rational<std::int64_t>;

// Fraction of the words whose letter i is J.
Rational position_jump_probability(std::span<const ValidImage> words, std::size_t i);

std::vector<ValidImage> select_mask(std::span<const ValidImage> words, Mask m);

} // namespace lcw::lam
