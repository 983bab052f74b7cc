#include "lcw/lam_dictionary.hpp"

#include <algorithm>
#include <cmath>

#include "lcw/error.hpp"

namespace lcw::lam {

Mask mask_of(std::span<const Letter> letters)
{
    if (letters.empty())
        fail(errc::value_out_of_range, "empty image has no mask");
    const bool first_k = letters.front() == Letter::K;
    const bool last_k = letters.back() == Letter::K;
    if (first_k)
        return last_k ? Mask::KK : Mask::KJ;
    return last_k ? Mask::JK : Mask::JJ;
}

std::string_view mask_name(Mask m)
{
    switch (m) {
    case Mask::JJ: return "J...J";
    case Mask::JK: return "J...K";
    case Mask::KJ: return "K...J";
    case Mask::KK: return "K...K";
    }
    return "?";
}

Pattern pattern_of(int bias)
{
    if (bias == 0)
        return Pattern::balanced;
    return (bias == 1 || bias == -1) ? Pattern::unit : Pattern::other;
}

std::string_view pattern_name(Pattern p)
{
    switch (p) {
    case Pattern::balanced: return "balanced";
    case Pattern::unit: return "unit";
    case Pattern::other: return "other";
    }
    return "?";
}

ValidImage make_image(std::span<const Letter> letters)
{
    const ImageMetrics m = metrics(letters, Level::L);
    ValidImage img;
    img.letters.assign(letters.begin(), letters.end());
    img.mask = mask_of(letters);
    img.bias = m.dc_bias;
    img.pattern = pattern_of(m.dc_bias);
    img.transits = m.transit_count;
    img.droop = std::max(m.head_run, m.tail_run);
    return img;
}

std::uint64_t fibonacci(unsigned n)
{
    std::uint64_t a = 0, b = 1;
    for (unsigned i = 0; i < n; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

std::uint64_t valid_image_count(unsigned M)
{
    if (M < 2)
        fail(errc::size_limit, "image length must be at least 2");
    return fibonacci(M) + 2 * fibonacci(M - 1);
}

namespace {

void check_length(unsigned M)
{
    if (M < 2 || M > max_image_letters)
        fail(errc::size_limit, "image length " + std::to_string(M) + " outside [2, " +
                                   std::to_string(max_image_letters) + "]");
}

// Depth-first over KK-free prefixes; J before K keeps lexicographic order.
void extend(LetterStream& prefix, unsigned M, std::vector<ValidImage>& out)
{
    if (prefix.size() == M) {
        if (!(prefix.front() == Letter::K && prefix.back() == Letter::K))
            out.push_back(make_image(prefix));
        return;
    }
    prefix.push_back(Letter::J);
    extend(prefix, M, out);
    prefix.back() = Letter::K;
    if (prefix.size() < 2 || prefix[prefix.size() - 2] != Letter::K)
        extend(prefix, M, out);
    prefix.pop_back();
}

} // namespace

std::vector<ValidImage> enumerate_valid(unsigned M)
{
    check_length(M);
    std::vector<ValidImage> out;
    out.reserve(valid_image_count(M));
    LetterStream prefix;
    prefix.reserve(M);
    extend(prefix, M, out);
    return out;
}

bool ImageFilter::accepts(const ValidImage& img) const
{
    if (balanced_only && img.bias != 0)
        return false;
    if (max_abs_bias && std::abs(img.bias) > *max_abs_bias)
        return false;
    if (img.transits < min_transits)
        return false;
    if (max_droop && img.droop > *max_droop)
        return false;
    return true;
}

ImageFilter applicability_filter(unsigned M)
{
    return M == 16 ? ImageFilter::balanced() : ImageFilter::bias_within(1);
}

std::uint64_t Census::total() const
{
    std::uint64_t t = 0;
    for (const auto& c : by_mask)
        t += c.total();
    return t;
}

Census census(unsigned M, const ImageFilter& filter)
{
    Census c;
    c.M = M;
    for (const ValidImage& img : enumerate_valid(M)) {
        if (!filter.accepts(img))
            continue;
        CensusCell& cell = c.by_mask.at(static_cast<std::size_t>(img.mask));
        switch (img.pattern) {
        case Pattern::balanced: ++cell.balanced; break;
        case Pattern::unit: ++cell.unit; break;
        case Pattern::other: ++cell.other; break;
        }
    }
    return c;
}

char page_char(PageId p) { return p == PageId::A ? 'A' : 'B'; }

std::optional<std::size_t> Page::index_of(std::span<const Letter> word) const
{
    auto it = index_.find(format_letters(word));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

void Page::reindex()
{
    index_.clear();
    for (std::size_t i = 0; i < words.size(); ++i)
        index_.emplace(format_letters(words[i].letters), i);
}

PagePair build_pages(unsigned M, const ImageFilter& filter)
{
    PagePair pp;
    pp.M = M;
    pp.a.id = PageId::A;
    pp.b.id = PageId::B;
    for (ValidImage& img : enumerate_valid(M)) {
        if (!filter.accepts(img))
            continue;
        if (img.mask == Mask::JJ || img.mask == Mask::JK)
            pp.a.words.push_back(img);
        if (img.mask == Mask::JJ || img.mask == Mask::KJ)
            pp.b.words.push_back(std::move(img));
    }
    if (pp.a.words.empty() || pp.b.words.empty())
        fail(errc::empty_page, "filter leaves an empty page at M=" + std::to_string(M));
    pp.a.reindex();
    pp.b.reindex();
    return pp;
}

PageId next_page(std::span<const Letter> previous)
{
    return !previous.empty() && previous.back() == Letter::K ? PageId::A : PageId::B;
}

LetterStream encode_stream(std::span<const std::uint32_t> data, const PagePair& pages)
{
    LetterStream out;
    out.reserve(data.size() * pages.M);
    PageId page = first_page;
    for (std::size_t n = 0; n < data.size(); ++n) {
        const Page& p = pages.page(page);
        if (data[n] >= p.size())
            fail(errc::value_out_of_range, "value " + std::to_string(data[n]) + " at word " +
                                               std::to_string(n) + " exceeds page " +
                                               page_char(page) + " size " + std::to_string(p.size()));
        const LetterStream& w = p.words[data[n]].letters;
        out.insert(out.end(), w.begin(), w.end());
        page = next_page(w);
    }
    return out;
}

std::vector<std::uint32_t> decode_stream(std::span<const Letter> letters, const PagePair& pages)
{
    if (pages.M == 0 || letters.size() % pages.M != 0)
        fail(errc::decode_error, "stream length is not a whole number of words");
    std::vector<std::uint32_t> out;
    out.reserve(letters.size() / pages.M);
    PageId page = first_page;
    for (std::size_t pos = 0; pos < letters.size(); pos += pages.M) {
        auto word = letters.subspan(pos, pages.M);
        auto idx = pages.page(page).index_of(word);
        if (!idx)
            fail(errc::decode_error, "word " + std::to_string(pos / pages.M) + " (" +
                                         format_letters(word) + ") not in page " + page_char(page));
        out.push_back(static_cast<std::uint32_t>(*idx));
        page = next_page(word);
    }
    return out;
}

std::string_view multiplex_name(Multiplex v)
{
    switch (v) {
    case Multiplex::absent: return "absent";
    case Multiplex::single: return "single";
    case Multiplex::variants: return "variants";
    }
    return "?";
}

MultiplexVerdict multiplex_feasible(unsigned m)
{
    if (m < 1 || m > 8)
        fail(errc::range_error, "data bits per word must be in [1, 8]");
    MultiplexVerdict v;
    v.m = m;
    v.M = 2 * m;
    v.n_a = census(v.M, applicability_filter(v.M)).page_total();
    v.n_q = (std::uint64_t{1} << m) + 1;
    if (v.n_a < v.n_q)
        v.verdict = Multiplex::absent;
    else if (v.n_a == v.n_q)
        v.verdict = Multiplex::single;
    else
        v.verdict = Multiplex::variants;
    return v;
}

std::pair<double, double> stationary_two_page(double p_j_given_a, double p_j_given_b)
{
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_j_given_a) || !in_unit(p_j_given_b))
        fail(errc::range_error, "probabilities must lie in [0, 1]");
    // A stays A with p(J|A), B moves to A with p(J|B).
    if (p_j_given_a == 1.0 && p_j_given_b == 0.0)
        fail(errc::degenerate, "reducible chain: both pages absorbing");
    if (p_j_given_a == 0.0 && p_j_given_b == 1.0)
        fail(errc::degenerate, "periodic chain: pages alternate");
    const double pa = p_j_given_b / (1.0 - p_j_given_a + p_j_given_b);
    return {pa, 1.0 - pa};
}

Rational position_jump_probability(std::span<const ValidImage> words, std::size_t i)
{
    if (words.empty())
        fail(errc::empty_page, "no words to average over");
    std::int64_t js = 0;
    for (const ValidImage& w : words) {
        if (i >= w.letters.size())
            fail(errc::range_error, "letter position beyond word length");
        js += w.letters[i] == Letter::J;
    }
    return Rational(js, static_cast<std::int64_t>(words.size()));
}

std::vector<ValidImage> select_mask(std::span<const ValidImage> words, Mask m)
{
    std::vector<ValidImage> out;
    std::copy_if(words.begin(), words.end(), std::back_inserter(out),
                 [m](const ValidImage& w) { return w.mask == m; });
    return out;
}

} // namespace lcw::lam
