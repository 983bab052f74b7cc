#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "lcw/error.hpp"
#include "lcw/partition.hpp"
#include "lcw/ternary_t1l.hpp"

using namespace lcw::t1l;

namespace {

lcw::errc code_of(auto&& f)
{
    try {
        f();
    } catch (const lcw::error& e) {
        return e.code();
    }
    return lcw::errc::usage_error;
}

double to_d(const cpp_rational& q) { return q.convert_to<double>(); }

cpp_rational q(long n, long d) { return cpp_rational(n, d); }

// Page distribution by plain power iteration over doubles.
std::array<double, 4> page_by_iteration(const Dictionary& d)
{
    std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};
    for (int it = 0; it < 5000; ++it) {
        std::array<double, 4> n{};
        for (int s = 1; s <= 4; ++s)
            for (const auto& e : d.page(s))
                n[s - 1 + word_metrics(e.word).delta_dc] += p[s - 1] * e.reprs / 32.0;
        p = n;
    }
    return p;
}

// Longest run of each symbol over every 4-word sequence from every page.
std::array<unsigned, 3> runs_by_enumeration(const Dictionary& d)
{
    std::array<unsigned, 3> best{};
    std::vector<std::int8_t> buf;
    auto walk = [&](auto&& self, int sigma, int depth) -> void {
        if (depth == 4) {
            unsigned run = 0;
            for (std::size_t i = 0; i < buf.size(); ++i) {
                run = (i && buf[i] == buf[i - 1]) ? run + 1 : 1;
                best[buf[i] + 1] = std::max(best[buf[i] + 1], run);
            }
            return;
        }
        for (const auto& e : d.page(sigma)) {
            buf.insert(buf.end(), e.word.begin(), e.word.end());
            self(self, sigma + word_metrics(e.word).delta_dc, depth + 1);
            buf.resize(buf.size() - 3);
        }
    };
    for (int s = 1; s <= 4; ++s)
        walk(walk, s, 0);
    return best;
}

double round2(double v) { return std::round(v * 100) / 100; }

} // namespace

TEST_SUITE("t1l") {

TEST_CASE("word metrics")
{
    CHECK(word_metrics(parse_word("LLL")).delta_dc == -3);
    CHECK(word_metrics(parse_word("LLL")).transits == 0);
    CHECK(word_metrics(parse_word("zzz")).delta_dc == 0);
    CHECK(word_metrics(parse_word("LzL")).delta_dc == -2);
    CHECK(word_metrics(parse_word("LzL")).transits == 2);
    CHECK(word_metrics(parse_word("L L H")).delta_dc == -1);
    CHECK(word_metrics(parse_word("HLH")) == WordMetrics{1, 1, 0, 2});
    CHECK(format_word(parse_word("-0+"), true) == "L z H");
    CHECK(code_of([] { parse_word("LLLL"); }) == lcw::errc::parse_error);
    CHECK(code_of([] { parse_word("LxL"); }) == lcw::errc::parse_error);
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c) {
                const Word w{std::int8_t(a), std::int8_t(b), std::int8_t(c)};
                const auto m = word_metrics(w);
                CHECK(m.delta_dc == a + b + c);
                CHECK(m.transits == (a != b) + (b != c));
                CHECK(m.peak_pos == std::max({0, a, a + b, a + b + c}));
                CHECK(m.peak_neg == std::min({0, a, a + b, a + b + c}));
            }
}

TEST_CASE("encode examples")
{
    const auto e = encode_nibble(0b1001, 4);
    CHECK(format_word(e.word) == "LLL");
    CHECK(e.next_sigma == 1);
    for (int s = 1; s <= 4; ++s) {
        CHECK(format_word(encode_nibble(0b0111, s).word) == "LzH");
        CHECK(encode_nibble(0b0111, s).next_sigma == s);
    }
    CHECK(code_of([] { encode_nibble(16, 1); }) == lcw::errc::range_error);
    CHECK(code_of([] { encode_nibble(0, 5); }) == lcw::errc::range_error);
    CHECK(code_of([] { encode_nibble(18, 2, Variant::broadened); }) == lcw::errc::range_error);
    CHECK(code_of([] { decode_word(parse_word("LLL"), 1); }) == lcw::errc::page_miss);
    CHECK(code_of([] { decode_word(parse_word("zzz"), 2); }) == lcw::errc::page_miss);
}

TEST_CASE("random round trip keeps the disparity in range")
{
    for (auto v : {Variant::reference, Variant::broadened}) {
        std::mt19937 rng(146);
        int sigma = 2, dsigma = 2;
        for (int i = 0; i < 100000; ++i) {
            const auto size = static_cast<std::uint32_t>(dictionary(v).page(sigma).size());
            const std::uint32_t code = rng() % size;
            const auto e = encode_nibble(code, sigma, v);
            REQUIRE(e.next_sigma >= 1);
            REQUIRE(e.next_sigma <= 4);
            const auto d = decode_word(e.word, dsigma, v);
            REQUIRE(d.code == code);
            REQUIRE(d.next_sigma == e.next_sigma);
            sigma = dsigma = e.next_sigma;
        }
    }
}

TEST_CASE("pages: sizes, closure and injective codes")
{
    const std::array<std::size_t, 4> ref{16, 16, 16, 16}, broad{16, 18, 18, 16};
    for (int s = 1; s <= 4; ++s) {
        CHECK(reference_dictionary().page(s).size() == ref[s - 1]);
        CHECK(broadened_dictionary().page(s).size() == broad[s - 1]);
        for (auto v : {Variant::reference, Variant::broadened}) {
            std::set<Word> words;
            std::set<int> codes;
            unsigned reprs = 0;
            for (const auto& e : dictionary(v).page(s)) {
                const int next = s + word_metrics(e.word).delta_dc;
                CHECK(next >= 1);
                CHECK(next <= 4);
                words.insert(e.word);
                codes.insert(e.code);
                reprs += e.reprs;
            }
            CHECK(words.size() == dictionary(v).page(s).size());
            CHECK(codes.size() == dictionary(v).page(s).size());
            CHECK(reprs == 32);
        }
    }
    CHECK(code_of([] { reference_dictionary().page(0); }) == lcw::errc::range_error);
}

TEST_CASE("representation counts follow the bubble map")
{
    for (int s = 1; s <= 4; ++s) {
        const auto& page = broadened_dictionary().page(s);
        std::multiset<std::uint64_t> mine, bubble;
        for (const auto& e : page)
            mine.insert(e.reprs);
        const auto m = lcw::qu::bubble_map(page.size());
        for (std::uint64_t d = 0; d < m.n(); ++d)
            bubble.insert(m.preimage_size(d));
        CHECK(mine == bubble);
    }
}

TEST_CASE("cipher points")
{
    for (auto v : {Variant::reference, Variant::broadened}) {
        const auto& d = dictionary(v);
        for (int s = 1; s <= 4; ++s)
            for (std::uint32_t key = 0; key < 32; ++key) {
                // every point decodes, and each word owns exactly R_n points
                std::map<std::uint32_t, unsigned> owners;
                for (std::uint32_t p = 0; p < 32; ++p)
                    ++owners[plain_code(d, s, p, key)];
                for (std::uint32_t c = 0; c < d.page(s).size(); ++c) {
                    CHECK(owners[c] == d.page(s)[c].reprs);
                    CHECK(plain_code(d, s, cipher_point(d, s, c, key), key) == c);
                }
            }
    }
    CHECK(code_of([] { cipher_point(reference_dictionary(), 1, 0, 32); }) == lcw::errc::range_error);
}

TEST_CASE("delimiters")
{
    const auto ssd = delimiter(DelimiterKind::ssd, 1, false);
    REQUIRE(ssd.size() == 4);
    CHECK(format_word(ssd[0]) == "zzz");
    CHECK(format_word(ssd[1]) == "zzz");
    CHECK(format_word(ssd[2]) == "LzH");
    CHECK(format_word(ssd[3]) == "HHL");
    CHECK(format_word(delimiter_third(1, true)) == "HHH");
    CHECK(code_of([] { delimiter_fourth(DelimiterKind::ssd, 2, false); }) == lcw::errc::undefined_cell);
    CHECK(code_of([] { delimiter(DelimiterKind::esd, 3, true); }) == lcw::errc::undefined_cell);
    for (auto k : {DelimiterKind::ssd, DelimiterKind::esd, DelimiterKind::esd_err}) {
        CHECK_NOTHROW(delimiter_fourth(k, 1, false));
        CHECK_NOTHROW(delimiter_fourth(k, 4, true));
    }
    // the third word keeps the disparity inside the pages
    for (int s = 1; s <= 4; ++s)
        for (bool s4 : {false, true}) {
            const int next = s + word_metrics(delimiter_third(s, s4)).delta_dc;
            CHECK(next >= 1);
            CHECK(next <= 4);
        }
}

TEST_CASE("event patterns")
{
    CHECK(event_pattern(2, EventSlot::flag) == std::vector<std::uint8_t>{0, 17});
    CHECK(event_pattern(3, EventSlot::flag) == std::vector<std::uint8_t>{0, 17});
    const auto fade = event_pattern(1, EventSlot::fade_in);
    CHECK(fade == std::vector<std::uint8_t>{1, 9});
    const auto& p1 = broadened_dictionary().page(1);
    const std::set<int> rises{word_metrics(p1[fade[0]].word).delta_dc, word_metrics(p1[fade[1]].word).delta_dc};
    CHECK(rises == std::set<int>{1, 2});
    CHECK(code_of([] { event_pattern(1, EventSlot::flag); }) == lcw::errc::slot_unavailable);
    CHECK(code_of([] { event_pattern(4, EventSlot::flag); }) == lcw::errc::slot_unavailable);
    CHECK(event_pattern(2, EventSlot::meta).size() == 18);
}

TEST_CASE("reference portrait, exact")
{
    const auto st = portrait(Variant::reference);
    const std::array<std::array<cpp_rational, 6>, 3> sigma{{
        {q(12, 416), q(65, 416), q(131, 416), q(131, 416), q(65, 416), q(12, 416)},
        {q(8, 416), q(65, 416), q(135, 416), q(135, 416), q(65, 416), q(8, 416)},
        {0, q(4, 26), q(9, 26), q(9, 26), q(4, 26), 0},
    }};
    CHECK(st.sigma == sigma);
    for (int ph = 0; ph < 3; ++ph) {
        CHECK(st.letter[ph][0] == q(134, 416));
        CHECK(st.letter[ph][1] == q(148, 416));
        CHECK(st.letter[ph][2] == q(134, 416));
    }
    CHECK(st.sigma_avg[0] == q(20, 1248));
    CHECK(st.sigma_avg[1] == q(194, 1248));
    CHECK(st.sigma_avg[2] == q(410, 1248));
    CHECK(st.letter_avg[1] == q(444, 1248));
    CHECK(round2(to_d(st.transit[0])) == doctest::Approx(.79));
    CHECK(round2(to_d(st.transit[1])) == doctest::Approx(.79));
    CHECK(round2(to_d(st.transit[2])) == doctest::Approx(.68));
    CHECK(round2(to_d(st.transit_avg)) == doctest::Approx(.76));
    CHECK(st.max_run[0] == 5u);
    CHECK(st.max_run[1] == 4u);
    CHECK(st.max_run[2] == 5u);
}

TEST_CASE("broadened portrait, two-decimal cells")
{
    const auto st = portrait(Variant::broadened);
    const std::array<std::array<double, 6>, 3> sigma{{
        {24. / 832, 130. / 832, 262. / 832, 262. / 832, 130. / 832, 24. / 832},
        {25. / 832, 121. / 832, 270. / 832, 270. / 832, 121. / 832, 25. / 832},
        {0, 4. / 26, 9. / 26, 9. / 26, 4. / 26, 0},
    }};
    const std::array<std::array<double, 3>, 3> letter{{
        {277. / 832, 278. / 832, 277. / 832},
        {268. / 832, 296. / 832, 268. / 832},
        {277. / 832, 278. / 832, 277. / 832},
    }};
    for (int ph = 0; ph < 3; ++ph) {
        for (int k = 0; k < 6; ++k)
            CHECK(std::fabs(to_d(st.sigma[ph][k]) - sigma[ph][k]) <= 0.01);
        for (int k = 0; k < 3; ++k)
            CHECK(std::fabs(to_d(st.letter[ph][k]) - letter[ph][k]) <= 0.01);
    }
    CHECK(std::fabs(to_d(st.transit[0]) - .77) <= 0.01);
    CHECK(std::fabs(to_d(st.transit[1]) - .77) <= 0.01);
    CHECK(st.max_run[0] == 5u);
    CHECK(st.max_run[1] == 4u);
    CHECK(st.max_run[2] == 5u);
}

TEST_CASE("portrait families sum to one and agree with iteration")
{
    for (auto v : {Variant::reference, Variant::broadened}) {
        const auto st = portrait(v);
        cpp_rational page = 0;
        for (const auto& x : st.page)
            page += x;
        CHECK(page == 1);
        for (int ph = 0; ph < 3; ++ph) {
            cpp_rational s = 0, l = 0;
            for (const auto& x : st.sigma[ph])
                s += x;
            for (const auto& x : st.letter[ph])
                l += x;
            CHECK(s == 1);
            CHECK(l == 1);
        }
        const auto it = page_by_iteration(dictionary(v));
        for (int s = 0; s < 4; ++s)
            CHECK(to_d(st.page[s]) == doctest::Approx(it[s]).epsilon(1e-12));
    }
}

TEST_CASE("run bounds match 4-word enumeration")
{
    for (auto v : {Variant::reference, Variant::broadened}) {
        const auto lib = run_bounds(dictionary(v));
        const auto brute = runs_by_enumeration(dictionary(v));
        for (int i = 0; i < 3; ++i) {
            REQUIRE(lib[i].has_value());
            CHECK(*lib[i] == brute[i]);
        }
    }
}

TEST_CASE("simulated streams converge to the portrait")
{
    // Uniform 5-bit cipher points drive the page codec; 10^6 letters.
    for (auto v : {Variant::reference, Variant::broadened}) {
        const auto& d = dictionary(v);
        const auto st = portrait(v);
        std::mt19937_64 rng(7);
        const int words = 333334;
        std::array<std::array<long, 3>, 3> letters{};
        std::array<long, 3> transits{};
        int sigma = 1;
        Word prev{};
        bool have_prev = false;
        for (int i = 0; i < 10000 + words; ++i) {
            const auto code = plain_code(d, sigma, rng() % 32, rng() % 32);
            const Word w = d.page(sigma)[code].word;
            if (i >= 10000) {
                for (int ph = 0; ph < 3; ++ph)
                    ++letters[ph][w[ph] + 1];
                transits[0] += w[0] != w[1];
                transits[1] += w[1] != w[2];
                if (have_prev)
                    transits[2] += prev[2] != w[0];
            }
            have_prev = i >= 10000;
            prev = w;
            sigma += word_metrics(w).delta_dc;
            REQUIRE(sigma >= 1);
            REQUIRE(sigma <= 4);
        }
        auto within = [&](long hits, long n, const cpp_rational& p) {
            const double pe = to_d(p);
            return std::fabs(hits - pe * n) <= 3 * std::sqrt(n * pe * (1 - pe));
        };
        for (int ph = 0; ph < 3; ++ph)
            for (int k = 0; k < 3; ++k)
                CHECK_MESSAGE(within(letters[ph][k], words, st.letter[ph][k]), "phase " << ph << " symbol " << k);
        CHECK(within(transits[0], words, st.transit[0]));
        CHECK(within(transits[1], words, st.transit[1]));
        CHECK(within(transits[2], words - 1, st.transit[2]));
    }
}

}
