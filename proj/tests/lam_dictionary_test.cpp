#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "lcw/error.hpp"
#include "lcw/lam_dictionary.hpp"
#include "oracles.hpp"

using namespace lcw::lam;

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

std::vector<std::string> brute_valid(unsigned M)
{
    std::vector<std::string> v;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << M); ++c) {
        std::string s = oracle::jk_string(c, M);
        if (oracle::valid_image(s))
            v.push_back(std::move(s));
    }
    return v;
}

} // namespace

TEST_SUITE("lam_dictionary") {

TEST_CASE("count law against brute force")
{
    for (unsigned M = 2; M <= 16; ++M) {
        const auto brute = brute_valid(M);
        const auto lib = enumerate_valid(M);
        REQUIRE(lib.size() == brute.size());
        REQUIRE(lib.size() == oracle::fib(M) + 2 * oracle::fib(M - 1));
        for (std::size_t i = 0; i < lib.size(); ++i)
            REQUIRE(format_letters(lib[i].letters) == brute[i]);
    }
    for (unsigned M = 2; M <= max_image_letters; ++M)
        CHECK(valid_image_count(M) == oracle::fib(M) + 2 * oracle::fib(M - 1));
}

TEST_CASE("printed census points")
{
    CHECK(enumerate_valid(8).size() == 47);
    CHECK(enumerate_valid(2).size() == 3);
    const auto c20 = census(20);
    CHECK(c20.total() == 15127);
    CHECK(c20.cell(Mask::JJ).total() == 6765);
    for (unsigned M = 2; M <= 20; M += 2) {
        const auto c = census(M);
        CHECK(c.cell(Mask::JJ).total() == oracle::fib(M));
        CHECK(c.cell(Mask::JK).total() == oracle::fib(M - 1));
        CHECK(c.cell(Mask::KJ).total() == oracle::fib(M - 1));
    }
}

TEST_CASE("size limit")
{
    CHECK(code_of([] { enumerate_valid(1); }) == lcw::errc::size_limit);
    CHECK(code_of([] { enumerate_valid(25); }) == lcw::errc::size_limit);
}

TEST_CASE("filtered census")
{
    const auto c8 = census(8, ImageFilter::bias_within(1));
    CHECK(c8.cell(Mask::JJ).balanced == 7);
    CHECK(c8.cell(Mask::JJ).total() == 17);
    CHECK(c8.page_total() == 27);

    const auto c12 = census(12, ImageFilter::bias_within(1));
    CHECK(c12.cell(Mask::JJ).total() == 103);
    CHECK(c12.cell(Mask::JK).total() == 59);
    CHECK(c12.page_total() == 162);

    CHECK(census(16, ImageFilter::balanced()).page_total() == 376);

    // every cell is the brute-force count of its class
    for (unsigned M : {6u, 8u, 10u}) {
        const auto c = census(M);
        std::uint64_t bal = 0, unit = 0;
        for (const auto& s : brute_valid(M)) {
            if (s.front() != 'J' || s.back() != 'J')
                continue;
            const int b = oracle::dc_bias(s, 'L');
            bal += b == 0;
            unit += b == 1 || b == -1;
        }
        CHECK(c.cell(Mask::JJ).balanced == bal);
        CHECK(c.cell(Mask::JJ).unit == unit);
    }
}

TEST_CASE("filter monotonicity")
{
    for (unsigned M : {8u, 12u}) {
        std::uint64_t prev = 0;
        for (int b = 0; b <= static_cast<int>(M); ++b) {
            const auto t = census(M, ImageFilter::bias_within(b)).total();
            CHECK(t >= prev);
            prev = t;
        }
        CHECK(prev == census(M).total());
        std::uint64_t prev_t = ~0ull;
        for (std::size_t tr = 0; tr <= M; ++tr) {
            ImageFilter f;
            f.min_transits = tr;
            const auto t = census(M, f).total();
            CHECK(t <= prev_t);
            prev_t = t;
        }
    }
}

TEST_CASE("pages")
{
    for (auto [M, size] : {std::pair{8u, 27u}, {4u, 5u}, {12u, 162u}}) {
        const auto pp = build_pages(M, ImageFilter::bias_within(1));
        CHECK(pp.a.size() == size);
        CHECK(pp.b.size() == size);
    }
    const auto p16 = build_pages(16, applicability_filter(16));
    CHECK(p16.a.size() == 376);
    CHECK(p16.b.size() == 376);

    const auto pp = build_pages(8, ImageFilter::bias_within(1));
    for (const auto& w : pp.a.words)
        CHECK((w.mask == Mask::JJ || w.mask == Mask::JK));
    for (const auto& w : pp.b.words)
        CHECK((w.mask == Mask::JJ || w.mask == Mask::KJ));
    // lexicographic order and index lookup
    for (std::size_t i = 1; i < pp.a.size(); ++i)
        CHECK(format_letters(pp.a.words[i - 1].letters) < format_letters(pp.a.words[i].letters));
    for (std::size_t i = 0; i < pp.b.size(); ++i)
        CHECK(pp.b.index_of(pp.b.words[i].letters) == i);

    // letter reversal maps page A onto page B keeping |bias|
    for (const auto& w : pp.a.words) {
        std::string s = format_letters(w.letters);
        std::reverse(s.begin(), s.end());
        const auto idx = pp.b.index_of(parse_letters(s));
        REQUIRE(idx.has_value());
        CHECK(std::abs(pp.b.words[*idx].bias) == std::abs(w.bias));
    }

    ImageFilter none;
    none.min_transits = 100;
    CHECK(code_of([&] { build_pages(8, none); }) == lcw::errc::empty_page);
}

TEST_CASE("page switching")
{
    CHECK(next_page(parse_letters("JKJKJKJK")) == PageId::A);
    CHECK(next_page(parse_letters("JJJJJJJJ")) == PageId::B);
    CHECK(first_page == PageId::A);

    // every word pair the codec can emit is KK-free across the seam
    const auto pp = build_pages(8, ImageFilter::bias_within(1));
    for (const auto* page : {&pp.a, &pp.b}) {
        for (const auto& w1 : page->words) {
            const auto& next = pp.page(next_page(w1.letters));
            for (const auto& w2 : next.words) {
                LetterStream cat = w1.letters;
                cat.insert(cat.end(), w2.letters.begin(), w2.letters.end());
                REQUIRE_FALSE(has_kk_run(cat));
            }
        }
    }
}

TEST_CASE("codec")
{
    const auto pp = build_pages(8, ImageFilter::bias_within(1));
    CHECK(encode_stream({}, pp).empty());
    CHECK(decode_stream({}, pp).empty());

    std::mt19937_64 rng(99);
    std::vector<std::uint32_t> data(10000);
    for (auto& v : data)
        v = static_cast<std::uint32_t>(rng() % 16);
    const auto letters = encode_stream(data, pp);
    CHECK(letters.size() == data.size() * 8);
    CHECK_FALSE(has_kk_run(letters));
    CHECK(decode_stream(letters, pp) == data);

    // running bias stays within words * bound + peak
    int run = 0, worst = 0;
    Level lv = Level::L;
    for (std::size_t i = 0; i < letters.size(); i += 8) {
        const auto m = metrics(std::span(letters).subspan(i, 8), lv);
        run += m.dc_bias;
        worst = std::max(worst, std::abs(run));
        lv = m.final_level;
    }
    CHECK(worst <= static_cast<int>(data.size()) + 8);

    const std::vector<std::uint32_t> big{27};
    CHECK(code_of([&] { encode_stream(big, pp); }) == lcw::errc::value_out_of_range);

    // flip letter 3 of the second word: it either breaks the word or the KK rule
    auto bad = encode_stream(std::vector<std::uint32_t>{1, 2, 3}, pp);
    bad[8 + 3] = bad[8 + 3] == Letter::J ? Letter::K : Letter::J;
    CHECK(code_of([&] { decode_stream(bad, pp); }) == lcw::errc::decode_error);
    const LetterStream ragged(letters.begin(), letters.begin() + 12);
    CHECK(code_of([&] { decode_stream(ragged, pp); }) == lcw::errc::decode_error);
}

TEST_CASE("multiplexing verdicts")
{
    const auto m1 = multiplex_feasible(1);
    CHECK(m1.n_a == 2);
    CHECK(m1.verdict == Multiplex::absent);
    const auto m2 = multiplex_feasible(2);
    CHECK(m2.n_a == 5);
    CHECK(m2.n_q == 5);
    CHECK(m2.verdict == Multiplex::single);
    const auto m4 = multiplex_feasible(4);
    CHECK(m4.n_a == 27);
    CHECK(m4.verdict == Multiplex::variants);
    CHECK(multiplex_feasible(6).n_a == 162);
    CHECK(multiplex_feasible(8).n_a == 376);
    CHECK(code_of([] { multiplex_feasible(0); }) == lcw::errc::range_error);
    CHECK(code_of([] { multiplex_feasible(9); }) == lcw::errc::range_error);
}

TEST_CASE("two-page stationary model")
{
    for (double q : {0.1, 0.5, 0.9}) {
        const auto [a, b] = stationary_two_page(q, q);
        CHECK(a == doctest::Approx(q).epsilon(1e-12));
        CHECK(a + b == doctest::Approx(1.0));
    }
    CHECK(code_of([] { stationary_two_page(1.0, 0.0); }) == lcw::errc::degenerate);
    CHECK(code_of([] { stationary_two_page(0.0, 1.0); }) == lcw::errc::degenerate);
    CHECK(code_of([] { stationary_two_page(1.5, 0.0); }) == lcw::errc::range_error);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int i = 0; i < 200; ++i) {
        const double ja = u(rng), jb = u(rng);
        // power iteration of p(A) <- p(A) p(J|A) + p(B) p(J|B)
        double pa = 0.5;
        for (int k = 0; k < 20000; ++k)
            pa = pa * ja + (1 - pa) * jb;
        CHECK(stationary_two_page(ja, jb).first == doctest::Approx(pa).epsilon(1e-12));
    }
}

TEST_CASE("position jump probability")
{
    const auto pp = build_pages(8, ImageFilter::bias_within(1));
    const auto jj = select_mask(pp.a.words, Mask::JJ);
    CHECK(jj.size() == 17);
    CHECK(position_jump_probability(jj, 0) == Rational(1));
    CHECK(position_jump_probability(jj, 7) == Rational(1));
    const auto p1 = position_jump_probability(jj, 1);
    CHECK(boost::rational_cast<double>(p1) >= 0.6);
    CHECK(boost::rational_cast<double>(p1) <= 0.9);
    int js = 0;
    for (const auto& w : jj)
        js += w.letters[1] == Letter::J;
    CHECK(p1 == Rational(js, 17));

    const auto kj = select_mask(pp.b.words, Mask::KJ);
    REQUIRE_FALSE(kj.empty());
    CHECK(position_jump_probability(kj, 1) == Rational(1));
}

}
