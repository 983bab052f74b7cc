#include <doctest.h>

#include <array>
#include <vector>

#include "lcw/error.hpp"
#include "lcw/lfsr.hpp"

using namespace lcw::prng;

namespace {

// Register as a plain bit array: cell 0 takes cell 12 xor cell 32.
struct BitRegister {
    std::array<int, 33> cell{};

    explicit BitRegister(std::uint64_t s)
    {
        for (int i = 0; i < 33; ++i)
            cell[i] = (s >> i) & 1;
    }
    int step()
    {
        const int fb = cell[12] ^ cell[32];
        for (int i = 32; i > 0; --i)
            cell[i] = cell[i - 1];
        cell[0] = fb;
        return fb;
    }
    std::uint64_t value() const
    {
        std::uint64_t v = 0;
        for (int i = 0; i < 33; ++i)
            v |= std::uint64_t(cell[i]) << i;
        return v;
    }
};

lcw::errc code_of(auto&& f)
{
    try {
        f();
    } catch (const lcw::error& e) {
        return e.code();
    }
    return lcw::errc::usage_error;
}

} // namespace

TEST_SUITE("lfsr") {

TEST_CASE("steps match the bit-array register")
{
    for (std::uint64_t seed : {1ull, 0x1ffffffffull, 0x123456789ull}) {
        BitRegister ref(seed);
        std::uint64_t s = seed;
        for (int i = 0; i < 20000; ++i) {
            const int bit = ref.step();
            const auto st = lfsr_next(s);
            REQUIRE(st.bit == static_cast<unsigned>(bit));
            REQUIRE(st.state == ref.value());
            s = st.state;
        }
    }
}

TEST_CASE("state errors")
{
    CHECK(code_of([] { lfsr_next(0); }) == lcw::errc::zero_state);
    CHECK(code_of([] { lfsr_next(1ull << 33); }) == lcw::errc::range_error);
    CHECK(code_of([] { Lfsr(1, 1); }) == lcw::errc::range_error);
    CHECK(code_of([] { Lfsr(8, 8); }) == lcw::errc::range_error);
}

TEST_CASE("small primitive register has full period")
{
    const Lfsr l(7, 6);
    std::uint64_t s = 1;
    int period = 0;
    do {
        s = l.next(s).state;
        ++period;
    } while (s != 1 && period < 1000);
    CHECK(period == 127);
    CHECK(Gf2Matrix::transition(l).pow(127) == Gf2Matrix::identity(7));
}

TEST_CASE("33-bit register has period 2^33 - 1")
{
    const std::uint64_t period = (1ull << 33) - 1;
    const std::uint64_t primes[] = {7, 23, 89, 599479};
    std::uint64_t prod = 1;
    for (auto q : primes)
        prod *= q;
    REQUIRE(prod == period);

    const auto a = Gf2Matrix::transition(lfsr33());
    CHECK(a.pow(period) == Gf2Matrix::identity(33));
    for (auto q : primes)
        CHECK_FALSE(a.pow(period / q) == Gf2Matrix::identity(33));
    CHECK(lfsr33().advance(1, period) == 1);
    CHECK(lfsr33().period() == period);
}

TEST_CASE("jump-ahead equals stepping")
{
    const auto l = lfsr33();
    std::uint64_t s = 0x0badcafeull;
    const std::uint64_t start = s;
    for (std::uint64_t n = 1; n <= 1500; ++n) {
        s = l.next(s).state;
        REQUIRE(l.advance(start, n) == s);
    }
    const auto once = l.next(start).state;
    CHECK(l.next(once).state != once);
}

TEST_CASE("draws are output bits, first bit most significant")
{
    const auto l = lfsr33();
    BitRegister ref(42);
    const auto d = l.draw(42, 15);
    std::uint64_t v = 0;
    for (int i = 0; i < 15; ++i)
        v = v << 1 | static_cast<std::uint64_t>(ref.step());
    CHECK(d.value == v);
    CHECK(d.state == ref.value());
}

}
