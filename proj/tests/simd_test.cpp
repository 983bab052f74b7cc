#include <doctest.h>

#include <random>
#include <vector>

#include "lcw/lam_core.hpp"
#include "lcw/partition.hpp"
#include "lcw/simd/kernels.hpp"

using namespace lcw::simd;

namespace {

// Class and bias from the letter model.
std::pair<std::uint8_t, std::int8_t> classify_oracle(std::uint32_t code, unsigned len)
{
    lcw::lam::LetterStream s(len);
    for (unsigned i = 0; i < len; ++i)
        s[i] = (code >> i & 1) ? lcw::lam::Letter::K : lcw::lam::Letter::J;
    if (lcw::lam::has_kk_run(s))
        return {jk_invalid, 0};
    const bool first_k = s.front() == lcw::lam::Letter::K, last_k = s.back() == lcw::lam::Letter::K;
    const std::uint8_t cls = first_k ? (last_k ? jk_mask_kk : jk_mask_kj) : (last_k ? jk_mask_jk : jk_mask_jj);
    return {cls, static_cast<std::int8_t>(lcw::lam::metrics(s).dc_bias)};
}

struct AvxGuard {
    ~AvxGuard() { reset_backend(); }
};

} // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar classification matches the letter model")
{
    for (unsigned len : {1u, 2u, 5u, 12u, 17u}) {
        const std::uint32_t count = len >= 17 ? 70000 : 1u << len;
        std::vector<std::int8_t> bias(count);
        std::vector<std::uint8_t> cls(count);
        classify_jk(0, len, bias, cls, Backend::scalar);
        for (std::uint32_t c = 0; c < count; ++c) {
            const auto [k, b] = classify_oracle(c, len);
            REQUIRE(cls[c] == k);
            if (k != jk_invalid)
                REQUIRE(bias[c] == b);
        }
    }
}

TEST_CASE("avx2 kernels equal the scalar kernels")
{
    if (!avx2_supported()) {
        MESSAGE("AVX2 not supported here; equivalence not exercised");
        return;
    }
    AvxGuard guard;

    SUBCASE("classify, odd sizes and offsets")
    {
        for (unsigned len : {1u, 3u, 8u, 16u, 23u, 30u})
            for (std::uint32_t first : {0u, 5u, 1000003u})
                for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 1000u}) {
                    if (len < 21 && first + n > (1u << len))
                        continue;
                    std::vector<std::int8_t> b1(n), b2(n);
                    std::vector<std::uint8_t> c1(n), c2(n);
                    classify_jk(first, len, b1, c1, Backend::scalar);
                    classify_jk(first, len, b2, c2, Backend::avx2);
                    REQUIRE(c1 == c2);
                    for (std::size_t i = 0; i < n; ++i)
                        if (c1[i] != jk_invalid)
                            REQUIRE(b1[i] == b2[i]);
                }
    }
    SUBCASE("census over shard ranges")
    {
        const Pam3Limits lims[] = {{12, 12, 12, 0}, {3, 2, 4, 5}, {1, 1, 0, 0}, {12, 12, -1, 0}, {6, 6, 12, 11}};
        for (const auto& l : lims)
            for (auto [lo, hi] : {std::pair{0u, 729u}, std::pair{0u, 0u}, std::pair{5u, 13u}, std::pair{720u, 729u}})
                REQUIRE(pam3_census(l, lo, hi, Backend::scalar) == pam3_census(l, lo, hi, Backend::avx2));
    }
    SUBCASE("batch conversion, every segment shape")
    {
        std::mt19937 rng(12);
        const std::vector<BinSegments> shapes = {
            {3, 1, 253, 2, 3, 1},
            {65, 122, 130, 131, 64, 122},
            {0, 7, 10, 9, 0, 7},
            {5, 3, 0, 4, 2, 3},
            {1, 1u << 29, 1, (1u << 30) - 1, 1, 1},
        };
        for (const auto& s : shapes) {
            const std::uint64_t total = s.left_count * s.left_size + s.core_count * s.core_size +
                                        s.right_count * s.right_size;
            for (std::size_t n : {0u, 1u, 4u, 5u, 8u, 13u, 4099u}) {
                std::vector<std::uint32_t> v(n), d1(n), d2(n);
                for (std::size_t i = 0; i < n; ++i)
                    v[i] = static_cast<std::uint32_t>(i < 3 ? (i == 0 ? 0 : total - 1) : rng() % total);
                convert_batch(s, v, d1, Backend::scalar);
                convert_batch(s, v, d2, Backend::avx2);
                REQUIRE(d1 == d2);
            }
        }
    }
    SUBCASE("code point scrambling")
    {
        std::mt19937 rng(13);
        for (int k = 0; k < 20; ++k) {
            const std::uint32_t s259 = rng() % 259, s11 = rng() % 2048;
            for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 1025u})
                for (bool inv : {false, true}) {
                    std::vector<std::uint32_t> v(n), o1(n), o2(n);
                    for (auto& x : v)
                        x = rng() % 530432;
                    scramble_points(v, s259, s11, inv, o1, Backend::scalar);
                    scramble_points(v, s259, s11, inv, o2, Backend::avx2);
                    REQUIRE(o1 == o2);
                }
        }
    }
}

TEST_CASE("backend selection")
{
    AvxGuard guard;
    set_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    reset_backend();
    CHECK(active_backend() == (avx2_supported() ? Backend::avx2 : Backend::scalar));
    CHECK(backend_name(Backend::avx2) == "avx2");
    if (!avx2_supported())
        CHECK_THROWS(set_backend(Backend::avx2));
}

}
