// AVX2 kernels. Built with -mavx2 -mpopcnt -mbmi2 and only reached after
// the runtime CPU check in dispatch.cpp.

#include <immintrin.h>

#include <array>

#include "lcw/pam3_image.hpp"
#include "lcw/simd/kernels.hpp"

namespace lcw::simd::detail {

namespace {

// Per-lane popcount of 32-bit lanes: nibble lookup, then byte sums.
inline __m256i popcount_epi32(__m256i v)
{
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    const __m256i pairs = _mm256_maddubs_epi16(cnt, _mm256_set1_epi8(1));
    return _mm256_madd_epi16(pairs, _mm256_set1_epi16(1));
}

// Inclusive prefix xor from bit 0 upward inside each 32-bit lane.
inline __m256i prefix_xor_epi32(__m256i p)
{
    p = _mm256_xor_si256(p, _mm256_slli_epi32(p, 1));
    p = _mm256_xor_si256(p, _mm256_slli_epi32(p, 2));
    p = _mm256_xor_si256(p, _mm256_slli_epi32(p, 4));
    p = _mm256_xor_si256(p, _mm256_slli_epi32(p, 8));
    p = _mm256_xor_si256(p, _mm256_slli_epi32(p, 16));
    return p;
}

// Narrow eight int32 lanes (values fit a byte) to eight bytes at dst.
inline void store_bytes(void* dst, __m256i v)
{
    const __m256i w = _mm256_packs_epi16(_mm256_packs_epi32(v, v), _mm256_setzero_si256());
    // bytes 0..3 of each 128-bit lane hold lanes 0..3 and 4..7
    const __m256i g = _mm256_permutevar8x32_epi32(w, _mm256_setr_epi32(0, 4, 0, 0, 0, 0, 0, 0));
    _mm_storel_epi64(static_cast<__m128i*>(dst), _mm256_castsi256_si128(g));
}

} // namespace

void classify_jk_avx2(std::uint32_t first, unsigned length, std::span<std::int8_t> bias,
                      std::span<std::uint8_t> cls)
{
    const std::size_t n = bias.size();
    const std::size_t body = n & ~std::size_t{7};
    const __m256i lenmask = _mm256_set1_epi32(static_cast<int>((1u << length) - 1));
    const __m256i one = _mm256_set1_epi32(1);
    const __m256i zero = _mm256_setzero_si256();
    const __m128i last_shift = _mm_cvtsi32_si128(static_cast<int>(length - 1));
    __m256i code = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(first)), _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    const __m256i step = _mm256_set1_epi32(8);

    for (std::size_t i = 0; i < body; i += 8) {
        const __m256i k = code;
        const __m256i j = _mm256_andnot_si256(k, lenmask);
        // Level after letter i is H when an odd number of J's came so far;
        // a K keeps that level.
        const __m256i high = prefix_xor_epi32(j);
        const __m256i pos = popcount_epi32(_mm256_and_si256(k, high));
        const __m256i neg = popcount_epi32(_mm256_andnot_si256(high, k));
        const __m256i b = _mm256_sub_epi32(pos, neg);

        const __m256i kk = _mm256_and_si256(k, _mm256_srli_epi32(k, 1));
        const __m256i valid = _mm256_cmpeq_epi32(kk, zero);
        const __m256i first_k = _mm256_and_si256(k, one);
        const __m256i last_k = _mm256_and_si256(_mm256_srl_epi32(k, last_shift), one);
        __m256i c = _mm256_add_epi32(one, _mm256_add_epi32(_mm256_slli_epi32(first_k, 1), last_k));
        c = _mm256_and_si256(c, valid);

        store_bytes(bias.data() + i, b);
        store_bytes(cls.data() + i, c);
        code = _mm256_add_epi32(code, step);
    }
    if (body < n)
        classify_jk_scalar(first + static_cast<std::uint32_t>(body), length, bias.subspan(body), cls.subspan(body));
}

namespace {

constexpr std::size_t half_pad = 736;  // 729 rounded up to 8 lanes

struct HalfTables {
    alignas(32) std::array<std::int32_t, half_pad> head{}, tail{}, sum{}, trans{}, first{}, last{}, uniform{};
};

HalfTables build_half_tables()
{
    HalfTables t;
    for (std::uint32_t h = 0; h < pam3_half_count; ++h) {
        const auto s = pam3::decode_index<6>(h);
        const auto m = pam3::run_metrics(s);
        t.head[h] = m.head_run;
        t.tail[h] = m.tail_run;
        t.sum[h] = m.sum;
        t.trans[h] = m.transits;
        t.first[h] = s.front();
        t.last[h] = s.back();
        t.uniform[h] = m.head_run == 6 ? -1 : 0;
    }
    return t;
}

const HalfTables& half_tables()
{
    static const HalfTables t = build_half_tables();
    return t;
}

} // namespace

std::uint64_t pam3_census_avx2(const Pam3Limits& limits, std::uint32_t shard_begin, std::uint32_t shard_end)
{
    const HalfTables& t = half_tables();
    const __m256i six = _mm256_set1_epi32(6);
    const __m256i head_max = _mm256_set1_epi32(limits.max_head_droop);
    const __m256i tail_max = _mm256_set1_epi32(limits.max_tail_droop);
    const __m256i dc_max = _mm256_set1_epi32(limits.max_abs_dc);
    const __m256i tr_min = _mm256_set1_epi32(limits.min_transits);
    const std::uint32_t body = pam3_half_count & ~7u;  // 728
    std::uint64_t accepted = 0;

    for (std::uint32_t hi = shard_begin; hi < shard_end; ++hi) {
        const __m256i last_hi = _mm256_set1_epi32(t.last[hi]);
        const __m256i head_hi = _mm256_set1_epi32(t.head[hi]);
        const __m256i tail_hi6 = _mm256_set1_epi32(t.tail[hi] + 6);
        const __m256i sum_hi = _mm256_set1_epi32(t.sum[hi]);
        const __m256i trans_hi = _mm256_set1_epi32(t.trans[hi]);
        const bool uniform_hi = t.uniform[hi] != 0;

        for (std::uint32_t lo = 0; lo < body; lo += 8) {
            const auto ld = [lo](const std::array<std::int32_t, half_pad>& a) {
                return _mm256_load_si256(reinterpret_cast<const __m256i*>(a.data() + lo));
            };
            const __m256i first_lo = ld(t.first);
            const __m256i joined = _mm256_cmpeq_epi32(first_lo, last_hi);

            __m256i head = head_hi;
            if (uniform_hi)
                head = _mm256_blendv_epi8(six, _mm256_add_epi32(six, ld(t.head)), joined);
            const __m256i tail_join = _mm256_and_si256(joined, ld(t.uniform));
            const __m256i tail = _mm256_blendv_epi8(ld(t.tail), tail_hi6, tail_join);
            const __m256i dc = _mm256_abs_epi32(_mm256_add_epi32(sum_hi, ld(t.sum)));
            // joined is -1 where the seam has no transit
            const __m256i tr = _mm256_add_epi32(_mm256_add_epi32(trans_hi, ld(t.trans)),
                                                _mm256_add_epi32(_mm256_set1_epi32(1), joined));

            const __m256i bad = _mm256_or_si256(
                _mm256_or_si256(_mm256_cmpgt_epi32(head, head_max), _mm256_cmpgt_epi32(tail, tail_max)),
                _mm256_or_si256(_mm256_cmpgt_epi32(dc, dc_max), _mm256_cmpgt_epi32(tr_min, tr)));
            const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(bad));
            accepted += 8 - static_cast<unsigned>(_mm_popcnt_u32(static_cast<unsigned>(mask)));
        }
        // last image of the shard
        for (std::uint32_t lo = body; lo < pam3_half_count; ++lo) {
            const auto s = pam3::decode_index<12>(hi * pam3_half_count + lo);
            const auto m = pam3::run_metrics(s);
            const int dc = m.sum < 0 ? -m.sum : m.sum;
            accepted += m.head_run <= limits.max_head_droop && m.tail_run <= limits.max_tail_droop &&
                        dc <= limits.max_abs_dc && m.transits >= limits.min_transits;
        }
    }
    return accepted;
}

void convert_batch_avx2(const BinSegments& seg, std::span<const std::uint32_t> values,
                        std::span<std::uint32_t> digits)
{
    const double left_total = static_cast<double>(seg.left_count * seg.left_size);
    const double split = left_total + static_cast<double>(seg.core_count * seg.core_size);
    const __m256d l1 = _mm256_set1_pd(left_total);
    const __m256d l2 = _mm256_set1_pd(split);
    const __m256d xl = _mm256_set1_pd(static_cast<double>(seg.left_size));
    const __m256d xc = _mm256_set1_pd(static_cast<double>(seg.core_size));
    const __m256d xr = _mm256_set1_pd(static_cast<double>(seg.right_size));
    const __m256d base_core = _mm256_set1_pd(static_cast<double>(seg.left_count));
    const __m256d base_right = _mm256_set1_pd(static_cast<double>(seg.left_count + seg.core_count));

    // Quotients below 2^31 of integers below 2^31 are exact after floor.
    auto convert4 = [&](__m128i v32) {
        const __m256d v = _mm256_cvtepi32_pd(v32);
        const __m256d dl = _mm256_floor_pd(_mm256_div_pd(v, xl));
        const __m256d dc = _mm256_add_pd(base_core, _mm256_floor_pd(_mm256_div_pd(_mm256_sub_pd(v, l1), xc)));
        const __m256d dr = _mm256_add_pd(base_right, _mm256_floor_pd(_mm256_div_pd(_mm256_sub_pd(v, l2), xr)));
        const __m256d in_left = _mm256_cmp_pd(v, l1, _CMP_LT_OQ);
        const __m256d in_core = _mm256_cmp_pd(v, l2, _CMP_LT_OQ);
        const __m256d d = _mm256_blendv_pd(dr, _mm256_blendv_pd(dc, dl, in_left), in_core);
        return _mm256_cvttpd_epi32(d);
    };

    const std::size_t n = values.size();
    const std::size_t body = n & ~std::size_t{7};
    for (std::size_t i = 0; i < body; i += 8) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + i));
        const __m128i a = convert4(_mm256_castsi256_si128(v));
        const __m128i b = convert4(_mm256_extracti128_si256(v, 1));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(digits.data() + i), _mm256_set_m128i(b, a));
    }
    if (body < n)
        convert_batch_scalar(seg, values.subspan(body), digits.subspan(body));
}

void scramble_points_avx2(std::span<const std::uint32_t> values, std::uint32_t s259, std::uint32_t s11,
                          bool inverse, std::span<std::uint32_t> out)
{
    const std::uint32_t shift = inverse ? (259 - s259) % 259 : s259;
    const __m256i vshift = _mm256_set1_epi32(static_cast<int>(shift));
    const __m256i vkey = _mm256_set1_epi32(static_cast<int>(s11));
    const __m256i mask11 = _mm256_set1_epi32(2047);
    const __m256i top = _mm256_set1_epi32(258);
    const __m256i base = _mm256_set1_epi32(259);

    const std::size_t n = values.size();
    const std::size_t body = n & ~std::size_t{7};
    for (std::size_t i = 0; i < body; i += 8) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + i));
        __m256i root = _mm256_add_epi32(_mm256_srli_epi32(v, 11), vshift);
        root = _mm256_sub_epi32(root, _mm256_and_si256(_mm256_cmpgt_epi32(root, top), base));
        const __m256i affix = _mm256_xor_si256(_mm256_and_si256(v, mask11), vkey);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i),
                            _mm256_or_si256(_mm256_slli_epi32(root, 11), affix));
    }
    if (body < n)
        scramble_points_scalar(values.subspan(body), s259, s11, inverse, out.subspan(body));
}

} // namespace lcw::simd::detail
