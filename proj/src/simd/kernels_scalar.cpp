// Reference kernels: plain per-element loops, no bit tricks.

#include "lcw/pam3_image.hpp"
#include "lcw/simd/kernels.hpp"

namespace lcw::simd::detail {

void classify_jk_scalar(std::uint32_t first, unsigned length, std::span<std::int8_t> bias,
                        std::span<std::uint8_t> cls)
{
    for (std::size_t i = 0; i < bias.size(); ++i) {
        const std::uint32_t code = first + static_cast<std::uint32_t>(i);
        bool high = false;  // initial level L
        bool prev_k = false;
        bool kk = false;
        int sum = 0;
        for (unsigned pos = 0; pos < length; ++pos) {
            const bool k = (code >> pos) & 1;
            if (k) {
                kk = kk || prev_k;
                sum += high ? 1 : -1;
            } else {
                high = !high;
            }
            prev_k = k;
        }
        const bool first_k = code & 1;
        const bool last_k = (code >> (length - 1)) & 1;
        bias[i] = static_cast<std::int8_t>(sum);
        if (kk)
            cls[i] = jk_invalid;
        else
            cls[i] = static_cast<std::uint8_t>(1 + (first_k ? 2 : 0) + (last_k ? 1 : 0));
    }
}

std::uint64_t pam3_census_scalar(const Pam3Limits& limits, std::uint32_t shard_begin, std::uint32_t shard_end)
{
    std::uint64_t accepted = 0;
    for (std::uint32_t idx = shard_begin * pam3_half_count; idx < shard_end * pam3_half_count; ++idx) {
        const auto s = pam3::decode_index<12>(idx);
        const auto m = pam3::run_metrics(s);
        const int dc = m.sum < 0 ? -m.sum : m.sum;
        accepted += m.head_run <= limits.max_head_droop && m.tail_run <= limits.max_tail_droop &&
                    dc <= limits.max_abs_dc && m.transits >= limits.min_transits;
    }
    return accepted;
}

void convert_batch_scalar(const BinSegments& seg, std::span<const std::uint32_t> values,
                          std::span<std::uint32_t> digits)
{
    const std::uint64_t left_total = seg.left_count * seg.left_size;
    const std::uint64_t core_total = seg.core_count * seg.core_size;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t v = values[i];
        std::uint64_t d;
        if (v < left_total) {
            d = v / seg.left_size;
        } else if (v - left_total < core_total) {
            d = seg.left_count + (v - left_total) / seg.core_size;
        } else {
            d = seg.left_count + seg.core_count + (v - left_total - core_total) / seg.right_size;
        }
        digits[i] = static_cast<std::uint32_t>(d);
    }
}

void scramble_points_scalar(std::span<const std::uint32_t> values, std::uint32_t s259, std::uint32_t s11,
                            bool inverse, std::span<std::uint32_t> out)
{
    const std::uint32_t shift = inverse ? 259 - s259 : s259;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint32_t root = values[i] >> 11;
        const std::uint32_t affix = values[i] & 2047;
        out[i] = ((root + shift) % 259) << 11 | (affix ^ s11);
    }
}

} // namespace lcw::simd::detail
