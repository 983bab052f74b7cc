#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on
// x86-64, an AVX2 variant. The dispatching overloads pick the active backend
// at runtime; the explicit-backend overloads exist for equivalence tests.

#include <cstdint>
#include <span>
#include <string_view>

namespace lcw::simd {

enum class Backend { scalar, avx2 };

bool avx2_supported() noexcept;

// Best supported backend unless overridden with set_backend().
Backend active_backend() noexcept;

// Throws errc::usage_error when the backend is not supported on this CPU.
void set_backend(Backend b);
void reset_backend() noexcept;

std::string_view backend_name(Backend b) noexcept;

// --- JK image classification ------------------------------------------------
//
// Code bit i (LSB first) set means letter i is K. For codes
// [first, first + bias.size()) of the given length (1..30 letters) write the
// DC bias from initial level L and a class:
//   0 = contains KK, 1 = J..J, 2 = J..K, 3 = K..J, 4 = K..K (no inner KK).
// Bias is unspecified for class 0.
enum : std::uint8_t { jk_invalid = 0, jk_mask_jj = 1, jk_mask_jk = 2, jk_mask_kj = 3, jk_mask_kk = 4 };

void classify_jk(std::uint32_t first, unsigned length, std::span<std::int8_t> bias,
                 std::span<std::uint8_t> cls, Backend b);
void classify_jk(std::uint32_t first, unsigned length, std::span<std::int8_t> bias,
                 std::span<std::uint8_t> cls);

// --- PAM-3 twelve-symbol image census ---------------------------------------
//
// Image index = 3^12 base-3 number, most significant digit first, digit
// 0/1/2 = symbol -1/0/+1. Images are processed in shards of 3^6 by their
// leading six symbols: shard s covers indices [s * 729, (s + 1) * 729).
inline constexpr std::uint32_t pam3_half_count = 729;
inline constexpr std::uint32_t pam3_image_count = 531441;

struct Pam3Limits {
    int max_head_droop;  // symbols
    int max_tail_droop;
    int max_abs_dc;      // |sum of symbols|
    int min_transits;
};

std::uint64_t pam3_census(const Pam3Limits& limits, std::uint32_t shard_begin,
                          std::uint32_t shard_end, Backend b);
std::uint64_t pam3_census(const Pam3Limits& limits, std::uint32_t shard_begin,
                          std::uint32_t shard_end);

// --- Quasi-uniform bin map batch conversion ---------------------------------
//
// Three contiguous segments of equal-size bins: left leaf, core, right leaf.
struct BinSegments {
    std::uint64_t left_count, left_size;
    std::uint64_t core_count, core_size;
    std::uint64_t right_count, right_size;
};

// values must be below 2^31 and below the segment total.
void convert_batch(const BinSegments& seg, std::span<const std::uint32_t> values,
                   std::span<std::uint32_t> digits, Backend b);
void convert_batch(const BinSegments& seg, std::span<const std::uint32_t> values,
                   std::span<std::uint32_t> digits);

// --- Composite code point scrambling ----------------------------------------
//
// value = root * 2^11 + affix, root < 259. Forward: root + s259 mod 259,
// affix xor s11. Inverse when `inverse` is set.
void scramble_points(std::span<const std::uint32_t> values, std::uint32_t s259, std::uint32_t s11,
                     bool inverse, std::span<std::uint32_t> out, Backend b);
void scramble_points(std::span<const std::uint32_t> values, std::uint32_t s259, std::uint32_t s11,
                     bool inverse, std::span<std::uint32_t> out);

namespace detail {
// Per-backend entry points; kernels_avx2.cpp is only built on x86-64.
void classify_jk_scalar(std::uint32_t, unsigned, std::span<std::int8_t>, std::span<std::uint8_t>);
void classify_jk_avx2(std::uint32_t, unsigned, std::span<std::int8_t>, std::span<std::uint8_t>);
std::uint64_t pam3_census_scalar(const Pam3Limits&, std::uint32_t, std::uint32_t);
std::uint64_t pam3_census_avx2(const Pam3Limits&, std::uint32_t, std::uint32_t);
void convert_batch_scalar(const BinSegments&, std::span<const std::uint32_t>, std::span<std::uint32_t>);
void convert_batch_avx2(const BinSegments&, std::span<const std::uint32_t>, std::span<std::uint32_t>);
void scramble_points_scalar(std::span<const std::uint32_t>, std::uint32_t, std::uint32_t, bool,
                            std::span<std::uint32_t>);
void scramble_points_avx2(std::span<const std::uint32_t>, std::uint32_t, std::uint32_t, bool,
                          std::span<std::uint32_t>);
} // namespace detail

} // namespace lcw::simd
