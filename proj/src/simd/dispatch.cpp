#include "lcw/simd/kernels.hpp"

#include <atomic>

#include "lcw/error.hpp"

namespace lcw::simd {

namespace {

bool detect_avx2() noexcept
{
#if defined(LCW_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt") && __builtin_cpu_supports("bmi2");
#else
    return false;
#endif
}

Backend best() noexcept { return avx2_supported() ? Backend::avx2 : Backend::scalar; }

std::atomic<int> forced{-1};

void require(Backend b)
{
    if (b == Backend::avx2 && !avx2_supported())
        fail(errc::usage_error, "AVX2 backend not available on this CPU");
}

} // namespace

bool avx2_supported() noexcept
{
    static const bool ok = detect_avx2();
    return ok;
}

Backend active_backend() noexcept
{
    const int f = forced.load(std::memory_order_relaxed);
    return f < 0 ? best() : static_cast<Backend>(f);
}

void set_backend(Backend b)
{
    require(b);
    forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() noexcept { forced.store(-1, std::memory_order_relaxed); }

std::string_view backend_name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

void classify_jk(std::uint32_t first, unsigned length, std::span<std::int8_t> bias, std::span<std::uint8_t> cls,
                 Backend b)
{
    if (length < 1 || length > 30)
        fail(errc::range_error, "JK image length must be in [1, 30]");
    if (cls.size() != bias.size())
        fail(errc::range_error, "output spans differ in size");
    if (std::uint64_t{first} + bias.size() > (std::uint64_t{1} << length))
        fail(errc::range_error, "code range exceeds 2^length");
    require(b);
    if (b == Backend::avx2)
        detail::classify_jk_avx2(first, length, bias, cls);
    else
        detail::classify_jk_scalar(first, length, bias, cls);
}

void classify_jk(std::uint32_t first, unsigned length, std::span<std::int8_t> bias, std::span<std::uint8_t> cls)
{
    classify_jk(first, length, bias, cls, active_backend());
}

std::uint64_t pam3_census(const Pam3Limits& limits, std::uint32_t shard_begin, std::uint32_t shard_end, Backend b)
{
    if (shard_begin > shard_end || shard_end > pam3_half_count)
        fail(errc::range_error, "census shard range outside [0, 729]");
    require(b);
    if (b == Backend::avx2)
        return detail::pam3_census_avx2(limits, shard_begin, shard_end);
    return detail::pam3_census_scalar(limits, shard_begin, shard_end);
}

std::uint64_t pam3_census(const Pam3Limits& limits, std::uint32_t shard_begin, std::uint32_t shard_end)
{
    return pam3_census(limits, shard_begin, shard_end, active_backend());
}

void convert_batch(const BinSegments& seg, std::span<const std::uint32_t> values, std::span<std::uint32_t> digits,
                   Backend b)
{
    if (digits.size() < values.size())
        fail(errc::range_error, "digit buffer too small");
    require(b);
    if (b == Backend::avx2)
        detail::convert_batch_avx2(seg, values, digits);
    else
        detail::convert_batch_scalar(seg, values, digits);
}

void convert_batch(const BinSegments& seg, std::span<const std::uint32_t> values, std::span<std::uint32_t> digits)
{
    convert_batch(seg, values, digits, active_backend());
}

void scramble_points(std::span<const std::uint32_t> values, std::uint32_t s259, std::uint32_t s11, bool inverse,
                     std::span<std::uint32_t> out, Backend b)
{
    if (out.size() < values.size())
        fail(errc::range_error, "output buffer too small");
    if (s259 >= 259 || s11 >= 2048)
        fail(errc::range_error, "scrambler key out of range");
    for (std::uint32_t v : values)
        if (v >= 259u * 2048u)
            fail(errc::range_error, "code point outside [0, N_Q)");
    require(b);
    if (b == Backend::avx2)
        detail::scramble_points_avx2(values, s259, s11, inverse, out);
    else
        detail::scramble_points_scalar(values, s259, s11, inverse, out);
}

void scramble_points(std::span<const std::uint32_t> values, std::uint32_t s259, std::uint32_t s11, bool inverse,
                     std::span<std::uint32_t> out)
{
    scramble_points(values, s259, s11, inverse, out, active_backend());
}

#if !defined(LCW_HAVE_AVX2_TU)
namespace detail {
// Unreachable: require() rejects avx2 when the TU is absent.
void classify_jk_avx2(std::uint32_t f, unsigned l, std::span<std::int8_t> b, std::span<std::uint8_t> c)
{
    classify_jk_scalar(f, l, b, c);
}
std::uint64_t pam3_census_avx2(const Pam3Limits& l, std::uint32_t a, std::uint32_t b)
{
    return pam3_census_scalar(l, a, b);
}
void convert_batch_avx2(const BinSegments& s, std::span<const std::uint32_t> v, std::span<std::uint32_t> d)
{
    convert_batch_scalar(s, v, d);
}
void scramble_points_avx2(std::span<const std::uint32_t> v, std::uint32_t a, std::uint32_t b, bool i,
                          std::span<std::uint32_t> o)
{
    scramble_points_scalar(v, a, b, i, o);
}
} // namespace detail
#endif

} // namespace lcw::simd
