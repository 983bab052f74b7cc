#include "lcw/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <tuple>

#include "lcw/error.hpp"

namespace lcw::qu {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

void check_system(unsigned r, std::uint64_t n)
{
    if (n == 0)
        fail(errc::range_error, "target base must be positive");
    if (r > max_bits)
        fail(errc::range_error, "bit width above " + std::to_string(max_bits));
    if ((std::uint64_t{1} << r) < n)
        fail(errc::range_error, "2^r is smaller than the target base");
}

PartitionSolution make_solution(unsigned r, std::uint64_t n, std::uint64_t small, std::uint64_t m_small,
                                std::uint64_t large, std::uint64_t m_large)
{
    PartitionSolution s;
    s.r = r;
    s.n = n;
    if (small % 2 == 0) {
        s.x_even = small, s.m_even = m_small;
        s.x_odd = large, s.m_odd = m_large;
    } else {
        s.x_even = large, s.m_even = m_large;
        s.x_odd = small, s.m_odd = m_small;
    }
    set_symmetry(s);
    return s;
}

// floor division for possibly negative numerators
i128 floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// Inverse of a modulo m, gcd(a, m) = 1, m >= 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    if (m == 1)
        return 0;
    std::int64_t old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    return ((old_s % m) + m) % m;
}

} // namespace

bool divides_evenly(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
    return lo > 0 && hi % lo == 0;
}

void set_symmetry(PartitionSolution& s)
{
    s.symmetric_e = s.m_even >= 1 && divides_evenly(s.m_even - 1, s.m_odd);
    s.symmetric_o = s.m_odd >= 1 && divides_evenly(s.m_odd - 1, s.m_even);
}

std::vector<PartitionSolution> solve_partitions(unsigned r, std::uint64_t n, std::uint64_t max_dx)
{
    check_system(r, n);
    const u128 p = u128{1} << r;
    const std::uint64_t q = static_cast<std::uint64_t>(p / n);
    std::vector<PartitionSolution> out;
    // Sizes differ in parity, so the gap d is odd. With sizes a and a + d,
    // the larger class count is (2^r - N a) / d.
    for (std::uint64_t d = 1; d <= max_dx; d += 2) {
        const std::uint64_t ceil_q = q + (p % n != 0 ? 1 : 0);
        const std::uint64_t lo = ceil_q >= d ? ceil_q - d : 0;
        for (std::uint64_t a = lo; a <= q; ++a) {
            const u128 rest = p - u128{n} * a;
            if (rest % d != 0)
                continue;
            const u128 m_large = rest / d;
            if (m_large > n)
                continue;
            out.push_back(make_solution(r, n, a, n - static_cast<std::uint64_t>(m_large), a + d,
                                        static_cast<std::uint64_t>(m_large)));
        }
    }
    return out;
}

std::vector<PartitionSolution> symmetric_solutions(unsigned r, std::uint64_t n)
{
    auto all = solve_partitions(r, n, 1);
    std::erase_if(all, [](const PartitionSolution& s) { return !s.symmetric(); });
    return all;
}

std::optional<PartitionSolution> closest_solution(unsigned r, std::uint64_t n, std::uint64_t m_even)
{
    check_system(r, n);
    if (m_even > n)
        fail(errc::range_error, "class count above the target base");
    const u128 p = u128{1} << r;
    const std::uint64_t m_odd = n - m_even;

    PartitionSolution s;
    s.r = r;
    s.n = n;
    s.m_even = m_even;
    s.m_odd = m_odd;
    if (m_odd == 0 || m_even == 0) {
        // One class carries everything; the empty class takes a neighbour size.
        if (p % n != 0)
            return std::nullopt;
        const std::uint64_t x = static_cast<std::uint64_t>(p / n);
        const bool even = x % 2 == 0;
        if (even != (m_odd == 0))
            return std::nullopt;
        s.x_even = even ? x : x + 1;
        s.x_odd = even ? x + 1 : x;
        set_symmetry(s);
        return s;
    }

    const std::uint64_t g = std::gcd(m_even, m_odd);
    if (p % g != 0)
        return std::nullopt;
    const i128 a = m_even / g, b = m_odd / g, pp = static_cast<i128>(p / g);
    // x_even = x0 + b k, x_odd = (pp - a x_even) / b.
    const i128 x0 = static_cast<i128>(static_cast<u128>(pp % b) *
                                      static_cast<u128>(inverse_mod(static_cast<std::int64_t>(a % b),
                                                                    static_cast<std::int64_t>(b))) %
                                      static_cast<u128>(b));
    const i128 k_mid = floor_div(floor_div(pp, a + b) - x0, b);
    std::optional<PartitionSolution> best;
    i128 best_dx = 0;
    for (i128 k = k_mid - 3; k <= k_mid + 4; ++k) {
        const i128 xe = x0 + b * k;
        if (xe < 0)
            continue;
        const i128 rest = pp - a * xe;
        if (rest < 0 || rest % b != 0)
            continue;
        const i128 xo = rest / b;
        if (xe % 2 != 0 || xo % 2 != 1)
            continue;
        const i128 dx = xe > xo ? xe - xo : xo - xe;
        if (!best || dx < best_dx) {
            s.x_even = static_cast<std::uint64_t>(xe);
            s.x_odd = static_cast<std::uint64_t>(xo);
            set_symmetry(s);
            best = s;
            best_dx = dx;
        }
    }
    return best;
}

std::vector<PartitionSolution> delta_m_solutions(unsigned r, std::uint64_t n)
{
    std::vector<PartitionSolution> out;
    if (n % 2 == 0)
        return out;
    for (std::uint64_t m_even : {(n - 1) / 2, (n + 1) / 2}) {
        auto s = closest_solution(r, n, m_even);
        if (s && 2 * static_cast<std::uint64_t>(std::llabs(s->dx())) < n)
            out.push_back(*s);
    }
    return out;
}

Unbalance unbalance(const PartitionSolution& s)
{
    const long double p = std::ldexp(1.0L, static_cast<int>(s.r));
    std::uint64_t hi = std::max(s.x_even, s.x_odd), lo = std::min(s.x_even, s.x_odd);
    // Empty classes do not shape the distribution.
    if (s.m_even == 0)
        hi = lo = s.x_odd;
    else if (s.m_odd == 0)
        hi = lo = s.x_even;
    // N x - 2^r is exact in 128 bits; scale afterwards.
    auto dev = [&](std::uint64_t x) {
        const i128 diff = static_cast<i128>(u128{s.n} * x) - static_cast<i128>(u128{1} << s.r);
        return static_cast<long double>(diff) / p;
    };
    return {dev(hi), dev(lo)};
}

std::string format_unbalance(long double f)
{
    char buf[64];
    const long double a = std::fabs(f);
    if (a == 0.0L)
        std::snprintf(buf, sizeof buf, "0");
    else if (a >= 1e-4L)
        std::snprintf(buf, sizeof buf, "%+.3Lf%%", f * 100.0L);
    else if (a >= 1e-7L)
        std::snprintf(buf, sizeof buf, "%+.3Lfppm", f * 1e6L);
    else
        std::snprintf(buf, sizeof buf, "%+.3LfppB", f * 1e9L);
    return buf;
}

BinMap::BinMap(const PartitionSolution& s) : sol_(s)
{
    check_system(s.r, s.n);
    if (s.m_even + s.m_odd != s.n ||
        u128{s.m_even} * s.x_even + u128{s.m_odd} * s.x_odd != (u128{1} << s.r))
        fail(errc::range_error, "not a solution of the partition system");
    leaf_class_ = s.m_even < s.m_odd ? BinClass::even : BinClass::odd;
    const bool even_leaf = leaf_class_ == BinClass::even;
    const std::uint64_t m_leaf = even_leaf ? s.m_even : s.m_odd;
    const std::uint64_t x_leaf = even_leaf ? s.x_even : s.x_odd;
    seg_.left_count = (m_leaf + 1) / 2;
    seg_.right_count = m_leaf / 2;
    seg_.left_size = seg_.right_size = x_leaf;
    seg_.core_count = even_leaf ? s.m_odd : s.m_even;
    seg_.core_size = even_leaf ? s.x_odd : s.x_even;
}

std::uint64_t BinMap::digit_of(std::uint64_t v) const
{
    if (sol_.r < 64 && v >= (std::uint64_t{1} << sol_.r))
        fail(errc::range_error, "value wider than r bits");
    const std::uint64_t left_total = seg_.left_count * seg_.left_size;
    if (v < left_total)
        return v / seg_.left_size;
    v -= left_total;
    const std::uint64_t core_total = seg_.core_count * seg_.core_size;
    if (v < core_total)
        return seg_.left_count + v / seg_.core_size;
    v -= core_total;
    return seg_.left_count + seg_.core_count + v / seg_.right_size;
}

std::uint64_t BinMap::preimage_size(std::uint64_t d) const
{
    if (d >= sol_.n)
        fail(errc::range_error, "digit outside the target base");
    if (d < seg_.left_count)
        return seg_.left_size;
    if (d < seg_.left_count + seg_.core_count)
        return seg_.core_size;
    return seg_.right_size;
}

std::uint64_t BinMap::first_value(std::uint64_t d) const
{
    if (d >= sol_.n)
        fail(errc::range_error, "digit outside the target base");
    if (d < seg_.left_count)
        return d * seg_.left_size;
    const std::uint64_t left_total = seg_.left_count * seg_.left_size;
    if (d < seg_.left_count + seg_.core_count)
        return left_total + (d - seg_.left_count) * seg_.core_size;
    return left_total + seg_.core_count * seg_.core_size +
           (d - seg_.left_count - seg_.core_count) * seg_.right_size;
}

std::string BinMap::describe() const
{
    auto seg = [](std::uint64_t c, std::uint64_t x) { return std::to_string(c) + "x" + std::to_string(x); };
    return "leaf " + seg(seg_.left_count, seg_.left_size) + " | core " + seg(seg_.core_count, seg_.core_size) +
           " | leaf " + seg(seg_.right_count, seg_.right_size);
}

BinMap build_bin_map(const PartitionSolution& s) { return BinMap(s); }

std::uint64_t convert(std::uint64_t value, const BinMap& map) { return map.digit_of(value); }

void convert_batch(const BinMap& map, std::span<const std::uint32_t> values, std::span<std::uint32_t> digits)
{
    if (map.r() > 31)
        fail(errc::range_error, "batch conversion needs r <= 31");
    if (digits.size() < values.size())
        fail(errc::range_error, "digit buffer too small");
    const std::uint64_t limit = std::uint64_t{1} << map.r();
    for (std::uint32_t v : values)
        if (v >= limit)
            fail(errc::range_error, "value wider than r bits");
    simd::convert_batch(map.segments(), values, digits);
}

BinMap bubble_map(std::uint64_t n, unsigned r)
{
    if (n == 0 || r > 31 || n > (std::uint64_t{1} << r))
        fail(errc::range_error, "page size must lie in [1, 2^r]");
    const auto sols = solve_partitions(r, n, 1);
    if (sols.empty())
        fail(errc::no_solution, "no partition of 2^" + std::to_string(r) + " over " + std::to_string(n));
    // Prefer a solution that uses both classes.
    for (const auto& s : sols)
        if (s.m_even > 0 && s.m_odd > 0)
            return BinMap(s);
    return BinMap(sols.front());
}

} // namespace lcw::qu
