#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace lcw::pam3 {

inline constexpr int image_symbols = 12;

struct RunMetrics {
    int head_run = 0;   // constant-symbol run at the head, in symbols
    int tail_run = 0;
    int sum = 0;        // signed symbol sum
    int transits = 0;   // adjacent unequal pairs
};

// Symbols are -1, 0, +1.
inline RunMetrics run_metrics(std::span<const std::int8_t> s)
{
    RunMetrics m;
    if (s.empty())
        return m;
    const int n = static_cast<int>(s.size());
    for (int v : s)
        m.sum += v;
    for (int i = 1; i < n; ++i)
        m.transits += s[i] != s[i - 1];
    m.head_run = 1;
    while (m.head_run < n && s[m.head_run] == s[0])
        ++m.head_run;
    m.tail_run = 1;
    while (m.tail_run < n && s[n - 1 - m.tail_run] == s[n - 1])
        ++m.tail_run;
    return m;
}

// Base-3 digits, most significant first, digit d -> symbol d - 1.
template <std::size_t N>
std::array<std::int8_t, N> decode_index(std::uint32_t index)
{
    std::array<std::int8_t, N> s{};
    for (std::size_t i = N; i-- > 0;) {
        s[i] = static_cast<std::int8_t>(index % 3) - 1;
        index /= 3;
    }
    return s;
}

} // namespace lcw::pam3
