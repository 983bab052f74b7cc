#pragma once

// Composite transport code points: a base-259 root and an 11-bit affix,
// plus an inversion morpheme carried beside the numeric value.

#include <cstdint>

namespace lcw::qu {

inline constexpr std::uint32_t root_base = 259;
inline constexpr unsigned affix_bits = 11;
inline constexpr std::uint32_t affix_count = 1u << affix_bits;
inline constexpr std::uint32_t code_points = root_base * affix_count;  // 530,432

struct CodePoint {
    std::uint32_t value = 0;  // root * 2^11 + affix
    bool inversion = false;

    std::uint32_t root() const noexcept { return value >> affix_bits; }
    std::uint32_t affix() const noexcept { return value & (affix_count - 1); }

    friend bool operator==(const CodePoint&, const CodePoint&) = default;
};

struct PointKey {
    std::uint32_t s259 = 0;
    std::uint32_t s11 = 0;
    bool s1 = false;
};

struct UnpackedPoint {
    std::uint32_t root;
    std::uint32_t affix;
    bool inversion;

    friend bool operator==(const UnpackedPoint&, const UnpackedPoint&) = default;
};

// Throws range_error for root >= 259 or affix >= 2^11.
CodePoint pack_point(std::uint32_t root, std::uint32_t affix, bool inversion = false);
UnpackedPoint unpack_point(const CodePoint& p);
// Throws range_error for value >= N_Q.
CodePoint point_from_value(std::uint32_t value, bool inversion = false);

// root + s259 mod 259, affix xor s11, inversion xor s1.
CodePoint scramble_point(const CodePoint& p, const PointKey& key);
CodePoint descramble_point(const CodePoint& p, const PointKey& key);

// Throws range_error for s259 >= 259 or s11 >= 2^11.
void check_key(const PointKey& key);

} // namespace lcw::qu
