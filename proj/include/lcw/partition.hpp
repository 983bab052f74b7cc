#pragma once

// Base-2^r -> base-N quasi-uniform conversion: the bin partition system
//   m_even + m_odd = N,  m_even x_even + m_odd x_odd = 2^r,
// with x_even even and x_odd odd, and the induced digit map.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcw/simd/kernels.hpp"

namespace lcw::qu {

inline constexpr unsigned max_bits = 62;

struct PartitionSolution {
    unsigned r = 0;
    std::uint64_t n = 0;
    std::uint64_t m_even = 0, m_odd = 0;
    std::uint64_t x_even = 0, x_odd = 0;
    bool symmetric_e = false;
    bool symmetric_o = false;

    bool symmetric() const { return symmetric_e || symmetric_o; }
    // x_even - x_odd
    std::int64_t dx() const { return static_cast<std::int64_t>(x_even) - static_cast<std::int64_t>(x_odd); }

    friend bool operator==(const PartitionSolution&, const PartitionSolution&) = default;
};

// max{a, b} mod min{a, b} == 0 with min > 0.
bool divides_evenly(std::uint64_t a, std::uint64_t b);
void set_symmetry(PartitionSolution& s);

// Every solution with |x_even - x_odd| <= max_dx, ordered by |dx| then by the
// smaller bin size. Throws range_error unless N >= 1, r <= 62 and 2^r >= N.
std::vector<PartitionSolution> solve_partitions(unsigned r, std::uint64_t n, std::uint64_t max_dx = 1);

// Solutions with |dx| = 1 whose class counts meet criterion e or o.
std::vector<PartitionSolution> symmetric_solutions(unsigned r, std::uint64_t n);

// For fixed class counts, the solution minimising |x_even - x_odd|.
std::optional<PartitionSolution> closest_solution(unsigned r, std::uint64_t n, std::uint64_t m_even);

// |m_even - m_odd| = 1 branch: closest solutions kept when 2|dx| < N.
std::vector<PartitionSolution> delta_m_solutions(unsigned r, std::uint64_t n);

struct Unbalance {
    long double positive;  // N max(x) / 2^r - 1
    long double negative;  // N min(x) / 2^r - 1
};

Unbalance unbalance(const PartitionSolution& s);

// "+3.543%", "-14.9ppm", "+230ppB" depending on magnitude.
std::string format_unbalance(long double fraction);

enum class BinClass : std::uint8_t { even, odd };

class BinMap {
public:
    explicit BinMap(const PartitionSolution& s);

    const PartitionSolution& solution() const noexcept { return sol_; }
    unsigned r() const noexcept { return sol_.r; }
    std::uint64_t n() const noexcept { return sol_.n; }

    // Minority-count class split over two leaves, odd remainder left.
    BinClass leaf_class() const noexcept { return leaf_class_; }
    const simd::BinSegments& segments() const noexcept { return seg_; }

    std::uint64_t digit_of(std::uint64_t value) const;
    std::uint64_t preimage_size(std::uint64_t digit) const;
    std::uint64_t first_value(std::uint64_t digit) const;

    std::string describe() const;

private:
    PartitionSolution sol_;
    BinClass leaf_class_;
    simd::BinSegments seg_;
};

BinMap build_bin_map(const PartitionSolution& s);

// Throws range_error when value >= 2^r.
std::uint64_t convert(std::uint64_t value, const BinMap& map);

// Batch convert for r <= 31 through the active SIMD backend.
void convert_batch(const BinMap& map, std::span<const std::uint32_t> values, std::span<std::uint32_t> digits);

// 32 cipher points over N plain words (r = 5). Throws no_solution when the
// parity constraint admits none and range_error for N outside [1, 32].
BinMap bubble_map(std::uint64_t n, unsigned r = 5);

} // namespace lcw::qu
