#pragma once

// Fibonacci LFSR over the trinomial x^w + x^t + 1, plus GF(2) jump-ahead.

#include <array>
#include <cstdint>

namespace lcw::prng {

struct LfsrStep {
    std::uint64_t state;
    unsigned bit;  // newly shifted-in bit
};

struct LfsrDraw {
    std::uint64_t state;
    std::uint64_t value;
};

class Lfsr {
public:
    // Throws range_error unless 2 <= width <= 64 and 1 <= tap < width.
    Lfsr(unsigned width, unsigned tap);

    unsigned width() const noexcept { return width_; }
    unsigned tap() const noexcept { return tap_; }
    std::uint64_t mask() const noexcept { return mask_; }
    std::uint64_t period() const noexcept { return mask_; }  // 2^w - 1 when primitive

    // s[0] takes s[tap-1] xor s[width-1]. Throws zero_state on 0 and
    // range_error when the state does not fit the register.
    LfsrStep next(std::uint64_t state) const;

    // Step n times with a matrix power; O(w^2 log n) word ops.
    std::uint64_t advance(std::uint64_t state, std::uint64_t n) const;

    // r <= 64 successive output bits, first bit most significant.
    LfsrDraw draw(std::uint64_t state, unsigned r) const;

private:
    unsigned width_;
    unsigned tap_;
    std::uint64_t mask_;
};

// IEEE 802.3 side-stream polynomial used by the scrambler.
inline constexpr unsigned lfsr33_width = 33;
inline constexpr unsigned lfsr33_tap = 13;

Lfsr lfsr33();

// Functional single step of the 33-bit generator.
LfsrStep lfsr_next(std::uint64_t state);

// Square matrix over GF(2), dimension <= 64, stored as columns.
class Gf2Matrix {
public:
    explicit Gf2Matrix(unsigned n);

    static Gf2Matrix identity(unsigned n);
    // Columns are the images of the unit vectors under one step.
    static Gf2Matrix transition(const Lfsr& l);

    unsigned size() const noexcept { return n_; }
    std::uint64_t column(unsigned j) const { return cols_.at(j); }
    void set_column(unsigned j, std::uint64_t v) { cols_.at(j) = v; }

    std::uint64_t apply(std::uint64_t v) const noexcept;
    Gf2Matrix operator*(const Gf2Matrix& rhs) const;
    bool operator==(const Gf2Matrix& rhs) const = default;

    Gf2Matrix pow(std::uint64_t e) const;

private:
    unsigned n_;
    std::array<std::uint64_t, 64> cols_{};
};

} // namespace lcw::prng
