#include "lcw/lfsr.hpp"

#include <string>

#include "lcw/error.hpp"

namespace lcw::prng {

Lfsr::Lfsr(unsigned width, unsigned tap)
    : width_(width), tap_(tap), mask_(width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1)
{
    if (width < 2 || width > 64 || tap < 1 || tap >= width)
        fail(errc::range_error, "bad LFSR shape x^" + std::to_string(width) + " + x^" + std::to_string(tap) + " + 1");
}

LfsrStep Lfsr::next(std::uint64_t state) const
{
    if (state == 0)
        fail(errc::zero_state, "LFSR state is all-zero");
    if ((state & ~mask_) != 0)
        fail(errc::range_error, "LFSR state wider than the register");
    const unsigned fb = static_cast<unsigned>(((state >> (tap_ - 1)) ^ (state >> (width_ - 1))) & 1);
    return {((state << 1) | fb) & mask_, fb};
}

std::uint64_t Lfsr::advance(std::uint64_t state, std::uint64_t n) const
{
    next(state);  // validation
    return Gf2Matrix::transition(*this).pow(n).apply(state);
}

LfsrDraw Lfsr::draw(std::uint64_t state, unsigned r) const
{
    if (r > 64)
        fail(errc::range_error, "at most 64 bits per draw");
    next(state);  // validation, also for r = 0
    LfsrDraw d{state, 0};
    for (unsigned i = 0; i < r; ++i) {
        const LfsrStep s = next(d.state);
        d.state = s.state;
        d.value = (d.value << 1) | s.bit;
    }
    return d;
}

Lfsr lfsr33() { return Lfsr(lfsr33_width, lfsr33_tap); }

LfsrStep lfsr_next(std::uint64_t state)
{
    static const Lfsr l = lfsr33();
    return l.next(state);
}

Gf2Matrix::Gf2Matrix(unsigned n) : n_(n)
{
    if (n == 0 || n > 64)
        fail(errc::range_error, "GF(2) matrix dimension must be in [1, 64]");
}

Gf2Matrix Gf2Matrix::identity(unsigned n)
{
    Gf2Matrix m(n);
    for (unsigned j = 0; j < n; ++j)
        m.cols_[j] = std::uint64_t{1} << j;
    return m;
}

Gf2Matrix Gf2Matrix::transition(const Lfsr& l)
{
    // The step is linear, so stepping each unit vector gives the columns.
    Gf2Matrix m(l.width());
    for (unsigned j = 0; j < l.width(); ++j)
        m.cols_[j] = l.next(std::uint64_t{1} << j).state;
    return m;
}

std::uint64_t Gf2Matrix::apply(std::uint64_t v) const noexcept
{
    std::uint64_t out = 0;
    for (unsigned j = 0; j < n_; ++j)
        if ((v >> j) & 1)
            out ^= cols_[j];
    return out;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const
{
    if (rhs.n_ != n_)
        fail(errc::range_error, "GF(2) matrix size mismatch");
    Gf2Matrix out(n_);
    for (unsigned j = 0; j < n_; ++j)
        out.cols_[j] = apply(rhs.cols_[j]);
    return out;
}

Gf2Matrix Gf2Matrix::pow(std::uint64_t e) const
{
    Gf2Matrix result = identity(n_);
    Gf2Matrix base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

} // namespace lcw::prng
