#include "lcw/echo_mux.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "lcw/code_point.hpp"
#include "lcw/error.hpp"
#include "lcw/simd/kernels.hpp"

namespace lcw::echo {

using boost::multiprecision::cpp_int;

PoolArithmetic pool_arithmetic()
{
    PoolArithmetic p{};
    p.native = 2 * 262144ull;  // 8^6
    p.forced = 12 * 512ull;    // 8^3
    p.total = p.native + p.forced;
    p.n_q = std::uint64_t{qu::root_base} * qu::affix_count;
    p.image_space = 531441;
    p.slack = p.image_space - p.n_q;
    return p;
}

namespace {

template <std::size_t N>
std::uint32_t octal_value(const std::array<std::uint8_t, N>& digits)
{
    std::uint32_t v = 0;
    for (std::size_t i = N; i-- > 0;) {
        if (digits[i] > 7)
            fail(errc::range_error, "octal digit above 7");
        v = v * 8 + digits[i];
    }
    return v;
}

template <std::size_t N>
std::array<std::uint8_t, N> octal_digits(std::uint32_t v)
{
    std::array<std::uint8_t, N> d{};
    for (std::size_t i = 0; i < N; ++i) {
        d[i] = static_cast<std::uint8_t>(v % 8);
        v /= 8;
    }
    return d;
}

} // namespace

std::uint32_t pack_native(const NativeSample& s)
{
    return (s.aux ? 262144u : 0u) + octal_value(s.digits);
}

std::uint32_t pack_forced(const ForcedSample& s)
{
    if (s.position >= group_words)
        fail(errc::range_error, "event position above 11");
    return native_pool + s.position * 512u + octal_value(s.digits);
}

Sample unpack_sample(std::uint32_t value)
{
    if (value >= pool_total)
        fail(errc::range_error, "code point " + std::to_string(value) + " outside [0, N_Q)");
    if (value < native_pool)
        return NativeSample{value >= 262144u, octal_digits<6>(value % 262144u)};
    const std::uint32_t off = value - native_pool;
    return ForcedSample{static_cast<std::uint8_t>(off / 512u), octal_digits<3>(off % 512u)};
}

bool round_fits(std::uint64_t n_c, std::uint64_t n_e, std::uint64_t e, unsigned n)
{
    return cpp_int(e) * boost::multiprecision::pow(cpp_int(n_c), n) <= boost::multiprecision::pow(cpp_int(n_e), n);
}

unsigned schedule_round(std::uint64_t n_c, std::uint64_t n_e, std::uint64_t e)
{
    if (n_c < 2 || e < 2)
        fail(errc::range_error, "need N_C >= 2 and E > 1");
    if (n_e <= n_c)
        fail(errc::infeasible, "no surplus: N_E <= N_C");
    // Float estimate, then settle exactly.
    auto n = static_cast<unsigned>(std::max(1.0, std::floor(std::log(static_cast<double>(e)) /
                                                            std::log(static_cast<double>(n_e) / n_c))));
    while (n > 1 && round_fits(n_c, n_e, e, n - 1))
        --n;
    while (!round_fits(n_c, n_e, e, n))
        ++n;
    return n;
}

void SuperGroup::place_delimiter(unsigned slot)
{
    if (slot >= group_words)
        fail(errc::range_error, "slot outside the super group");
    if (slot >= half_words)
        fail(errc::conflict, "delimiters belong to the even half");
    if (slots_[slot] != SlotUse::free)
        fail(errc::conflict, "slot " + std::to_string(slot) + " already used");
    slots_[slot] = SlotUse::delimiter;
}

Placement SuperGroup::place_event(unsigned position, const EventConfig& cfg)
{
    const EventResolution res = event_resolution(cfg);
    if (position >= res.positions)
        fail(errc::range_error, "event position " + std::to_string(position) + " outside 0.." +
                                    std::to_string(res.positions - 1));
    if (event_)
        fail(errc::conflict, "odd half already carries a forced echo");
    event_ = position;
    for (unsigned i = half_words; i < group_words; ++i)
        slots_[i] = SlotUse::forced_echo;
    return Placement{ForcedSample{static_cast<std::uint8_t>(position), {}}, half_words, group_words - 1};
}

EventResolution event_resolution(const EventConfig& cfg)
{
    if (cfg.mii_positions)
        return {9, 40.0, 20.0, 60};
    return {12, 30.0, 15.0, 60};
}

MockRound mock_round(std::uint64_t e)
{
    if (e == 0 || !std::has_single_bit(e))
        fail(errc::range_error, "E must be a power of two");
    return {e, static_cast<unsigned>(std::countr_zero(e)), 1};
}

EchoArea echo_area(Framing f)
{
    return f == Framing::preamble_sfd ? EchoArea{64, 48} : EchoArea{96, 80};
}

EchoArea echo_area_per_frame()
{
    const EchoArea a = echo_area(Framing::preamble_sfd), b = echo_area(Framing::ifg);
    return {a.gross + b.gross, a.net + b.net};
}

Pam3Image image_of(std::uint32_t index)
{
    if (index >= simd::pam3_image_count)
        fail(errc::range_error, "image index outside 9^6");
    Pam3Image img;
    img.symbols = pam3::decode_index<12>(index);
    img.metrics = pam3::run_metrics(img.symbols);
    return img;
}

namespace {

simd::Pam3Limits limits_of(const CensusThresholds& t)
{
    if (t.dc_multiplier < 1)
        fail(errc::range_error, "dc multiplier must be positive");
    simd::Pam3Limits l{};
    l.max_head_droop = t.max_head_droop.value_or(pam3::image_symbols);
    l.max_tail_droop = t.max_tail_droop.value_or(pam3::image_symbols);
    l.max_abs_dc = t.dc_bound ? (*t.dc_bound < 0 ? -1 : std::min(*t.dc_bound * t.dc_multiplier, pam3::image_symbols))
                            : pam3::image_symbols;
    l.min_transits = t.min_transits;
    return l;
}

constexpr int hist_dim_run = 12, hist_dim_dc = 13, hist_dim_tr = 12;

std::size_t hist_index(int head, int tail, int dc, int tr)
{
    return ((static_cast<std::size_t>(head - 1) * hist_dim_run + (tail - 1)) * hist_dim_dc + dc) * hist_dim_tr + tr;
}

} // namespace

std::uint64_t image_filter_census(const CensusThresholds& t, unsigned jobs)
{
    const simd::Pam3Limits l = limits_of(t);
    const std::uint32_t shards = simd::pam3_half_count;
    jobs = std::clamp(jobs, 1u, 64u);
    if (jobs == 1)
        return simd::pam3_census(l, 0, shards);
    std::vector<std::uint64_t> part(jobs, 0);
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        const std::uint32_t lo = shards * j / jobs, hi = shards * (j + 1) / jobs;
        pool.emplace_back([&part, &l, j, lo, hi] { part[j] = simd::pam3_census(l, lo, hi); });
    }
    for (auto& th : pool)
        th.join();
    std::uint64_t sum = 0;
    for (auto v : part)
        sum += v;
    return sum;
}

CensusHistogram::CensusHistogram() : cells_(hist_dim_run * hist_dim_run * hist_dim_dc * hist_dim_tr, 0)
{
    for (std::uint32_t i = 0; i < simd::pam3_image_count; ++i) {
        const auto s = pam3::decode_index<12>(i);
        const auto m = pam3::run_metrics(s);
        ++cells_[hist_index(m.head_run, m.tail_run, std::abs(m.sum), m.transits)];
        ++total_;
    }
}

std::uint64_t CensusHistogram::count(const CensusThresholds& t) const
{
    const simd::Pam3Limits l = limits_of(t);
    std::uint64_t n = 0;
    for (int h = 1; h <= std::min(l.max_head_droop, hist_dim_run); ++h)
        for (int tl = 1; tl <= std::min(l.max_tail_droop, hist_dim_run); ++tl)
            for (int dc = 0; dc <= std::min(l.max_abs_dc, hist_dim_dc - 1); ++dc)
                for (int tr = std::max(l.min_transits, 0); tr < hist_dim_tr; ++tr)
                    n += cells_[hist_index(h, tl, dc, tr)];
    return n;
}

std::vector<SweepRow> census_sweep(const CensusHistogram& h)
{
    std::vector<SweepRow> rows;
    for (int d = 1; d <= 12; ++d)
        for (int dc = 0; dc <= 12; ++dc)
            for (int tr = 0; tr <= 11; ++tr)
                rows.push_back({d, dc, tr, h.count(CensusThresholds{d, d, dc, tr, 1})});
    return rows;
}

} // namespace lcw::echo
