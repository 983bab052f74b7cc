#pragma once

// Echo multiplexing arithmetic: code-point pools, super-group slots, round
// planning, the mocking round and the PAM-3 image filter census.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lcw/pam3_image.hpp"

namespace lcw::echo {

struct PoolArithmetic {
    std::uint64_t native;       // 2 * 8^6
    std::uint64_t forced;       // 12 * 8^3
    std::uint64_t total;        // native + forced
    std::uint64_t n_q;          // 259 * 2^11
    std::uint64_t image_space;  // 9^6
    std::uint64_t slack;        // 9^6 - N_Q
};

PoolArithmetic pool_arithmetic();

inline constexpr std::uint32_t native_pool = 524288;
inline constexpr std::uint32_t forced_pool = 6144;
inline constexpr std::uint32_t pool_total = native_pool + forced_pool;

struct NativeSample {
    bool aux = false;
    std::array<std::uint8_t, 6> digits{};  // octal, digit i weighs 8^i

    friend bool operator==(const NativeSample&, const NativeSample&) = default;
};

struct ForcedSample {
    std::uint8_t position = 0;  // 0..11
    std::array<std::uint8_t, 3> digits{};

    friend bool operator==(const ForcedSample&, const ForcedSample&) = default;
};

using Sample = std::variant<NativeSample, ForcedSample>;

// aux * 8^6 + sum d_i 8^i; throws range_error on bad digits.
std::uint32_t pack_native(const NativeSample& s);
// 2 * 8^6 + position * 8^3 + sum d_i 8^i.
std::uint32_t pack_forced(const ForcedSample& s);
// Pool chosen by range; throws range_error at or above N_Q.
Sample unpack_sample(std::uint32_t value);

// Smallest n with E * N_C^n <= N_E^n. Throws infeasible when N_E <= N_C and
// range_error unless N_C >= 2 and E >= 2.
unsigned schedule_round(std::uint64_t n_c, std::uint64_t n_e, std::uint64_t e);

// Exact check of the round inequality for n words.
bool round_fits(std::uint64_t n_c, std::uint64_t n_e, std::uint64_t e, unsigned n);

enum class SlotUse : std::uint8_t { free, delimiter, forced_echo };

inline constexpr unsigned group_words = 12;
inline constexpr unsigned half_words = 6;

struct EventConfig {
    bool mii_positions = false;  // 9 positions at nibble granularity
};

struct Placement {
    ForcedSample sample;   // digits left zero; filled by the data path
    unsigned first_slot;   // start of the odd half
    unsigned last_slot;
};

class SuperGroup {
public:
    SlotUse slot(unsigned i) const { return slots_.at(i); }
    bool event_pending() const noexcept { return event_.has_value(); }

    // Delimiters go to the even half only; throws conflict otherwise or when
    // the slot is taken.
    void place_delimiter(unsigned slot);

    // Reserves the odd half for a forced echo carrying the position. Throws
    // conflict when the odd half already carries one, range_error for a
    // position outside 0..11 (0..8 in MII mode).
    Placement place_event(unsigned position, const EventConfig& cfg = {});

private:
    std::array<SlotUse, group_words> slots_{};
    std::optional<unsigned> event_;
};

struct EventResolution {
    unsigned positions;
    double resolution_ns;
    double uncertainty_ns;  // half the resolution
    unsigned words_per_event;
};

EventResolution event_resolution(const EventConfig& cfg = {});

struct MockRound {
    std::uint64_t e;
    unsigned delay_bit_times;  // log2 E
    unsigned words;            // n_e * k = n_D = 1
};

// Throws range_error unless E is a power of two.
MockRound mock_round(std::uint64_t e);

enum class Framing : std::uint8_t { preamble_sfd, ifg };

struct EchoArea {
    unsigned gross;  // bit times
    unsigned net;    // after the delimiters
};

EchoArea echo_area(Framing f);
EchoArea echo_area_per_frame();

// Twelve-symbol PAM-3 image: six words of two symbols.
struct Pam3Image {
    std::array<std::int8_t, 12> symbols;
    pam3::RunMetrics metrics;
};

Pam3Image image_of(std::uint32_t index);

struct CensusThresholds {
    std::optional<int> max_head_droop;  // none: unlimited
    std::optional<int> max_tail_droop;
    std::optional<int> dc_bound;        // in multiplier units
    int min_transits = 0;
    int dc_multiplier = 1;              // symbol-sum units per bound unit
};

// Exhaustive count over all 9^6 images through the SIMD kernel, sharded by
// the leading three words over `jobs` threads.
std::uint64_t image_filter_census(const CensusThresholds& t, unsigned jobs = 1);

// Image counts by (head run, tail run, |sum|, transits); a second route to
// the same census and the engine behind threshold sweeps.
class CensusHistogram {
public:
    CensusHistogram();

    std::uint64_t count(const CensusThresholds& t) const;
    std::uint64_t total() const noexcept { return total_; }

private:
    // [head 1..12][tail 1..12][|dc| 0..12][transits 0..11]
    std::vector<std::uint32_t> cells_;
    std::uint64_t total_ = 0;
};

struct SweepRow {
    int droop;  // head and tail bound
    int dc_bound;
    int min_transits;
    std::uint64_t accepted;
};

// Every droop 1..12, dc bound 0..12, min transits 0..11 combination.
std::vector<SweepRow> census_sweep(const CensusHistogram& h);

} // namespace lcw::echo
