#pragma once

// PRNG repetition period and observation time per echo round demand.

namespace lcw::qu {

inline constexpr double word_time_s = 30e-9;
inline constexpr double round_time_s = 180e-9;
inline constexpr unsigned max_round_bits = 72;
inline constexpr int min_root_bits = 9;  // 2^9 >= 259

struct BudgetReport {
    unsigned t = 0;
    int r = 0;                  // t - 12, or t - 11 without the inversion bit
    bool with_inversion = true;
    bool viable = false;        // r >= 9
    double repetition_period_s = 0;
    double observation_time_s = 0;  // of r; 0 when r < 0
};

// (2^33 - 1) * 30 ns * 72 / t. Throws range_error outside 1 <= t <= 72.
double repetition_period(unsigned t);
// 2^r * 180 ns.
double observation_time(int r);

BudgetReport budget(unsigned t, bool with_inversion = true);

} // namespace lcw::qu
