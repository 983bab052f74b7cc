#include "lcw/budget.hpp"

#include <cmath>
#include <string>

#include "lcw/error.hpp"

namespace lcw::qu {

double repetition_period(unsigned t)
{
    if (t < 1 || t > max_round_bits)
        fail(errc::range_error, "bits per round " + std::to_string(t) + " outside [1, 72]");
    const double period = std::ldexp(1.0, 33) - 1.0;
    return period * word_time_s * max_round_bits / t;
}

double observation_time(int r)
{
    if (r < 0)
        fail(errc::range_error, "negative bit width");
    return std::ldexp(round_time_s, r);
}

BudgetReport budget(unsigned t, bool with_inversion)
{
    BudgetReport b;
    b.t = t;
    b.repetition_period_s = repetition_period(t);
    b.with_inversion = with_inversion;
    b.r = static_cast<int>(t) - (with_inversion ? 12 : 11);
    b.viable = b.r >= min_root_bits;
    b.observation_time_s = b.r >= 0 ? observation_time(b.r) : 0.0;
    return b;
}

} // namespace lcw::qu
