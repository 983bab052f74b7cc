#pragma once

// Table reports keyed by stable ids such as "tbt-table13-census".

#include <cstdint>
#include <string_view>
#include <vector>

#include "lcw/table.hpp"

namespace lcw::report {

inline constexpr std::uint64_t default_seed = 20250611;

struct Params {
    std::uint64_t seed = default_seed;
    unsigned jobs = 1;
};

struct ReportInfo {
    std::string_view id;
    std::string_view summary;
};

const std::vector<ReportInfo>& report_ids();

// Throws usage_error for an unknown id.
Table make_report(std::string_view id, const Params& p = {});

// Shared by the CLI subcommands.
Table census_table(unsigned m_lo, unsigned m_hi);
Table symmetric_table(std::uint64_t n, unsigned r_lo, unsigned r_hi);
Table delta_m_table(std::uint64_t n, unsigned r_lo, unsigned r_hi);
Table budget_table();
Table capacity_table(std::uint64_t seed, std::size_t symbols);
Table census_sweep_table(unsigned jobs);

// "~5.9 ms", "~24.2 s", "~1.7 h", "~36.7 d"
std::string human_duration(double seconds);

} // namespace lcw::report
