#include "lcw/error.hpp"

namespace lcw {

std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::invalid_run: return "InvalidRun";
    case errc::framing_error: return "FramingError";
    case errc::size_limit: return "SizeLimit";
    case errc::empty_page: return "EmptyPage";
    case errc::value_out_of_range: return "ValueOutOfRange";
    case errc::decode_error: return "DecodeError";
    case errc::degenerate: return "Degenerate";
    case errc::zero_state: return "ZeroState";
    case errc::range_error: return "RangeError";
    case errc::no_solution: return "NoSolution";
    case errc::queue_overflow: return "QueueOverflow";
    case errc::underflow: return "Underflow";
    case errc::flush_ambiguity: return "FlushAmbiguity";
    case errc::page_miss: return "PageMiss";
    case errc::undefined_cell: return "UndefinedCell";
    case errc::reducible: return "Reducible";
    case errc::slot_unavailable: return "SlotUnavailable";
    case errc::infeasible: return "Infeasible";
    case errc::conflict: return "Conflict";
    case errc::usage_error: return "UsageError";
    case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

} // namespace lcw
