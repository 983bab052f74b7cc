#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcw {

enum class errc {
    invalid_run,       // KK found in a letter stream
    framing_error,     // stream not decomposable into bit cells
    size_limit,
    empty_page,
    value_out_of_range,
    decode_error,
    degenerate,
    zero_state,
    range_error,
    no_solution,
    queue_overflow,
    underflow,
    flush_ambiguity,
    page_miss,
    undefined_cell,
    reducible,
    slot_unavailable,
    infeasible,
    conflict,
    usage_error,
    parse_error,
};

std::string_view to_string(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace lcw
