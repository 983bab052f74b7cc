#pragma once

// Streaming mixed-radix transcoder: input symbols of radix N_in(m) are
// queued into one big number and drained as symbols of radix $N(n).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lcw::rr {

using boost::multiprecision::cpp_int;

struct MixedRadixQueue {
    cpp_int b_q = 0;
    cpp_int n_q = 1;
    std::uint64_t m = 0;  // symbols read
    std::uint64_t n = 0;  // symbols written

    bool invariant() const { return b_q >= 0 && b_q < n_q; }
};

struct ReconcilerConfig {
    std::uint64_t k = 1;                  // TEST threshold: N_q >= K * $N
    std::size_t queue_bound_bits = 65536; // N_q must stay below 2^bound
    double eta = 0.95;                    // target, reported only
};

// Throws range_error unless 0 <= b_in < n_in and n_in >= 2;
// queue_overflow when N_q reaches 2^queue_bound_bits.
MixedRadixQueue enqueue(const MixedRadixQueue& q, std::uint64_t b_in, std::uint64_t n_in,
                        const ReconcilerConfig& cfg = {});

bool test(const MixedRadixQueue& q, std::uint64_t out_radix, std::uint64_t k = 1);

// Throws underflow when test fails, range_error for radix < 3.
std::pair<MixedRadixQueue, std::uint32_t> dequeue(const MixedRadixQueue& q, std::uint64_t out_radix,
                                                  std::uint64_t k = 1);

// Dequeue regardless of TEST; used to drain the queue at end of stream.
std::pair<MixedRadixQueue, std::uint32_t> flush_one(const MixedRadixQueue& q, std::uint64_t out_radix);

struct RadixOracle {
    // N_in(m) >= 2
    std::function<std::uint32_t(std::uint64_t m)> input_radix;
    // $N(n) >= 3; may look at the symbols already written.
    std::function<std::uint32_t(std::uint64_t n, std::span<const std::uint32_t> written)> output_radix;

    static RadixOracle constant(std::uint32_t n_in, std::uint32_t n_out);
    // Radices drawn from a hash of (seed, position, previous output symbol):
    // N_in in [2, max_in], $N in [3, max_out].
    static RadixOracle varying(std::uint64_t seed, std::uint32_t max_in, std::uint32_t max_out);
};

// Symbol count header: 41 base-3 digits, least significant first.
inline constexpr std::size_t header_symbols = 41;

struct TraceLine {
    std::string stage;  // INIT, Header, Read, Enqueue, TEST, Dequeue, Flush
    cpp_int b_q;
    cpp_int n_q;
    std::optional<std::uint32_t> symbol;

    std::string format() const;  // "stage B_q N_q symbol|-"
};

struct EncodeResult {
    std::vector<std::uint32_t> symbols;
    std::size_t flush_symbols = 0;
    double bits_in = 0;          // sum log2 N_in
    double capacity_out = 0;     // sum log2 $N over payload symbols
    double steady_capacity = 0;  // same, TEST-driven dequeues only
    double residual_bits = 0;    // log2 N_q just before the flush

    // bits_in / capacity_out over the payload (header excluded)
    double efficiency() const { return capacity_out > 0 ? bits_in / capacity_out : 0.0; }
    // Ignores the flush tail: (bits_in - residual) / steady_capacity.
    double steady_efficiency() const
    {
        return steady_capacity > 0 ? (bits_in - residual_bits) / steady_capacity : 0.0;
    }
};

// Empty input gives empty output. Otherwise the header is followed by the
// payload and a flush that drains N_q to 1. When trace is non-null every
// stage transition is appended.
EncodeResult encode_stream(std::span<const std::uint32_t> inputs, const RadixOracle& oracle,
                           const ReconcilerConfig& cfg = {}, std::vector<TraceLine>* trace = nullptr);

// Throws decode_error on malformed streams.
std::vector<std::uint32_t> decode_stream(std::span<const std::uint32_t> symbols, const RadixOracle& oracle,
                                         const ReconcilerConfig& cfg = {});

struct SelfTestReport {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::size_t symbols = 0;
    std::string first_failure;

    bool passed() const { return cases > 0 && failures == 0; }
};

// Randomized round trips with varying radices, thresholds and lengths;
// every trace step is checked against 0 <= B_q < N_q.
SelfTestReport self_test(std::uint64_t seed, std::size_t cases = 64);

} // namespace lcw::rr
