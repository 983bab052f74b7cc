#include "lcw/radix_reconciler.hpp"

#include <cmath>
#include <random>

#include "lcw/error.hpp"

namespace lcw::rr {

namespace {

void check_out_radix(std::uint64_t r)
{
    if (r < 3)
        fail(errc::range_error, "output radix must be at least 3");
}

double log2_of(const cpp_int& v)
{
    // msb plus the fractional part from the top 53 bits
    const std::size_t msb = boost::multiprecision::msb(v);
    if (msb < 53)
        return std::log2(v.convert_to<double>());
    const cpp_int top = v >> (msb - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(msb - 52);
}

void record(std::vector<TraceLine>* trace, const char* stage, const MixedRadixQueue& q,
            std::optional<std::uint32_t> sym = std::nullopt)
{
    if (trace)
        trace->push_back(TraceLine{stage, q.b_q, q.n_q, sym});
}

std::uint32_t radix_in(const RadixOracle& o, std::uint64_t m)
{
    const std::uint32_t r = o.input_radix(m);
    if (r < 2)
        fail(errc::range_error, "input radix must be at least 2");
    return r;
}

std::uint32_t radix_out(const RadixOracle& o, std::uint64_t n, std::span<const std::uint32_t> written)
{
    const std::uint32_t r = o.output_radix(n, written.first(n));
    check_out_radix(r);
    return r;
}

} // namespace

MixedRadixQueue enqueue(const MixedRadixQueue& q, std::uint64_t b_in, std::uint64_t n_in, const ReconcilerConfig& cfg)
{
    if (n_in < 2 || b_in >= n_in)
        fail(errc::range_error, "input symbol " + std::to_string(b_in) + " outside radix " + std::to_string(n_in));
    MixedRadixQueue out = q;
    out.b_q = cpp_int(b_in) * q.n_q + q.b_q;
    out.n_q = q.n_q * n_in;
    out.m = q.m + 1;
    if (boost::multiprecision::msb(out.n_q) >= cfg.queue_bound_bits)
        fail(errc::queue_overflow, "queued capacity exceeds 2^" + std::to_string(cfg.queue_bound_bits));
    return out;
}

bool test(const MixedRadixQueue& q, std::uint64_t out_radix, std::uint64_t k)
{
    return q.n_q >= cpp_int(k) * out_radix;
}

std::pair<MixedRadixQueue, std::uint32_t> flush_one(const MixedRadixQueue& q, std::uint64_t out_radix)
{
    check_out_radix(out_radix);
    MixedRadixQueue out = q;
    cpp_int rem;
    boost::multiprecision::divide_qr(q.b_q, cpp_int(out_radix), out.b_q, rem);
    out.n_q = (q.n_q + (out_radix - 1)) / out_radix;
    out.n = q.n + 1;
    return {std::move(out), rem.convert_to<std::uint32_t>()};
}

std::pair<MixedRadixQueue, std::uint32_t> dequeue(const MixedRadixQueue& q, std::uint64_t out_radix, std::uint64_t k)
{
    check_out_radix(out_radix);
    if (!test(q, out_radix, k))
        fail(errc::underflow, "queued capacity below K * $N");
    return flush_one(q, out_radix);
}

RadixOracle RadixOracle::constant(std::uint32_t n_in, std::uint32_t n_out)
{
    return RadixOracle{[n_in](std::uint64_t) { return n_in; },
                       [n_out](std::uint64_t, std::span<const std::uint32_t>) { return n_out; }};
}

namespace {

std::uint64_t mix(std::uint64_t x)
{
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

RadixOracle RadixOracle::varying(std::uint64_t seed, std::uint32_t max_in, std::uint32_t max_out)
{
    if (max_in < 2 || max_out < 3)
        fail(errc::range_error, "varying oracle needs max_in >= 2 and max_out >= 3");
    return RadixOracle{
        [seed, max_in](std::uint64_t m) { return 2 + static_cast<std::uint32_t>(mix(seed ^ mix(m)) % (max_in - 1)); },
        [seed, max_out](std::uint64_t n, std::span<const std::uint32_t> written) {
            const std::uint64_t prev = written.empty() ? 0 : written.back() + 1;
            return 3 + static_cast<std::uint32_t>(mix(~seed ^ mix(n * 0x10001 + prev)) % (max_out - 2));
        }};
}

std::string TraceLine::format() const
{
    return stage + ' ' + b_q.str() + ' ' + n_q.str() + ' ' + (symbol ? std::to_string(*symbol) : "-");
}

EncodeResult encode_stream(std::span<const std::uint32_t> inputs, const RadixOracle& oracle,
                           const ReconcilerConfig& cfg, std::vector<TraceLine>* trace)
{
    EncodeResult res;
    MixedRadixQueue q;
    record(trace, "INIT", q);
    if (inputs.empty())
        return res;

    auto emit = [&](std::uint32_t sym) {
        res.symbols.push_back(sym);
        q.n = res.symbols.size();
    };

    std::uint64_t count = inputs.size();
    for (std::size_t i = 0; i < header_symbols; ++i) {
        const auto digit = static_cast<std::uint32_t>(count % 3);
        count /= 3;
        radix_out(oracle, res.symbols.size(), res.symbols);  // the header must still fit the page
        emit(digit);
        record(trace, "Header", q, digit);
    }

    for (std::uint32_t b_in : inputs) {
        const std::uint32_t n_in = radix_in(oracle, q.m);
        record(trace, "Read", q, b_in);
        q = enqueue(q, b_in, n_in, cfg);
        res.bits_in += std::log2(static_cast<double>(n_in));
        record(trace, "Enqueue", q);
        for (;;) {
            const std::uint32_t r = radix_out(oracle, q.n, res.symbols);
            record(trace, "TEST", q);
            if (!test(q, r, cfg.k))
                break;
            auto [next, sym] = dequeue(q, r, cfg.k);
            q = std::move(next);
            emit(sym);
            res.capacity_out += std::log2(static_cast<double>(r));
            res.steady_capacity += std::log2(static_cast<double>(r));
            record(trace, "Dequeue", q, sym);
        }
    }

    res.residual_bits = log2_of(q.n_q);
    while (q.n_q > 1) {
        const std::uint32_t r = radix_out(oracle, q.n, res.symbols);
        auto [next, sym] = flush_one(q, r);
        q = std::move(next);
        emit(sym);
        ++res.flush_symbols;
        res.capacity_out += std::log2(static_cast<double>(r));
        record(trace, "Flush", q, sym);
    }
    return res;
}

std::vector<std::uint32_t> decode_stream(std::span<const std::uint32_t> symbols, const RadixOracle& oracle,
                                         const ReconcilerConfig& cfg)
{
    std::vector<std::uint32_t> out;
    if (symbols.empty())
        return out;
    if (symbols.size() < header_symbols)
        fail(errc::decode_error, "stream shorter than its header");

    std::uint64_t count = 0;
    for (std::size_t i = header_symbols; i-- > 0;) {
        if (symbols[i] >= 3)
            fail(errc::decode_error, "header digit out of range");
        const std::uint64_t next = count * 3 + symbols[i];
        if (next / 3 != count)
            fail(errc::decode_error, "header count overflows 64 bits");
        count = next;
    }
    if (count == 0)
        fail(errc::decode_error, "header announces no symbols");
    for (std::size_t i = 0; i < header_symbols; ++i)
        radix_out(oracle, i, symbols);

    // The capacity schedule does not depend on the data: replay it forward,
    // then unwind the values from the drained state B_q = 0.
    struct Event {
        bool is_read;
        cpp_int n_before;
        std::uint32_t radix;
        std::uint64_t pos;  // output index for writes
    };
    std::vector<Event> events;
    cpp_int n_q = 1;
    std::uint64_t n = header_symbols;
    auto radix_at = [&](std::uint64_t pos) {
        if (pos >= symbols.size())
            fail(errc::decode_error, "stream ends before the queue drains");
        const std::uint32_t r = radix_out(oracle, pos, symbols);
        if (symbols[pos] >= r)
            fail(errc::decode_error, "symbol " + std::to_string(pos) + " outside its radix");
        return r;
    };
    for (std::uint64_t m = 0; m < count; ++m) {
        const std::uint32_t n_in = radix_in(oracle, m);
        events.push_back({true, n_q, n_in, 0});
        n_q *= n_in;
        if (boost::multiprecision::msb(n_q) >= cfg.queue_bound_bits)
            fail(errc::queue_overflow, "queued capacity exceeds the bound");
        for (;;) {
            // n <= size here; the oracle may be asked one past the end.
            const std::uint32_t r = radix_out(oracle, n, symbols);
            if (!(n_q >= cpp_int(cfg.k) * r))
                break;
            radix_at(n);
            events.push_back({false, n_q, r, n});
            n_q = (n_q + (r - 1)) / r;
            ++n;
        }
    }
    while (n_q > 1) {
        const std::uint32_t r = radix_at(n);
        events.push_back({false, n_q, r, n});
        n_q = (n_q + (r - 1)) / r;
        ++n;
    }
    if (n != symbols.size())
        fail(errc::decode_error, "trailing symbols after the flush");

    out.resize(count);
    cpp_int b = 0;
    std::uint64_t m = count;
    for (auto it = events.rbegin(); it != events.rend(); ++it) {
        if (it->is_read) {
            cpp_int b_in;
            cpp_int rest;
            boost::multiprecision::divide_qr(b, it->n_before, b_in, rest);
            if (b_in >= it->radix)
                fail(errc::decode_error, "input symbol outside its radix");
            out[--m] = b_in.convert_to<std::uint32_t>();
            b = std::move(rest);
        } else {
            b = b * it->radix + symbols[it->pos];
            if (b >= it->n_before)
                fail(errc::decode_error, "symbol " + std::to_string(it->pos) + " inconsistent with the queue");
        }
    }
    if (b != 0)
        fail(errc::decode_error, "residue left after unwinding");
    return out;
}

SelfTestReport self_test(std::uint64_t seed, std::size_t cases)
{
    SelfTestReport rep;
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const std::uint32_t max_in = std::uniform_int_distribution<std::uint32_t>(2, 1000)(rng);
        const std::uint32_t max_out = std::uniform_int_distribution<std::uint32_t>(3, 1000)(rng);
        const auto oracle = RadixOracle::varying(rng(), max_in, max_out);
        ReconcilerConfig cfg;
        cfg.k = std::uint64_t{1} << std::uniform_int_distribution<unsigned>(0, 24)(rng);
        const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 1500)(rng);
        std::vector<std::uint32_t> in(len);
        for (std::size_t i = 0; i < len; ++i)
            in[i] = std::uniform_int_distribution<std::uint32_t>(0, oracle.input_radix(i) - 1)(rng);

        ++rep.cases;
        rep.symbols += len;
        std::string why;
        try {
            std::vector<TraceLine> trace;
            const auto enc = encode_stream(in, oracle, cfg, &trace);
            for (const auto& t : trace) {
                if (!(t.b_q >= 0 && t.b_q < t.n_q)) {
                    why = "invariant broken at stage " + t.stage;
                    break;
                }
            }
            if (why.empty() && decode_stream(enc.symbols, oracle, cfg) != in)
                why = "round trip mismatch";
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!why.empty()) {
            if (rep.failures++ == 0)
                rep.first_failure = "case " + std::to_string(c) + ": " + why;
        }
    }
    return rep;
}

} // namespace lcw::rr
