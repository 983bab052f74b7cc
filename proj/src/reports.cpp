#include "lcw/reports.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "lcw/budget.hpp"
#include "lcw/code_point.hpp"
#include "lcw/echo_mux.hpp"
#include "lcw/error.hpp"
#include "lcw/lam_core.hpp"
#include "lcw/lam_dictionary.hpp"
#include "lcw/partition.hpp"
#include "lcw/radix_reconciler.hpp"
#include "lcw/ternary_t1l.hpp"

namespace lcw::report {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "-"; }

std::string signed_int(long long v) { return (v > 0 ? "+" : "") + std::to_string(v); }

std::string decimal(const t1l::cpp_rational& q)
{
    // two-decimal display the way the dictionaries print them: ".33"
    std::string s = fixed(static_cast<double>(q), 3);
    if (s.rfind("0.", 0) == 0)
        s.erase(0, 1);
    return s;
}

std::string rational_cell(const t1l::cpp_rational& q) { return t1l::format_rational(q) + " (" + decimal(q) + ")"; }

Table portrait_table(t1l::Variant v)
{
    const auto ps = t1l::portrait(v);
    Table t;
    t.title = std::string("T1L coding portrait, ") + std::string(t1l::variant_name(v)) + " dictionary";
    t.columns = {"quantity", "t=3n", "t=3n+1", "t=3n+2", "average"};
    for (int s = 0; s <= 5; ++s) {
        t.add_row({"p(Σdc=" + std::to_string(s) + ")", rational_cell(ps.sigma[0][s]), rational_cell(ps.sigma[1][s]),
                   rational_cell(ps.sigma[2][s]), rational_cell(ps.sigma_avg[s])});
    }
    static constexpr const char* names[3] = {"p(L)", "p(z)", "p(H)"};
    for (int l = 0; l < 3; ++l) {
        t.add_row({names[l], rational_cell(ps.letter[0][l]), rational_cell(ps.letter[1][l]),
                   rational_cell(ps.letter[2][l]), rational_cell(ps.letter_avg[l])});
    }
    t.add_row({"p(transit after)", rational_cell(ps.transit[0]), rational_cell(ps.transit[1]),
               rational_cell(ps.transit[2]), rational_cell(ps.transit_avg)});
    static constexpr const char* runs[3] = {"max L run", "max z run", "max H run"};
    for (int l = 0; l < 3; ++l) {
        const auto r = ps.max_run[l];
        const std::string cell = r ? std::to_string(*r) : "unbounded";
        t.add_row({runs[l], cell, "", "", ""});
    }
    for (int s = 1; s <= 4; ++s)
        t.notes.push_back("word-level p(Σdc=" + std::to_string(s) + ") = " + rational_cell(ps.page[s - 1]));
    return t;
}

Table dictionary_table(t1l::Variant v)
{
    const auto& d = t1l::dictionary(v);
    Table t;
    t.title = std::string("T1L pages, ") + std::string(t1l::variant_name(v)) + " dictionary";
    t.columns = {"Σdc", "code", "word", "Δdc", "next Σdc", "R_n", "R_n-1"};
    for (int s = t1l::min_sigma; s <= t1l::max_sigma; ++s) {
        for (const auto& e : d.page(s)) {
            const auto m = t1l::word_metrics(e.word);
            t.add_row({std::to_string(s), std::to_string(e.code), t1l::format_word(e.word, true),
                       signed_int(m.delta_dc), std::to_string(s + m.delta_dc), std::to_string(e.reprs),
                       e.reprs_prev ? std::to_string(*e.reprs_prev) : ""});
        }
    }
    return t;
}

Table delimiter_table()
{
    Table t;
    t.title = "T1L delimiters";
    t.columns = {"s4", "period", "cond", "Σdc=1", "Σdc=2", "Σdc=3", "Σdc=4"};
    auto cell = [](const t1l::Word& w) {
        return t1l::format_word(w, true) + " " + signed_int(t1l::word_metrics(w).delta_dc);
    };
    for (bool s4 : {false, true}) {
        const std::string s4s = s4 ? "1" : "0";
        std::vector<std::string> row{s4s, "3rd", "any"};
        for (int s = 1; s <= 4; ++s)
            row.push_back(cell(t1l::delimiter_third(s, s4)));
        t.add_row(row);
        for (auto k : {t1l::DelimiterKind::ssd, t1l::DelimiterKind::esd, t1l::DelimiterKind::esd_err}) {
            std::vector<std::string> r4{s4s, "4th", std::string(t1l::delimiter_name(k))};
            for (int s = 1; s <= 4; ++s) {
                try {
                    r4.push_back(cell(t1l::delimiter_fourth(k, s, s4)));
                } catch (const error& e) {
                    if (e.code() != errc::undefined_cell)
                        throw;
                    r4.push_back("");
                }
            }
            t.add_row(r4);
        }
    }
    t.notes.push_back("1st and 2nd words are z z z in every cell");
    return t;
}

// Images as printed in the 10BASE-T1S reference dictionary.
struct T1sRow {
    const char* name;
    const char* image;
};

constexpr T1sRow t1s_rows[] = {
    {"-", "JKJKJKJKJK"},         {"-", "JKJKJJJJK"},          {"-", "JKJJJJKJK"},
    {"-", "JJJKJJKJK"},          {"-", "JJJJKJKJK"},          {"ESD ERR", "JJJKJKJKJJ"},
    {"SYNC/COMMIT", "JKJKJKJJJJ"}, {"Data 0001", "JJJKJKJJJK"}, {"Data 0010", "JKJKJJKJKJ"},
    {"Data 0100", "JKJJKJJJK"},  {"Data 1000", "JKJJKJKJJJ"}, {"Data 0000", "JKJJJJJJJJ"},
    {"Data 0111", "JJJJJJJJK"},  {"Data 1011", "JJJJJKJJJ"},  {"Data 1101", "JJJJKJJJJ"},
    {"Data 1111", "JJJKJJJJJJ"}, {"Data 0011", "JJJKJJJKJJ"}, {"Data 0101", "JJJJKJJJK"},
    {"Data 0110", "JKJJJJJJK"},  {"Data 1001", "JJJJKJKJJJ"}, {"Data 1010", "JKJJJJKJJJ"},
    {"Data 1100", "JKJJKJJJJJ"}, {"Data 1110", "JKJKJJJJJJ"}, {"ESD OK/BRS", "JJJJJJKJK"},
    {"ESD JAB", "JJJKJKJJJJ"},   {"ESD/IB", "JJJKJJJJK"},     {"SSD", "JKJKJJJKJK"},
    {"BEACON", "JKJKJKJJJK"},    {"-", "JKJKJKJJJJ"},         {"-", "JKJJJKJKJK"},
    {"-", "JJJKJKJKJK"},         {"SILENCE", "JJJJJJJJJJ"},
};

Table t1s_table()
{
    Table t;
    t.title = "10BASE-T1S reference dictionary under the JK model (initial level L)";
    t.columns = {"definition", "image", "letters", "balance", "impact", "peaks", "pattern"};
    for (const auto& r : t1s_rows) {
        const auto letters = lam::parse_letters(r.image);
        const auto m = lam::metrics(letters, lam::Level::L);
        std::string balance = std::to_string(m.j_count) + "J-" + std::to_string(m.k_count) + "K";
        std::string impact = m.dc_bias == 0 ? "=0" : signed_int(m.dc_bias);
        if (m.inverting) {
            balance += " inv";
            impact += " inv";
        }
        const std::string peaks = (m.peak_pos > 0 ? signed_int(m.peak_pos) : "-") + " / " +
                                  (m.peak_neg < 0 ? signed_int(m.peak_neg) : "-");
        const std::string pattern = std::string(1, lam::level_char(lam::Level::L)) + " [" + impact.substr(0, impact.find(' ')) +
                                    "] " + lam::level_char(m.final_level);
        t.add_row({r.name, lam::format_letters(letters), std::to_string(letters.size()), balance, impact, peaks, pattern});
    }
    t.notes.push_back("rows with 9 letters are kept as printed; see the fixture test for the known disagreements");
    return t;
}

Table pools_table()
{
    const auto p = echo::pool_arithmetic();
    Table t;
    t.title = "Echo code-point pools";
    t.columns = {"quantity", "value"};
    t.add_row({"native 2·8^6", with_commas(p.native)});
    t.add_row({"forced 12·8^3", with_commas(p.forced)});
    t.add_row({"total", with_commas(p.total)});
    t.add_row({"N_Q = 259·2^11", with_commas(p.n_q)});
    t.add_row({"9^6", with_commas(p.image_space)});
    t.add_row({"slack 9^6 - N_Q", with_commas(p.slack)});
    const auto a = echo::echo_area(echo::Framing::preamble_sfd), b = echo::echo_area(echo::Framing::ifg),
               c = echo::echo_area_per_frame();
    t.add_row({"echo area preamble+SFD", std::to_string(a.gross) + " (" + std::to_string(a.net) + ")"});
    t.add_row({"echo area IFG", std::to_string(b.gross) + " (" + std::to_string(b.net) + ")"});
    t.add_row({"echo area per frame", std::to_string(c.gross) + " (" + std::to_string(c.net) + ")"});
    const auto r = echo::event_resolution();
    t.add_row({"event resolution", fixed(r.resolution_ns, 0) + " ns ±" + fixed(r.uncertainty_ns, 0)});
    return t;
}

Table multiplex_table()
{
    Table t;
    t.title = "Multiplexing feasibility per data width";
    t.columns = {"m", "M", "N_A", "2^m+1", "verdict"};
    for (unsigned m = 1; m <= 8; ++m) {
        const auto v = lam::multiplex_feasible(m);
        t.add_row({std::to_string(v.m), std::to_string(v.M), std::to_string(v.n_a), std::to_string(v.n_q),
                   std::string(lam::multiplex_name(v.verdict))});
    }
    return t;
}

using Builder = std::function<Table(const Params&)>;

struct Entry {
    ReportInfo info;
    Builder build;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries = {
        {{"tbt-table13-census", "valid JK image counts by mask, M = 2..20"},
         [](const Params&) { return census_table(2, 20); }},
        {{"tbt-multiplex", "page size against 2^m + 1 per data width"}, [](const Params&) { return multiplex_table(); }},
        {{"t1s-table1-classification", "10BASE-T1S reference images under the DC rule"},
         [](const Params&) { return t1s_table(); }},
        {{"t1s-table30-capacity", "reconciler efficiency against the TEST threshold"},
         [](const Params& p) { return capacity_table(p.seed, 20000); }},
        {{"t1-table6-symmetric", "symmetric bin partitions for N = 259"},
         [](const Params&) { return symmetric_table(qu::root_base, 9, 60); }},
        {{"t1-table6-delta-m", "|Δm| = 1 partitions for N = 259"},
         [](const Params&) { return delta_m_table(qu::root_base, 9, 60); }},
        {{"t1-table6-budget", "PRNG repetition period and root width per t"}, [](const Params&) { return budget_table(); }},
        {{"t1-pools", "echo pools, echo area and event resolution"}, [](const Params&) { return pools_table(); }},
        {{"t1-table7-census-sweep", "PAM-3 image filter census over droop, dc, transits"},
         [](const Params& p) { return census_sweep_table(p.jobs); }},
        {{"t1l-table6-dictionary", "reference pages"},
         [](const Params&) { return dictionary_table(t1l::Variant::reference); }},
        {{"t1l-table8-dictionary", "broadened pages"},
         [](const Params&) { return dictionary_table(t1l::Variant::broadened); }},
        {{"t1l-table7-portrait", "reference coding portrait"},
         [](const Params&) { return portrait_table(t1l::Variant::reference); }},
        {{"t1l-table9-portrait", "broadened coding portrait"},
         [](const Params&) { return portrait_table(t1l::Variant::broadened); }},
        {{"t1l-table10-delimiters", "delimiter words"}, [](const Params&) { return delimiter_table(); }},
    };
    return entries;
}

} // namespace

const std::vector<ReportInfo>& report_ids()
{
    static const std::vector<ReportInfo> ids = [] {
        std::vector<ReportInfo> v;
        for (const auto& e : registry())
            v.push_back(e.info);
        return v;
    }();
    return ids;
}

Table make_report(std::string_view id, const Params& p)
{
    for (const auto& e : registry()) {
        if (e.info.id == id) {
            Table t = e.build(p);
            t.id = std::string(id);
            return t;
        }
    }
    fail(errc::usage_error, "unknown report id '" + std::string(id) + "'");
}

std::string human_duration(double s)
{
    if (s < 0.05)
        return "~" + fixed(s * 1e3, 1) + " ms";
    if (s < 3600)
        return "~" + fixed(s, 1) + " s";
    if (s < 86400)
        return "~" + fixed(s / 3600, 1) + " h";
    return "~" + fixed(s / 86400, 1) + " d";
}

Table census_table(unsigned m_lo, unsigned m_hi)
{
    Table t;
    t.title = "Valid serial images by length";
    t.columns = {"row"};
    std::vector<lam::Census> all;
    std::vector<lam::Census> filtered;
    for (unsigned m = m_lo; m <= m_hi; m += 2) {
        t.columns.push_back("M=" + std::to_string(m));
        all.push_back(lam::census(m));
        filtered.push_back(lam::census(m, lam::applicability_filter(m)));
    }
    auto row = [&](std::string name, auto f, const std::vector<lam::Census>& src) {
        std::vector<std::string> r{std::move(name)};
        for (const auto& c : src)
            r.push_back(std::to_string(f(c)));
        t.add_row(std::move(r));
    };
    row("valid", [](const lam::Census& c) { return c.total(); }, all);
    row("J...J", [](const lam::Census& c) { return c.cell(lam::Mask::JJ).total(); }, all);
    row("J...K", [](const lam::Census& c) { return c.cell(lam::Mask::JK).total(); }, all);
    row("K...J", [](const lam::Census& c) { return c.cell(lam::Mask::KJ).total(); }, all);
    row("balanced", [](const lam::Census& c) { return c.cell(lam::Mask::JJ).balanced + c.cell(lam::Mask::JK).balanced; }, all);
    row("|bias|=1", [](const lam::Census& c) { return c.cell(lam::Mask::JJ).unit + c.cell(lam::Mask::JK).unit; }, all);
    row("page", [](const lam::Census& c) { return c.page_total(); }, filtered);
    t.notes.push_back("balanced, |bias|=1 and page count one page (J...J plus J...K)");
    t.notes.push_back("page uses |bias| <= 1, balanced only at M=16");
    return t;
}

Table symmetric_table(std::uint64_t n, unsigned r_lo, unsigned r_hi)
{
    Table t;
    t.title = "Symmetric partitions, N = " + std::to_string(n);
    t.columns = {"r", "m_even", "m_odd", "|Δm|", "x_even", "x_odd", "Δx", "e", "o", "unbalance", "observation"};
    std::vector<unsigned> none;
    for (unsigned r = r_lo; r <= r_hi; ++r) {
        const auto sols = qu::symmetric_solutions(r, n);
        if (sols.empty())
            none.push_back(r);
        for (const auto& s : sols) {
            const auto u = qu::unbalance(s);
            const auto dm = static_cast<long long>(s.m_even) - static_cast<long long>(s.m_odd);
            t.add_row({std::to_string(r), std::to_string(s.m_even), std::to_string(s.m_odd), std::to_string(std::llabs(dm)),
                       with_commas(s.x_even), with_commas(s.x_odd), signed_int(s.dx()), yes_no(s.symmetric_e),
                       yes_no(s.symmetric_o), qu::format_unbalance(u.positive) + "/" + qu::format_unbalance(u.negative),
                       human_duration(qu::observation_time(static_cast<int>(r)))});
        }
    }
    std::string list;
    for (unsigned r : none)
        list += (list.empty() ? "" : " ") + std::to_string(r);
    t.notes.push_back("no symmetric solution: " + list);
    return t;
}

Table delta_m_table(std::uint64_t n, unsigned r_lo, unsigned r_hi)
{
    Table t;
    t.title = "|Δm| = 1 partitions, N = " + std::to_string(n);
    t.columns = {"r", "m_even", "m_odd", "x_even", "x_odd", "|Δx|", "unbalance", "observation"};
    for (unsigned r = r_lo; r <= r_hi; ++r) {
        for (const auto& s : qu::delta_m_solutions(r, n)) {
            const auto u = qu::unbalance(s);
            t.add_row({std::to_string(r), std::to_string(s.m_even), std::to_string(s.m_odd), with_commas(s.x_even),
                       with_commas(s.x_odd), std::to_string(std::llabs(s.dx())),
                       qu::format_unbalance(u.positive) + "/" + qu::format_unbalance(u.negative),
                       human_duration(qu::observation_time(static_cast<int>(r)))});
        }
    }
    t.notes.push_back("kept when 2|Δx| < N");
    return t;
}

Table budget_table()
{
    Table t;
    t.title = "PRNG budget per echo round demand t";
    t.columns = {"t", "r", "r (no inversion)", "viable", "T(t)", "observation(r)"};
    for (unsigned tt = 1; tt <= qu::max_round_bits; ++tt) {
        const auto a = qu::budget(tt, true), b = qu::budget(tt, false);
        t.add_row({std::to_string(tt), std::to_string(a.r), std::to_string(b.r), yes_no(a.viable),
                   fixed(a.repetition_period_s, 1) + " s",
                   a.r >= 0 ? human_duration(a.observation_time_s) : "-"});
    }
    return t;
}

Table capacity_table(std::uint64_t seed, std::size_t symbols)
{
    Table t;
    t.title = "Reconciler efficiency, N_in = 256, $N = 259, " + std::to_string(symbols) + " symbols";
    t.columns = {"K", "output symbols", "efficiency", "steady efficiency"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> byte(0, 255);
    std::vector<std::uint32_t> in(symbols);
    for (auto& v : in)
        v = byte(rng);
    const auto oracle = rr::RadixOracle::constant(256, 259);
    for (unsigned e = 0; e <= 20; e += 2) {
        rr::ReconcilerConfig cfg;
        cfg.k = std::uint64_t{1} << e;
        const auto res = rr::encode_stream(in, oracle, cfg);
        t.add_row({"2^" + std::to_string(e), std::to_string(res.symbols.size()), fixed(res.efficiency(), 6),
                   fixed(res.steady_efficiency(), 6)});
    }
    return t;
}

Table census_sweep_table(unsigned jobs)
{
    const echo::CensusHistogram h;
    Table t;
    t.title = "PAM-3 image census sweep";
    t.columns = {"droop", "dc_bound", "min_transits", "accepted", "equals N_Q"};
    bool hit = false;
    for (const auto& row : echo::census_sweep(h)) {
        const bool eq = row.accepted == qu::code_points;
        hit = hit || eq;
        t.add_row({std::to_string(row.droop), std::to_string(row.dc_bound), std::to_string(row.min_transits),
                   std::to_string(row.accepted), yes_no(eq)});
    }
    // cross-check one cell through the sharded kernel
    const auto direct = echo::image_filter_census(echo::CensusThresholds{8, 8, 8, 2, 1}, jobs);
    t.notes.push_back("droop 8, dc 8, transits >= 2 via the kernel: " + std::to_string(direct));
    t.notes.push_back(hit ? "some cell yields exactly 530432" : "no cell yields exactly 530432");
    return t;
}

} // namespace lcw::report
