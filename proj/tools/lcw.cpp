// lcw: command-line front end for the line-code workbench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcw/budget.hpp"
#include "lcw/code_point.hpp"
#include "lcw/echo_mux.hpp"
#include "lcw/error.hpp"
#include "lcw/lam_core.hpp"
#include "lcw/lam_dictionary.hpp"
#include "lcw/partition.hpp"
#include "lcw/radix_reconciler.hpp"
#include "lcw/reports.hpp"
#include "lcw/simd/kernels.hpp"
#include "lcw/ternary_t1l.hpp"

namespace {

using lcw::report::Table;

struct Globals {
    std::string format = "text";
    std::string out;
    std::uint64_t seed = lcw::report::default_seed;
    unsigned jobs = 1;
    std::string backend;
};

// Subcommands fill this; main renders it.
struct Output {
    std::vector<Table> tables;
    std::string raw;  // free text, appended after the tables
    int status = 0;
};

std::vector<std::uint32_t> parse_list(const std::string& s)
{
    std::vector<std::uint32_t> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        unsigned long x = 0;
        try {
            x = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            lcw::fail(lcw::errc::parse_error, "not a number: '" + item + "'");
        v.push_back(static_cast<std::uint32_t>(x));
    }
    return v;
}

lcw::lam::ImageFilter filter_named(const std::string& name, unsigned M)
{
    if (name == "open")
        return lcw::lam::ImageFilter::open();
    if (name == "bias1")
        return lcw::lam::ImageFilter::bias_within(1);
    if (name == "balanced")
        return lcw::lam::ImageFilter::balanced();
    if (name == "auto")
        return lcw::lam::applicability_filter(M);
    lcw::fail(lcw::errc::usage_error, "unknown filter '" + name + "' (open, bias1, balanced, auto)");
}

Table image_table(const std::vector<lcw::lam::ValidImage>& words, const std::string& title)
{
    Table t;
    t.title = title;
    t.columns = {"index", "image", "mask", "bias", "pattern", "transits", "droop"};
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto& w = words[i];
        t.add_row({std::to_string(i), lcw::lam::format_letters(w.letters), std::string(lcw::lam::mask_name(w.mask)),
                   std::to_string(w.bias), std::string(lcw::lam::pattern_name(w.pattern)), std::to_string(w.transits),
                   std::to_string(w.droop)});
    }
    return t;
}

std::string bool_word(bool b) { return b ? "PASS" : "FAIL"; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"line-code workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--out", g.out, "write the report to this path");
    app.add_option("--seed", g.seed, "seed for randomized subcommands");
    app.add_option("--jobs", g.jobs, "worker threads for sharded work")->check(CLI::Range(1u, 64u));
    app.add_option("--backend", g.backend, "force scalar or avx2 kernels")->check(CLI::IsMember({"scalar", "avx2"}));

    Output out;
    std::function<void()> action;

    // lam ---------------------------------------------------------------
    auto* lam = app.add_subcommand("lam", "JK serial images and the two-page codec");
    lam->require_subcommand(1);
    unsigned lam_m = 8;
    std::string lam_filter = "open";
    auto* lam_enum = lam->add_subcommand("enum", "list valid images of M letters");
    lam_enum->add_option("--m", lam_m, "letters per image")->required();
    lam_enum->add_option("--filter", lam_filter, "open, bias1, balanced, auto");
    lam_enum->callback([&] {
        action = [&] {
            const auto f = filter_named(lam_filter, lam_m);
            std::vector<lcw::lam::ValidImage> kept;
            for (auto& img : lcw::lam::enumerate_valid(lam_m))
                if (f.accepts(img))
                    kept.push_back(std::move(img));
            out.tables.push_back(image_table(kept, "Valid images, M = " + std::to_string(lam_m)));
        };
    });

    auto* lam_pages = lam->add_subcommand("pages", "build pages A and B");
    lam_pages->add_option("--m", lam_m, "letters per word")->required();
    lam_pages->add_option("--filter", lam_filter, "open, bias1, balanced, auto");
    lam_pages->callback([&] {
        action = [&] {
            const auto pp = lcw::lam::build_pages(lam_m, filter_named(lam_filter, lam_m));
            out.tables.push_back(image_table(pp.a.words, "Page A, " + std::to_string(pp.a.size()) + " words"));
            out.tables.push_back(image_table(pp.b.words, "Page B, " + std::to_string(pp.b.size()) + " words"));
        };
    });

    std::string lam_data, lam_decode;
    std::size_t lam_random = 0;
    auto* lam_codec = lam->add_subcommand("codec", "encode values through the page-switched codec");
    lam_codec->add_option("--m", lam_m, "letters per word")->required();
    lam_codec->add_option("--filter", lam_filter, "open, bias1, balanced, auto");
    lam_codec->add_option("--data", lam_data, "comma-separated word indices");
    lam_codec->add_option("--decode", lam_decode, "letter stream to decode");
    lam_codec->add_option("--random", lam_random, "round-trip this many seeded random values");
    lam_codec->callback([&] {
        action = [&] {
            const auto pp = lcw::lam::build_pages(lam_m, filter_named(lam_filter, lam_m));
            Table t;
            t.columns = {"direction", "values", "letters"};
            if (!lam_decode.empty()) {
                const auto letters = lcw::lam::parse_letters(lam_decode);
                const auto v = lcw::lam::decode_stream(letters, pp);
                std::string vs;
                for (auto x : v)
                    vs += (vs.empty() ? "" : ",") + std::to_string(x);
                t.add_row({"decode", vs, lcw::lam::format_letters(letters)});
            } else {
                std::vector<std::uint32_t> data = parse_list(lam_data);
                if (lam_random) {
                    std::mt19937_64 rng(g.seed);
                    const auto n = std::min(pp.a.size(), pp.b.size());
                    for (std::size_t i = 0; i < lam_random; ++i)
                        data.push_back(static_cast<std::uint32_t>(rng() % n));
                }
                const auto letters = lcw::lam::encode_stream(data, pp);
                const bool ok = lcw::lam::decode_stream(letters, pp) == data && !lcw::lam::has_kk_run(letters);
                std::string vs;
                for (auto x : data)
                    vs += (vs.empty() ? "" : ",") + std::to_string(x);
                t.add_row({"encode", vs, lcw::lam::format_letters(letters)});
                t.notes.push_back("round trip " + bool_word(ok));
                out.status = ok ? 0 : 1;
            }
            out.tables.push_back(std::move(t));
        };
    });

    // scramble ------------------------------------------------------------
    auto* scr = app.add_subcommand("scramble", "quasi-uniform bin maps and the PRNG budget");
    scr->require_subcommand(1);
    unsigned scr_r = 15;
    std::uint64_t scr_n = lcw::qu::root_base;
    auto* scr_solve = scr->add_subcommand("solve", "partition solutions for one (r, N)");
    scr_solve->add_option("--r", scr_r, "PRNG bits")->required();
    scr_solve->add_option("--n", scr_n, "number of bins")->required();
    scr_solve->callback([&] {
        action = [&] {
            Table t;
            t.title = "Partitions of 2^" + std::to_string(scr_r) + " over N = " + std::to_string(scr_n);
            t.columns = {"kind", "m_even", "m_odd", "x_even", "x_odd", "Δx", "e", "o", "unbalance"};
            auto add = [&](const char* kind, const lcw::qu::PartitionSolution& s) {
                const auto u = lcw::qu::unbalance(s);
                t.add_row({kind, std::to_string(s.m_even), std::to_string(s.m_odd), std::to_string(s.x_even),
                           std::to_string(s.x_odd), std::to_string(s.dx()), s.symmetric_e ? "yes" : "-",
                           s.symmetric_o ? "yes" : "-",
                           lcw::qu::format_unbalance(u.positive) + "/" + lcw::qu::format_unbalance(u.negative)});
            };
            for (const auto& s : lcw::qu::symmetric_solutions(scr_r, scr_n))
                add("symmetric", s);
            for (const auto& s : lcw::qu::delta_m_solutions(scr_r, scr_n))
                add("delta-m", s);
            if (t.rows.empty())
                t.notes.push_back("no symmetric or |Δm| = 1 solution");
            out.tables.push_back(std::move(t));
        };
    });

    std::optional<std::uint64_t> scr_m_even;
    auto* scr_map = scr->add_subcommand("map", "bin map layout and preimage sizes");
    scr_map->add_option("--r", scr_r, "PRNG bits (default 5)");
    scr_map->add_option("--n", scr_n, "number of bins")->required();
    scr_map->add_option("--m-even", scr_m_even, "class count of even bins");
    bool scr_map_r_set = false;
    scr_map->callback([&] {
        scr_map_r_set = scr_map->count("--r") > 0;
        action = [&] {
            const unsigned r = scr_map_r_set ? scr_r : 5;
            lcw::qu::BinMap map = [&] {
                if (scr_m_even) {
                    const auto s = lcw::qu::closest_solution(r, scr_n, *scr_m_even);
                    if (!s)
                        lcw::fail(lcw::errc::no_solution, "no partition for that m_even");
                    return lcw::qu::build_bin_map(*s);
                }
                if (r <= 31)
                    return lcw::qu::bubble_map(scr_n, r);
                const auto sols = lcw::qu::solve_partitions(r, scr_n, 1);
                if (sols.empty())
                    lcw::fail(lcw::errc::no_solution, "no partition with |Δx| <= 1");
                return lcw::qu::build_bin_map(sols.front());
            }();
            Table t;
            t.title = "Bin map 2^" + std::to_string(r) + " -> " + std::to_string(scr_n) + ": " + map.describe();
            t.columns = {"digit", "first value", "preimage"};
            for (std::uint64_t d = 0; d < scr_n; ++d)
                t.add_row({std::to_string(d), std::to_string(map.first_value(d)), std::to_string(map.preimage_size(d))});
            out.tables.push_back(std::move(t));
        };
    });

    std::optional<unsigned> scr_t;
    auto* scr_budget = scr->add_subcommand("budget", "repetition period and observation time");
    scr_budget->add_option("--t", scr_t, "echo round demand in bits (1..72)");
    scr_budget->callback([&] {
        action = [&] {
            if (!scr_t) {
                out.tables.push_back(lcw::report::budget_table());
                return;
            }
            const auto b = lcw::qu::budget(*scr_t);
            Table t;
            t.columns = {"t", "r", "viable", "T(t)", "observation(r)"};
            t.add_row({std::to_string(b.t), std::to_string(b.r), b.viable ? "yes" : "-",
                       lcw::report::fixed(b.repetition_period_s, 1) + " s",
                       b.r >= 0 ? lcw::report::human_duration(b.observation_time_s) : "-"});
            out.tables.push_back(std::move(t));
        };
    });

    // reconcile -----------------------------------------------------------
    auto* rec = app.add_subcommand("reconcile", "mixed-radix reconciler");
    rec->require_subcommand(1);
    auto* rec_run = rec->add_subcommand("run", "encode and decode a seeded stream");
    bool rec_self = false, rec_trace = false;
    std::uint32_t rec_in = 256, rec_out = 259;
    std::uint64_t rec_k = 1;
    std::size_t rec_count = 1000, rec_cases = 64;
    rec_run->add_flag("--self-test", rec_self, "randomized round-trip suite");
    rec_run->add_option("--cases", rec_cases, "self-test cases");
    rec_run->add_option("--n-in", rec_in, "input radix")->check(CLI::Range(2u, 1u << 30));
    rec_run->add_option("--n-out", rec_out, "output radix")->check(CLI::Range(3u, 1u << 30));
    rec_run->add_option("--k", rec_k, "TEST threshold K");
    rec_run->add_option("--count", rec_count, "input symbols");
    rec_run->add_flag("--trace", rec_trace, "print every queue transition");
    rec_run->callback([&] {
        action = [&] {
            if (rec_self) {
                const auto rep = lcw::rr::self_test(g.seed, rec_cases);
                out.raw += "reconciler self-test: " + std::to_string(rep.cases) + " cases, " +
                           std::to_string(rep.symbols) + " symbols, " + bool_word(rep.passed()) + "\n";
                if (!rep.passed())
                    out.raw += rep.first_failure + "\n";
                out.status = rep.passed() ? 0 : 1;
                return;
            }
            std::mt19937_64 rng(g.seed);
            std::vector<std::uint32_t> in(rec_count);
            for (auto& v : in)
                v = static_cast<std::uint32_t>(rng() % rec_in);
            const auto oracle = lcw::rr::RadixOracle::constant(rec_in, rec_out);
            lcw::rr::ReconcilerConfig cfg;
            cfg.k = rec_k;
            std::vector<lcw::rr::TraceLine> trace;
            const auto enc = lcw::rr::encode_stream(in, oracle, cfg, rec_trace ? &trace : nullptr);
            const bool ok = lcw::rr::decode_stream(enc.symbols, oracle, cfg) == in;
            Table t;
            t.title = "Reconciler run";
            t.columns = {"quantity", "value"};
            t.add_row({"input symbols", std::to_string(in.size())});
            t.add_row({"output symbols", std::to_string(enc.symbols.size())});
            t.add_row({"flush symbols", std::to_string(enc.flush_symbols)});
            t.add_row({"efficiency", lcw::report::fixed(enc.efficiency(), 6)});
            t.add_row({"steady efficiency", lcw::report::fixed(enc.steady_efficiency(), 6)});
            t.add_row({"round trip", bool_word(ok)});
            out.tables.push_back(std::move(t));
            if (rec_trace) {
                Table tr;
                tr.title = "Trace";
                tr.columns = {"stage", "B_q", "N_q", "symbol"};
                for (const auto& l : trace)
                    tr.add_row({l.stage, l.b_q.str(), l.n_q.str(), l.symbol ? std::to_string(*l.symbol) : "-"});
                out.tables.push_back(std::move(tr));
            }
            out.status = ok ? 0 : 1;
        };
    });

    // t1l -----------------------------------------------------------------
    auto* t1l = app.add_subcommand("t1l", "paged PAM-3 dictionaries");
    t1l->require_subcommand(1);
    std::string t1l_variant = "reference", t1l_data;
    int t1l_sigma = 1;
    std::size_t t1l_random = 0;
    auto variant_of = [&] {
        return t1l_variant == "broadened" ? lcw::t1l::Variant::broadened : lcw::t1l::Variant::reference;
    };
    auto* t1l_codec = t1l->add_subcommand("codec", "encode codes into words tracking Σdc");
    t1l_codec->add_option("--variant", t1l_variant)->check(CLI::IsMember({"reference", "broadened"}));
    t1l_codec->add_option("--data", t1l_data, "comma-separated codes");
    t1l_codec->add_option("--random", t1l_random, "seeded random codes");
    t1l_codec->add_option("--sigma", t1l_sigma, "initial Σdc (1..4)");
    t1l_codec->callback([&] {
        action = [&] {
            const auto v = variant_of();
            std::vector<std::uint32_t> data = parse_list(t1l_data);
            std::mt19937_64 rng(g.seed);
            int sigma = t1l_sigma;
            Table t;
            t.title = "T1L codec";
            t.columns = {"step", "Σdc", "code", "word", "next Σdc"};
            std::size_t misses = 0;
            const std::size_t total = data.size() + t1l_random;
            for (std::size_t i = 0; i < total; ++i) {
                const auto& page = lcw::t1l::dictionary(v).page(sigma);
                const std::uint32_t code = i < data.size() ? data[i] : static_cast<std::uint32_t>(rng() % page.size());
                const auto e = lcw::t1l::encode_nibble(code, sigma, v);
                const auto d = lcw::t1l::decode_word(e.word, sigma, v);
                misses += d.code != code || d.next_sigma != e.next_sigma;
                if (i < 256)
                    t.add_row({std::to_string(i), std::to_string(sigma), std::to_string(code),
                               lcw::t1l::format_word(e.word, true), std::to_string(e.next_sigma)});
                sigma = e.next_sigma;
            }
            if (total > 256)
                t.notes.push_back("first 256 of " + std::to_string(total) + " words shown");
            t.notes.push_back("decode mismatches: " + std::to_string(misses));
            out.tables.push_back(std::move(t));
            out.status = misses ? 1 : 0;
        };
    });
    auto* t1l_portrait = t1l->add_subcommand("portrait", "exact stationary statistics");
    t1l_portrait->add_option("--variant", t1l_variant)->check(CLI::IsMember({"reference", "broadened"}));
    t1l_portrait->callback([&] {
        action = [&] {
            out.tables.push_back(lcw::report::make_report(
                variant_of() == lcw::t1l::Variant::reference ? "t1l-table7-portrait" : "t1l-table9-portrait"));
        };
    });

    // echo ----------------------------------------------------------------
    auto* echo = app.add_subcommand("echo", "echo rounds, events and the image census");
    echo->require_subcommand(1);
    std::uint64_t echo_nc = 16, echo_ne = 20, echo_e = 2;
    std::vector<unsigned> echo_events;
    bool echo_mii = false;
    auto* echo_plan = echo->add_subcommand("plan", "round length, mocking round and event placement");
    echo_plan->add_option("--nc", echo_nc, "N_C per word");
    echo_plan->add_option("--ne", echo_ne, "N_E per word");
    echo_plan->add_option("--e", echo_e, "echo factor E");
    echo_plan->add_option("--event", echo_events, "event positions, one super group");
    echo_plan->add_flag("--mii", echo_mii, "nine-position nibble granularity");
    echo_plan->callback([&] {
        action = [&] {
            Table t;
            t.title = "Echo plan";
            t.columns = {"item", "value"};
            const unsigned n = lcw::echo::schedule_round(echo_nc, echo_ne, echo_e);
            t.add_row({"n_e", std::to_string(n)});
            if (echo_e && (echo_e & (echo_e - 1)) == 0) {
                const auto m = lcw::echo::mock_round(echo_e);
                t.add_row({"mocking round delay", std::to_string(m.delay_bit_times) + " bit times"});
            }
            const lcw::echo::EventConfig cfg{echo_mii};
            const auto res = lcw::echo::event_resolution(cfg);
            t.add_row({"event resolution", lcw::report::fixed(res.resolution_ns, 0) + " ns ±" +
                                               lcw::report::fixed(res.uncertainty_ns, 0)});
            lcw::echo::SuperGroup sg;
            for (unsigned p : echo_events) {
                const auto pl = sg.place_event(p, cfg);
                t.add_row({"event " + std::to_string(p),
                           "forced value " + std::to_string(lcw::echo::pack_forced(pl.sample)) + " in slots " +
                               std::to_string(pl.first_slot) + ".." + std::to_string(pl.last_slot)});
            }
            out.tables.push_back(std::move(t));
        };
    });

    std::optional<int> cen_droop, cen_dc;
    int cen_tr = 0, cen_mult = 1;
    bool cen_sweep = false;
    auto* echo_census = echo->add_subcommand("census", "PAM-3 image filter census");
    echo_census->add_option("--droop", cen_droop, "head and tail run bound");
    echo_census->add_option("--dc", cen_dc, "|symbol sum| bound in multiplier units");
    echo_census->add_option("--transits", cen_tr, "minimum transits");
    echo_census->add_option("--multiplier", cen_mult, "symbol-sum units per dc unit")->check(CLI::PositiveNumber);
    echo_census->add_flag("--sweep", cen_sweep, "every droop/dc/transit combination");
    echo_census->callback([&] {
        action = [&] {
            if (cen_sweep) {
                out.tables.push_back(lcw::report::census_sweep_table(g.jobs));
                return;
            }
            const lcw::echo::CensusThresholds th{cen_droop, cen_droop, cen_dc, cen_tr, cen_mult};
            const auto n = lcw::echo::image_filter_census(th, g.jobs);
            Table t;
            t.columns = {"accepted", "of", "backend"};
            t.add_row({std::to_string(n), std::to_string(lcw::simd::pam3_image_count),
                       std::string(lcw::simd::backend_name(lcw::simd::active_backend()))});
            out.tables.push_back(std::move(t));
        };
    });

    // report --------------------------------------------------------------
    auto* rep = app.add_subcommand("report", "emit a table report by id");
    std::string rep_id;
    bool rep_list = false;
    rep->add_option("id", rep_id, "report id");
    rep->add_flag("--list", rep_list, "list report ids");
    rep->callback([&] {
        action = [&] {
            if (rep_list || rep_id.empty()) {
                Table t;
                t.columns = {"id", "contents"};
                for (const auto& r : lcw::report::report_ids())
                    t.add_row({std::string(r.id), std::string(r.summary)});
                out.tables.push_back(std::move(t));
                return;
            }
            out.tables.push_back(lcw::report::make_report(rep_id, lcw::report::Params{g.seed, g.jobs}));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (g.backend == "scalar")
            lcw::simd::set_backend(lcw::simd::Backend::scalar);
        else if (g.backend == "avx2")
            lcw::simd::set_backend(lcw::simd::Backend::avx2);
        if (action)
            action();
        const auto fmt = lcw::report::parse_format(g.format);
        std::string text;
        for (std::size_t i = 0; i < out.tables.size(); ++i) {
            if (i && fmt != lcw::report::Format::csv)
                text += "\n";
            text += out.tables[i].render(fmt);
        }
        text += out.raw;
        if (g.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(g.out, std::ios::binary);
            if (!f)
                lcw::fail(lcw::errc::usage_error, "cannot open " + g.out);
            f << text;
        }
        return out.status;
    } catch (const lcw::error& e) {
        std::cerr << "error: " << lcw::to_string(e.code()) << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
