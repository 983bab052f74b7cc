#include <doctest.h>

#include <json.hpp>

#include "lcw/error.hpp"
#include "lcw/reports.hpp"
#include "lcw/table.hpp"

using namespace lcw::report;

TEST_SUITE("reports") {

TEST_CASE("formats")
{
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("json") == Format::json);
    CHECK(parse_format("text") == Format::text);
    CHECK_THROWS_AS(parse_format("xml"), lcw::error);
    CHECK(fixed(3.14159, 3) == "3.142");
    CHECK(with_commas(530432) == "530,432");

    Table t;
    t.columns = {"a", "b"};
    t.add_row({"1", "x,y"});
    CHECK_THROWS_AS(t.add_row({"1"}), lcw::error);
    CHECK(t.render(Format::csv) == "a,b\n1,\"x,y\"\n");
    const auto j = nlohmann::json::parse(t.render(Format::json));
    CHECK(j["rows"][0]["b"] == "x,y");
}

TEST_CASE("census report")
{
    const auto csv = make_report("tbt-table13-census").render(Format::csv);
    CHECK(csv.find("valid,3,7,18,47,123,322,843,2207,5778,15127") != std::string::npos);
    const auto j = nlohmann::json::parse(make_report("tbt-table13-census").render(Format::json));
    CHECK(j["id"] == "tbt-table13-census");
}

TEST_CASE("reports are deterministic")
{
    for (const auto& info : report_ids()) {
        if (info.id == "t1-table7-census-sweep" || info.id == "t1s-table30-capacity")
            continue;  // slow; covered from the command line
        const auto a = make_report(info.id).render(Format::csv);
        const auto b = make_report(info.id).render(Format::csv);
        CHECK_MESSAGE(a == b, info.id);
        CHECK_NOTHROW(static_cast<void>(nlohmann::json::parse(make_report(info.id).render(Format::json))));
    }
    CHECK_THROWS_AS(make_report("no-such-report"), lcw::error);
}

}
