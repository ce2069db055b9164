#include "doctest.h"

#include "coarse_ends/builtin.hpp"
#include "coarse_ends/config.hpp"
#include "coarse_ends/errors.hpp"
#include "coarse_ends/report.hpp"

using namespace coarse_ends;
using nlohmann::json;

namespace {

RunConfig cmd(const std::string& c) {
    RunConfig cfg;
    cfg.command = c;
    return cfg;
}

std::size_t config_error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line;
    }
    FAIL("expected ConfigError for: " << text);
    return 0;
}

}  // namespace

TEST_CASE("radii schedules") {
    CHECK(parse_radii("1..5") == std::vector<Norm>{1, 2, 3, 4, 5});
    CHECK(parse_radii("1,2,4,8") == std::vector<Norm>{1, 2, 4, 8});
    CHECK_THROWS_AS(parse_radii("5..1"), InvalidRadii);
    CHECK_THROWS_AS(parse_radii("1,1,2"), InvalidRadii);
    CHECK_THROWS_AS(parse_radii("a..b"), InvalidRadii);
    CHECK_THROWS_AS(parse_radii("-1..3"), InvalidRadii);
    RunConfig c;
    c.radii = "auto";
    auto q = resolve_radii(c, make_group("Q-like"));
    CHECK(q.radii.front() == 1);
    CHECK(q.radii.size() >= 5);
    auto f = resolve_radii(c, make_group("F2"));
    CHECK(f.radii.size() <= 6);
}

TEST_CASE("config parsing") {
    RunConfig c = parse_config(R"({"group": "Z^2", "radii": [1, 2, 3, 4, 5], "seed": 9, "M": [1, 3]})");
    CHECK(c.group == "Z^2");
    CHECK(c.radii == "1,2,3,4,5");
    CHECK(c.seed == 9);
    CHECK(c.M == std::vector<Norm>{1, 3});
    RunConfig base;
    base.group = "F2";
    CHECK(parse_config("{}", base).group == "F2");
}

TEST_CASE("config errors carry line numbers") {
    CHECK(config_error_line("{\n  \"group\": \"Z\",\n  \"radii\": ,\n}") == 3);
    CHECK(config_error_line("{\n  \"group\": \"Z\",\n\n  \"colour\": 3\n}") == 4);
    CHECK(config_error_line("{\n  \"seed\": \"seven\"\n}") == 2);
    CHECK(config_error_line("{\n  \"window\": 1\n}") == 0);  // validation errors have no single key line
    CHECK(config_error_line("{\n\n  \"radii\": \"4..2\"\n}") == 3);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("ends report") {
    RunConfig c = cmd("ends");
    c.radii = "1..20";
    auto r = run_command(c);
    CHECK(r.exit_code == 0);
    CHECK(r.report["verdict"]["classification"] == "Exactly(2)");
    CHECK(r.report["seed"] == 1);
    CHECK(r.report["parameters"]["horizon"] == 60);
    CHECK(r.report["parameters"].contains("truncated"));
    CHECK(r.report["parameters"].contains("memory_cap"));
    CHECK(r.report["levels"].size() == 20);
    CHECK(r.report["ncc"]["lower_bound"] == 2);
    CHECK(!r.dot.empty());
    CHECK(r.table.find("Exactly(2)") != std::string::npos);
}

TEST_CASE("ends report for the rational chain with automatic radii") {
    RunConfig c = cmd("ends");
    c.group = "Q-like";
    c.radii = "auto";
    auto r = run_command(c);
    CHECK(r.exit_code == 0);
    CHECK(r.report["verdict"]["classification"] == "Exactly(1)");
}

TEST_CASE("inconclusive runs exit with 2") {
    RunConfig c = cmd("ends");
    c.radii = "1..3";
    CHECK(run_command(c).exit_code == 2);
    c.radii = "1..10";
    c.memory_cap = 1;  // only the identity fits
    auto r = run_command(c);
    CHECK(r.exit_code == 2);
    CHECK(r.report["verdict"]["classification"] == "Inconclusive");
    CHECK(r.report["parameters"]["truncated"] == true);
}

TEST_CASE("glacial report") {
    RunConfig c = cmd("glacial");
    c.fixtures = {"Z evens", "Z positives", "Z empty set"};
    auto r = run_command(c);
    CHECK(r.exit_code == 0);
    const auto& rows = r.report["fixtures"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["chain_absorption"] == false);
    CHECK(rows[0]["glacial_oscillation"] == false);
    CHECK(rows[0]["coarsely_clopen"] == false);
    CHECK(rows[0]["almost_invariance"]["verdict"] == "NotAlmostInvariant");
    for (std::size_t i : {1, 2}) {
        CHECK(rows[i]["chain_absorption"] == true);
        CHECK(rows[i]["glacial_oscillation"] == true);
        CHECK(rows[i]["coarsely_clopen"] == true);
        CHECK(rows[i]["almost_invariance"]["verdict"] == "AlmostInvariant");
    }
    CHECK(r.report["summary"]["inconclusive_rate"] == 0.0);
    c.fixtures = {"no such fixture"};
    CHECK_THROWS_AS(run_command(c), ConfigError);
}

TEST_CASE("almost-invariant report") {
    RunConfig c = cmd("almost-invariant");
    c.group = "Z";
    c.set = "evens";
    auto r = run_command(c);
    CHECK(r.exit_code == 0);
    CHECK(r.report["almost_invariance"]["verdict"] == "NotAlmostInvariant");
    CHECK(r.report["crosscheck"]["result"] == "Agreement");
    CHECK(r.report["almost_invariance"].contains("witness"));
}

TEST_CASE("coarse report") {
    RunConfig c = cmd("coarse");
    auto r = run_command(c);
    CHECK(r.exit_code == 0);
    CHECK(r.report["ends"]["atom_count"] == 4);
    CHECK(r.report["star_calculus_selftest"]["passes"] == 1000);
    CHECK(r.report["star_calculus_selftest"]["complement_violations"] == 0);
    CHECK(r.report["star_calculus_selftest"]["star_inclusion_violations"] == 0);

    c.cover_radii = {0};  // singleton covers
    c.trials = 10;
    auto s = run_command(c);
    for (const auto& cand : s.report["candidates"]["sets"])
        for (const auto& v : cand["clopen_by_cover"]) {
            CHECK(v["overlap_size"] == 0);
            CHECK(v["bounded"] == true);
        }
    c.space = "sphere:3";
    CHECK_THROWS_AS(run_command(c), ConfigError);
}

TEST_CASE("reports are deterministic") {
    RunConfig c = cmd("almost-invariant");
    c.group = "F2";
    c.set = "prefix:a";
    c.set_radius = 7;
    c.seed = 11;
    const std::string a = dump_report(run_command(c).report);
    const std::string b = dump_report(run_command(c).report);
    CHECK(a == b);
    CHECK(a.find("\"seed\": 11") != std::string::npos);
}

TEST_CASE("selftest") {
    auto r = run_command(cmd("selftest"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["pass"] == true);
    CHECK_THROWS_AS(run_command(cmd("frobnicate")), ConfigError);
}
