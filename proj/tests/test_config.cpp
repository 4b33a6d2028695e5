#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "d2dsim/config.hpp"

using d2dsim::ConfigError;
using d2dsim::NodeRole;
using d2dsim::parse_config;
using d2dsim::RunConfig;

TEST_CASE("empty text yields the default run") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.command == "sweep");
    CHECK(cfg.output_path == "out.csv");
    CHECK(cfg.workers == 1);
    CHECK_FALSE(cfg.topology.has_value());

    CHECK(cfg.scenario.trials == 100000);
    CHECK(cfg.scenario.channel_variance_h == 3000.0);
    CHECK(cfg.scenario.channel_variance_g == 3000.0);
    CHECK(cfg.scenario.aging_steps == 1);
    CHECK(cfg.scenario.link.r_threshold == 5.0);
    CHECK(cfg.scenario.variation_rates ==
          std::vector<double>{0.998, 0.899, 0.799});
    REQUIRE(cfg.scenario.snr_grid_db.size() == 16);
    CHECK(cfg.scenario.snr_grid_db.front() == 0.0);
    CHECK(cfg.scenario.snr_grid_db.back() == 30.0);
}

TEST_CASE("bare section headers change nothing") {
    const RunConfig cfg = parse_config("[scenario]\n[link]\n[run]\n");
    CHECK(cfg.scenario.trials == 100000);
    CHECK(cfg.command == "sweep");
}

TEST_CASE("comments and whitespace are ignored") {
    const RunConfig cfg = parse_config(
        "# leading comment\n"
        "\n"
        "[scenario]  ; trailing comment\n"
        "  trials = 500   # inline\n"
        "; full-line\n");
    CHECK(cfg.scenario.trials == 500);
}

TEST_CASE("scenario keys land in the scenario") {
    const RunConfig cfg = parse_config(
        "[scenario]\n"
        "variance_h = 10\n"
        "variance_g = 20\n"
        "rates = 0.9, 0.5\n"
        "trials = 1234\n"
        "seed = 42\n"
        "aging_steps = 3\n"
        "snr_grid_db = 1, 2, 4\n");
    CHECK(cfg.scenario.channel_variance_h == 10.0);
    CHECK(cfg.scenario.channel_variance_g == 20.0);
    CHECK(cfg.scenario.variation_rates == std::vector<double>{0.9, 0.5});
    CHECK(cfg.scenario.trials == 1234);
    CHECK(cfg.scenario.master_seed == 42);
    CHECK(cfg.scenario.aging_steps == 3);
    CHECK(cfg.scenario.snr_grid_db == std::vector<double>{1.0, 2.0, 4.0});
}

TEST_CASE("link keys land in the link parameters") {
    const RunConfig cfg = parse_config(
        "[link]\n"
        "p1 = 2\n"
        "p2 = 3\n"
        "p_relay = 4\n"
        "sigma_r2 = 0.5\n"
        "sigma_1_2 = 0.25\n"
        "sigma_2_2 = 0.125\n"
        "a1 = 0.95\n"
        "a2 = 0.9\n"
        "r_threshold = 2.5\n");
    const auto& p = cfg.scenario.link;
    CHECK(p.p1 == 2.0);
    CHECK(p.p2 == 3.0);
    CHECK(p.p_relay == 4.0);
    CHECK(p.sigma_r2 == 0.5);
    CHECK(p.sigma_1_2 == 0.25);
    CHECK(p.sigma_2_2 == 0.125);
    CHECK(p.a1 == 0.95);
    CHECK(p.a2 == 0.9);
    CHECK(p.r_threshold == 2.5);
}

TEST_CASE("the snr triple expands to an inclusive grid") {
    const RunConfig cfg = parse_config(
        "[scenario]\n"
        "snr_db_start = 0\n"
        "snr_db_stop = 10\n"
        "snr_db_step = 5\n");
    CHECK(cfg.scenario.snr_grid_db == std::vector<double>{0.0, 5.0, 10.0});
}

TEST_CASE("grid triple and explicit grid exclude each other") {
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\n"
                                      "snr_grid_db = 1, 2\n"
                                      "snr_db_start = 0\n"),
                         doctest::Contains("conflicts with snr_grid_db"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\n"
                                      "snr_db_stop = 8\n"
                                      "snr_grid_db = 1, 2\n"),
                         doctest::Contains("conflicts with snr_db_start"),
                         ConfigError);
}

TEST_CASE("range violations name the key and the line") {
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\ntrials = 0\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\ntrials = 0\n"),
                         doctest::Contains("trials"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\nrates = 0.9, 1.5\n"),
                         doctest::Contains("out of range [-1, 1]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\naging_steps = 0\n"),
                         doctest::Contains("aging_steps"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[link]\nsigma_r2 = 0\n"),
                         doctest::Contains("must be > 0"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[link]\na1 = -1.01\n"),
                         doctest::Contains("[-1, 1]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\nsnr_grid_db = 2, 2\n"),
                         doctest::Contains("strictly increasing"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[run]\nworkers = 0\n"),
                         doctest::Contains("workers"), ConfigError);
}

TEST_CASE("syntax errors name the line") {
    CHECK_THROWS_WITH_AS(parse_config("[bogus]\n"),
                         doctest::Contains("unknown section"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario\n"),
                         doctest::Contains("unterminated section"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\ntrials\n"),
                         doctest::Contains("expected key = value"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("trials = 5\n"),
                         doctest::Contains("outside any section"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\nbanana = 1\n"),
                         doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\ntrials = ten\n"),
                         doctest::Contains("bad count"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[link]\np1 = fast\n"),
                         doctest::Contains("bad number"), ConfigError);
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config("[scenario]\ntrials = 5\ntrials = 6\n"),
                         doctest::Contains("duplicate key 'trials'"), ConfigError);
}

TEST_CASE("a full topology parses into nodes and pairs") {
    const RunConfig cfg = parse_config(
        "[topology]\n"
        "cell_radius_m = 500\n"
        "pathloss_exponent = 3\n"
        "reference_gain = 1e9\n"
        "max_relay_distance_m = 300\n"
        "node.bs = base_station, 0, 0\n"
        "node.s1 = d2d_endpoint, 400, 0\n"
        "node.r1 = candidate_relay, 200, 0\n"
        "pair.alpha = s1, bs\n"
        "[run]\n"
        "command = select\n");
    REQUIRE(cfg.topology.has_value());
    const auto& t = *cfg.topology;
    CHECK(t.cell_radius_m == 500.0);
    CHECK(t.pathloss_exponent == 3.0);
    CHECK(t.reference_gain == 1e9);
    CHECK(t.max_relay_distance_m == 300.0);
    REQUIRE(t.nodes.size() == 3);
    CHECK(t.nodes[1].id == "s1");
    CHECK(t.nodes[1].x == 400.0);
    CHECK(t.nodes[1].role == NodeRole::d2d_endpoint);
    REQUIRE(t.pairs.size() == 1);
    CHECK(t.pairs[0].id == "alpha");
    CHECK(t.pairs[0].source_id == "s1");
    CHECK(t.pairs[0].dest_id == "bs");
    CHECK(cfg.command == "select");
}

TEST_CASE("an unbounded relay range parses as infinity") {
    const RunConfig cfg = parse_config(
        "[topology]\n"
        "max_relay_distance_m = inf\n"
        "node.bs = base_station, 0, 0\n");
    CHECK(std::isinf(cfg.topology->max_relay_distance_m));
}

TEST_CASE("malformed topology entries are rejected") {
    CHECK_THROWS_WITH_AS(
        parse_config("[topology]\nnode.a = captain, 0, 0\n"),
        doctest::Contains("unknown role"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config("[topology]\nnode.a = base_station, east, 0\n"),
        doctest::Contains("bad coordinate"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config("[topology]\nnode.a = base_station, 0\n"),
        doctest::Contains("want '<role>, <x>, <y>'"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config("[topology]\npair.p = s1\n"),
        doctest::Contains("want '<source_id>, <dest_id>'"), ConfigError);
    // Structural problems surface through the final validation pass.
    CHECK_THROWS_AS(parse_config("[topology]\n"
                                 "node.bs = base_station, 0, 0\n"
                                 "pair.p = ghost, bs\n"),
                    ConfigError);
}

TEST_CASE("select and match demand a topology") {
    CHECK_THROWS_WITH_AS(parse_config("[run]\ncommand = select\n"),
                         doctest::Contains("requires a [topology] section"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[run]\ncommand = match\n"),
                         doctest::Contains("requires a [topology] section"),
                         ConfigError);
    CHECK_NOTHROW(parse_config("[run]\ncommand = validate\n"));
}

TEST_CASE("run keys land in the run config") {
    const RunConfig cfg = parse_config(
        "[run]\n"
        "command = validate\n"
        "output = results/out.csv\n"
        "workers = 8\n");
    CHECK(cfg.command == "validate");
    CHECK(cfg.output_path == "results/out.csv");
    CHECK(cfg.workers == 8);
    CHECK_THROWS_WITH_AS(parse_config("[run]\ncommand = fly\n"),
                         doctest::Contains("unknown command"), ConfigError);
}
