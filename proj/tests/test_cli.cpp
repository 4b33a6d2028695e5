// End-to-end checks of the sim binary: each case shells out to the real
// executable (path injected by the build) inside a throwaway directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "d2dsim/csv.hpp"

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        char tmpl[] = "/tmp/climtestXXXXXX";
        path = mkdtemp(tmpl);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

int run_sim(const std::string& args) {
    const std::string cmd =
        std::string(SIM_BINARY_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    REQUIRE(out.good());
}

std::string sweep_config(const TempDir& dir, const std::string& extra_scenario) {
    const std::string path = dir.file("sweep.ini");
    write_text(path,
               "[scenario]\n"
               "trials = 2000\n"
               "snr_grid_db = 10, 20\n"
               "rates = 0.998, 0.799\n" +
                   extra_scenario +
                   "[run]\n"
                   "output = " + dir.file("out.csv") + "\n");
    return path;
}

const char* kTopologyBody =
    "[topology]\n"
    "cell_radius_m = 500\n"
    "pathloss_exponent = 3.5\n"
    "reference_gain = 1e9\n"
    "node.bs = base_station, 0, 0\n"
    "node.s1 = d2d_endpoint, 400, 0\n"
    "node.s2 = d2d_endpoint, -350, 120\n"
    "node.r1 = candidate_relay, 200, 0\n"
    "node.r2 = candidate_relay, 350, 50\n"
    "node.r3 = candidate_relay, -200, 60\n"
    "pair.alpha = s1, bs\n"
    "pair.beta = s2, bs\n";

std::string topology_config(const TempDir& dir, const std::string& range_m) {
    const std::string path = dir.file("topo.ini");
    write_text(path, std::string(kTopologyBody) +
                         "max_relay_distance_m = " + range_m + "\n" +
                         "[run]\n"
                         "output = " + dir.file("assign.csv") + "\n");
    return path;
}

const char* kExpectedAssignments =
    "pair_id,relay_id,utility\n"
    "alpha,r1,0.966911\n"
    "beta,r3,1.01242\n";

} // namespace

TEST_CASE("sweep writes the documented table and exits 0") {
    TempDir dir;
    const std::string cfg = sweep_config(dir, "");
    CHECK(run_sim("sweep --config " + cfg) == 0);
    const std::string text = d2dsim::read_file(dir.file("out.csv"));
    CHECK(text.rfind("variation_rate,snr_db,trials,outage_point,outage_lo,"
                     "outage_hi\n", 0) == 0);
    // 2 rates x 2 grid points plus the header
    CHECK(d2dsim::parse_outage_csv(text).size() == 2);
}

TEST_CASE("same config and seed reproduce the same bytes at any worker count") {
    TempDir dir;
    const std::string cfg = sweep_config(dir, "seed = 7\n");
    REQUIRE(run_sim("sweep --config " + cfg) == 0);
    const std::string first = d2dsim::read_file(dir.file("out.csv"));
    REQUIRE(run_sim("sweep --config " + cfg) == 0);
    CHECK(d2dsim::read_file(dir.file("out.csv")) == first);
    REQUIRE(run_sim("sweep --config " + cfg + " --workers 4") == 0);
    CHECK(d2dsim::read_file(dir.file("out.csv")) == first);
}

TEST_CASE("--seed overrides the config seed") {
    TempDir dir;
    const std::string cfg_seed1 = sweep_config(dir, "seed = 1\n");
    REQUIRE(run_sim("sweep --config " + cfg_seed1) == 0);
    const std::string seed1 = d2dsim::read_file(dir.file("out.csv"));

    REQUIRE(run_sim("sweep --config " + cfg_seed1 + " --seed 2") == 0);
    const std::string overridden = d2dsim::read_file(dir.file("out.csv"));
    CHECK(overridden != seed1);

    // The override must agree with a config that says seed = 2 outright.
    TempDir dir2;
    const std::string cfg_seed2 = sweep_config(dir2, "seed = 2\n");
    REQUIRE(run_sim("sweep --config " + cfg_seed2) == 0);
    CHECK(d2dsim::read_file(dir2.file("out.csv")) == overridden);
}

TEST_CASE("--out redirects the output file") {
    TempDir dir;
    const std::string cfg = sweep_config(dir, "");
    const std::string other = dir.file("elsewhere.csv");
    CHECK(run_sim("sweep --config " + cfg + " --out " + other) == 0);
    CHECK(std::filesystem::exists(other));
    CHECK_FALSE(std::filesystem::exists(dir.file("out.csv")));
}

TEST_CASE("select picks the best relay per pair") {
    TempDir dir;
    const std::string cfg = topology_config(dir, "300");
    CHECK(run_sim("select --config " + cfg) == 0);
    CHECK(d2dsim::read_file(dir.file("assign.csv")) == kExpectedAssignments);
}

TEST_CASE("match assigns relays one-to-one") {
    TempDir dir;
    const std::string cfg = topology_config(dir, "300");
    CHECK(run_sim("match --config " + cfg) == 0);
    // With three relays for two pairs the per-pair optima do not collide,
    // so the matching agrees with independent selection.
    CHECK(d2dsim::read_file(dir.file("assign.csv")) == kExpectedAssignments);
}

TEST_CASE("a config range violation exits 1") {
    TempDir dir;
    const std::string cfg = dir.file("bad.ini");
    write_text(cfg, "[scenario]\ntrials = 0\n");
    CHECK(run_sim("sweep --config " + cfg) == 1);
}

TEST_CASE("select without a topology exits 1") {
    CHECK(run_sim("select") == 1);
}

TEST_CASE("an unreachable pair exits 2") {
    TempDir dir;
    // 50 m reaches no relay from either pair.
    const std::string cfg = topology_config(dir, "50");
    CHECK(run_sim("select --config " + cfg) == 2);
    CHECK_FALSE(std::filesystem::exists(dir.file("assign.csv")));
}

TEST_CASE("argument errors and help") {
    CHECK(run_sim("teleport") == 1);
    CHECK(run_sim("") == 1);
    CHECK(run_sim("--help") == 0);
    CHECK(run_sim("sweep --config /no/such/file.ini") == 1);
    CHECK(run_sim("sweep --workers 0") == 1);
}

TEST_CASE("the validation battery passes end to end") {
    CHECK(run_sim("validate") == 0);
}
