#include "d2dsim/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <set>
#include <vector>

#include "d2dsim/csv.hpp"

namespace d2dsim {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& why) {
    throw ConfigError("config line " + std::to_string(line) + ": " + why);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Lexes the text into (section, key, value) entries. Blank lines and
// comments (# or ; to end of line) are dropped here, so the handlers only
// ever see meaningful assignments.
std::vector<Entry> lex(const std::string& text) {
    std::vector<Entry> entries;
    std::string section;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "link" && section != "scenario" && section != "topology" &&
                section != "run")
                fail(lineno, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty()) fail(lineno, "empty key");
        if (e.section.empty()) fail(lineno, "key '" + e.key + "' outside any section");
        entries.push_back(e);
    }
    return entries;
}

double number(const Entry& e) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0' || errno == ERANGE)
        fail(e.line, "key '" + e.key + "': bad number '" + e.value + "'");
    return v;
}

std::uint64_t count(const Entry& e) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0' || errno == ERANGE ||
        e.value.find('-') != std::string::npos)
        fail(e.line, "key '" + e.key + "': bad count '" + e.value + "'");
    return v;
}

std::vector<std::string> comma_split(const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : value) {
        if (ch == ',') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

std::vector<double> number_list(const Entry& e) {
    std::vector<double> out;
    for (const std::string& part : comma_split(e.value)) {
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(part.c_str(), &end);
        if (part.empty() || end == part.c_str() || *end != '\0' || errno == ERANGE)
            fail(e.line, "key '" + e.key + "': bad number '" + part + "'");
        out.push_back(v);
    }
    return out;
}

void check(bool ok, const Entry& e, const std::string& requirement) {
    if (!ok) fail(e.line, "key '" + e.key + "': " + requirement);
}

NodeRole role_from(const Entry& e, const std::string& word) {
    if (word == "d2d_endpoint") return NodeRole::d2d_endpoint;
    if (word == "candidate_relay") return NodeRole::candidate_relay;
    if (word == "base_station") return NodeRole::base_station;
    fail(e.line, "key '" + e.key + "': unknown role '" + word +
                     "' (want d2d_endpoint, candidate_relay, or base_station)");
}

void apply_link(const Entry& e, LinkParams& p) {
    if (e.key == "p1" || e.key == "p2" || e.key == "p_relay") {
        const double v = number(e);
        check(v >= 0.0, e, "must be >= 0");
        (e.key == "p1" ? p.p1 : e.key == "p2" ? p.p2 : p.p_relay) = v;
    } else if (e.key == "sigma_r2" || e.key == "sigma_1_2" || e.key == "sigma_2_2") {
        const double v = number(e);
        check(v > 0.0, e, "must be > 0");
        (e.key == "sigma_r2" ? p.sigma_r2
         : e.key == "sigma_1_2" ? p.sigma_1_2
                                : p.sigma_2_2) = v;
    } else if (e.key == "a1" || e.key == "a2") {
        const double v = number(e);
        check(v >= -1.0 && v <= 1.0, e, "out of range [-1, 1]");
        (e.key == "a1" ? p.a1 : p.a2) = v;
    } else if (e.key == "r_threshold") {
        const double v = number(e);
        check(v >= 0.0, e, "must be >= 0");
        p.r_threshold = v;
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [link]");
    }
}

struct GridSpec {
    double start = 0.0, stop = 30.0, step = 2.0;
    bool triple_seen = false;
    bool explicit_grid = false;
};

void apply_scenario(const Entry& e, Scenario& sc, GridSpec& grid) {
    if (e.key == "variance_h" || e.key == "variance_g") {
        const double v = number(e);
        check(v >= 0.0, e, "must be >= 0");
        (e.key == "variance_h" ? sc.channel_variance_h : sc.channel_variance_g) = v;
    } else if (e.key == "snr_db_start" || e.key == "snr_db_stop" ||
               e.key == "snr_db_step") {
        check(!grid.explicit_grid, e, "conflicts with snr_grid_db");
        const double v = number(e);
        if (e.key == "snr_db_step") check(v > 0.0, e, "must be > 0");
        (e.key == "snr_db_start" ? grid.start
         : e.key == "snr_db_stop" ? grid.stop
                                  : grid.step) = v;
        grid.triple_seen = true;
    } else if (e.key == "snr_grid_db") {
        check(!grid.triple_seen, e, "conflicts with snr_db_start/stop/step");
        const std::vector<double> v = number_list(e);
        for (std::size_t i = 1; i < v.size(); ++i)
            check(v[i] > v[i - 1], e, "must be strictly increasing");
        sc.snr_grid_db = v;
        grid.explicit_grid = true;
    } else if (e.key == "rates") {
        const std::vector<double> v = number_list(e);
        for (double a : v)
            check(a >= -1.0 && a <= 1.0, e,
                  "rate " + std::to_string(a) + " out of range [-1, 1]");
        sc.variation_rates = v;
    } else if (e.key == "trials") {
        const std::uint64_t v = count(e);
        check(v >= 1, e, "trials must be >= 1");
        sc.trials = v;
    } else if (e.key == "seed") {
        sc.master_seed = count(e);
    } else if (e.key == "aging_steps") {
        const std::uint64_t v = count(e);
        check(v >= 1, e, "aging_steps must be >= 1");
        sc.aging_steps = v;
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [scenario]");
    }
}

void apply_topology(const Entry& e, Topology& topo) {
    if (e.key == "cell_radius_m") {
        const double v = number(e);
        check(v > 0.0, e, "must be > 0");
        topo.cell_radius_m = v;
    } else if (e.key == "pathloss_exponent") {
        const double v = number(e);
        check(v >= 2.0, e, "must be >= 2");
        topo.pathloss_exponent = v;
    } else if (e.key == "reference_gain") {
        const double v = number(e);
        check(v > 0.0, e, "must be > 0");
        topo.reference_gain = v;
    } else if (e.key == "max_relay_distance_m") {
        const double v = number(e);
        check(v > 0.0, e, "must be > 0");
        topo.max_relay_distance_m = v;
    } else if (e.key.rfind("node.", 0) == 0) {
        const std::string id = e.key.substr(5);
        check(!id.empty(), e, "node id must not be empty");
        const std::vector<std::string> parts = comma_split(e.value);
        check(parts.size() == 3, e, "want '<role>, <x>, <y>'");
        Node n;
        n.id = id;
        n.role = role_from(e, parts[0]);
        for (int c = 1; c <= 2; ++c) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(parts[c].c_str(), &end);
            if (parts[c].empty() || end == parts[c].c_str() || *end != '\0' ||
                errno == ERANGE)
                fail(e.line, "key '" + e.key + "': bad coordinate '" + parts[c] + "'");
            (c == 1 ? n.x : n.y) = v;
        }
        topo.nodes.push_back(n);
    } else if (e.key.rfind("pair.", 0) == 0) {
        const std::string id = e.key.substr(5);
        check(!id.empty(), e, "pair id must not be empty");
        const std::vector<std::string> parts = comma_split(e.value);
        check(parts.size() == 2 && !parts[0].empty() && !parts[1].empty(), e,
              "want '<source_id>, <dest_id>'");
        topo.pairs.push_back({id, parts[0], parts[1]});
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [topology]");
    }
}

void apply_run(const Entry& e, RunConfig& cfg) {
    if (e.key == "command") {
        check(e.value == "sweep" || e.value == "select" || e.value == "match" ||
                  e.value == "validate",
              e, "unknown command '" + e.value + "'");
        cfg.command = e.value;
    } else if (e.key == "output") {
        check(!e.value.empty(), e, "must not be empty");
        cfg.output_path = e.value;
    } else if (e.key == "workers") {
        const std::uint64_t v = count(e);
        check(v >= 1 && v <= 4096, e, "workers must be in [1, 4096]");
        cfg.workers = static_cast<unsigned>(v);
    } else {
        fail(e.line, "unknown key '" + e.key + "' in [run]");
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    GridSpec grid;
    bool topology_seen = false;

    std::set<std::string> seen;
    for (const Entry& e : lex(text)) {
        const std::string full = e.section + "." + e.key;
        // node.* and pair.* carry their own ids, so repeats are distinct keys
        // already; everything else may be set once.
        if (!seen.insert(full).second)
            fail(e.line, "duplicate key '" + e.key + "' in [" + e.section + "]");

        if (e.section == "link") {
            apply_link(e, cfg.scenario.link);
        } else if (e.section == "scenario") {
            apply_scenario(e, cfg.scenario, grid);
        } else if (e.section == "topology") {
            topology_seen = true;
            if (!cfg.topology) cfg.topology.emplace();
            apply_topology(e, *cfg.topology);
        } else {
            apply_run(e, cfg);
        }
    }

    if (grid.triple_seen) {
        if (!(grid.stop >= grid.start))
            throw ConfigError("config: snr_db_stop must be >= snr_db_start");
        std::vector<double> g;
        for (double db = grid.start; db <= grid.stop + 1e-9; db += grid.step)
            g.push_back(db);
        cfg.scenario.snr_grid_db = g;
    }

    try {
        cfg.scenario.validate();
        if (cfg.topology) cfg.topology->validate();
    } catch (const std::exception& ex) {
        throw ConfigError(std::string("config: ") + ex.what());
    }
    if ((cfg.command == "select" || cfg.command == "match") && !topology_seen)
        throw ConfigError("config: command '" + cfg.command +
                          "' requires a [topology] section");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    try {
        return parse_config(read_file(path));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
    }
}

} // namespace d2dsim
