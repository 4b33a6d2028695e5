#include "d2dsim/run.hpp"

#include <algorithm>
#include <ostream>

#include "d2dsim/csv.hpp"
#include "d2dsim/montecarlo.hpp"
#include "d2dsim/selection.hpp"
#include "d2dsim/validate.hpp"

namespace d2dsim {

namespace {

std::vector<std::string> sorted_pair_ids(const Topology& topo) {
    std::vector<std::string> ids;
    for (const D2dPair& p : topo.pairs) ids.push_back(p.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::string> sorted_relay_ids(const Topology& topo) {
    std::vector<std::string> ids;
    for (const Node& n : topo.nodes)
        if (n.role == NodeRole::candidate_relay) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

const D2dPair& pair_by_id(const Topology& topo, const std::string& id) {
    for (const D2dPair& p : topo.pairs)
        if (p.id == id) return p;
    throw std::domain_error("unknown pair id '" + id + "'");
}

double pair_relay_utility(const Topology& topo, const LinkParams& params,
                          const std::string& pair_id, const std::string& relay_id) {
    const D2dPair& pair = pair_by_id(topo, pair_id);
    const Node& src = topo.find(pair.source_id);
    const Node& dst = topo.find(pair.dest_id);
    const Node& relay = topo.find(relay_id);
    return estimated_pair_rate(params, mean_channel_gain(topo, src, relay),
                               mean_channel_gain(topo, relay, dst));
}

int do_sweep(const RunConfig& cfg, std::ostream& out) {
    const std::vector<OutageCurve> curves = sweep(cfg.scenario, cfg.workers);
    write_file_atomic(cfg.output_path, render_outage_csv(curves));
    std::size_t rows = 0;
    for (const OutageCurve& c : curves) rows += c.points.size();
    out << "wrote " << rows << " sweep rows to " << cfg.output_path << "\n";
    return 0;
}

int do_select(const RunConfig& cfg, std::ostream& out) {
    const Topology& topo = *cfg.topology;
    if (topo.pairs.empty()) throw std::runtime_error("topology defines no pairs");

    std::vector<AssignmentRow> rows;
    for (const std::string& pair_id : sorted_pair_ids(topo)) {
        const D2dPair& pair = pair_by_id(topo, pair_id);
        const std::vector<std::string> in_range = filter_candidates(
            topo, pair.source_id, pair.dest_id, topo.max_relay_distance_m);
        if (in_range.empty())
            throw std::runtime_error("pair '" + pair_id + "' has no relay within " +
                                     std::to_string(topo.max_relay_distance_m) + " m");
        std::vector<RelayCandidate> candidates;
        const Node& src = topo.find(pair.source_id);
        const Node& dst = topo.find(pair.dest_id);
        for (const std::string& relay_id : in_range) {
            const Node& relay = topo.find(relay_id);
            candidates.push_back({relay_id, mean_channel_gain(topo, src, relay),
                                  mean_channel_gain(topo, relay, dst)});
        }
        const std::string winner = select_max_rate(candidates, cfg.scenario.link);
        rows.push_back({pair_id, winner,
                        pair_relay_utility(topo, cfg.scenario.link, pair_id, winner)});
    }
    write_file_atomic(cfg.output_path, render_assignment_csv(rows));
    out << "wrote " << rows.size() << " selections to " << cfg.output_path << "\n";
    return 0;
}

int do_match(const RunConfig& cfg, std::ostream& out) {
    const Topology& topo = *cfg.topology;
    const std::vector<std::string> pair_ids = sorted_pair_ids(topo);
    const std::vector<std::string> relay_ids = sorted_relay_ids(topo);
    if (pair_ids.empty()) throw std::runtime_error("topology defines no pairs");
    if (relay_ids.empty())
        throw std::runtime_error("topology defines no candidate relays");

    auto utility = [&](const std::string& pair_id, const std::string& relay_id) {
        return pair_relay_utility(topo, cfg.scenario.link, pair_id, relay_id);
    };
    const Assignment match = allocate_relays(pair_ids, relay_ids, utility);

    std::vector<AssignmentRow> rows;
    for (const auto& [pair_id, relay_id] : match.pairs)
        rows.push_back({pair_id, relay_id, utility(pair_id, relay_id)});
    write_file_atomic(cfg.output_path, render_assignment_csv(rows));
    out << "wrote " << rows.size() << " matches to " << cfg.output_path
        << " (total utility " << match.objective_value << ")\n";
    return 0;
}

int do_validate(const RunConfig&, std::ostream& out) {
    const std::vector<CheckResult> results = run_validation();
    for (const CheckResult& r : results) {
        if (r.passed)
            out << "ok    " << r.name << "\n";
        else
            out << "FAIL  " << r.name << ": " << r.detail << "\n";
    }
    return all_passed(results) ? 0 : 2;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if ((config.command == "select" || config.command == "match") &&
            !config.topology)
            throw ConfigError("command '" + config.command +
                              "' requires a [topology] section");
        if (config.command == "sweep") return do_sweep(config, out);
        if (config.command == "select") return do_select(config, out);
        if (config.command == "match") return do_match(config, out);
        if (config.command == "validate") return do_validate(config, out);
        throw ConfigError("unknown command '" + config.command + "'");
    } catch (const ConfigError& ex) {
        err << "config error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

} // namespace d2dsim
