#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "d2dsim/relay_link.hpp"

namespace d2dsim {

enum class NodeRole { d2d_endpoint, candidate_relay, base_station };

struct Node {
    std::string id;
    double x = 0.0; // m
    double y = 0.0; // m
    NodeRole role = NodeRole::d2d_endpoint;
};

/// A source/destination endpoint pairing that wants a relay.
struct D2dPair {
    std::string id;
    std::string source_id;
    std::string dest_id;
};

// Cell geometry plus a log-distance propagation model: the mean channel
// gain between two nodes is reference_gain * d^(-pathloss_exponent) with d
// clamped below at 1 m (reference_gain is the gain at 1 m, and co-located
// nodes must not produce an infinite gain).
struct Topology {
    std::vector<Node> nodes;
    std::vector<D2dPair> pairs;
    double cell_radius_m = 500.0;
    double pathloss_exponent = 3.5;
    double reference_gain = 1.0;
    double max_relay_distance_m = std::numeric_limits<double>::infinity();

    /// Throws std::domain_error for an unknown id.
    const Node& find(const std::string& id) const;

    /// Throws std::domain_error on duplicate ids, nodes outside the cell,
    /// a missing base station, out-of-range model parameters, or pairs
    /// referencing unknown nodes.
    void validate() const;
};

double distance_m(const Node& a, const Node& b);

/// Mean gain under the topology's propagation model, usable directly as a
/// channel process variance.
double mean_channel_gain(const Topology& topology, const Node& a, const Node& b);

/// Candidate relays within reach of both endpoints: every candidate_relay
/// node whose max(distance-to-source, distance-to-dest) is at most
/// max_distance_m, sorted by that max distance, ties by id.
std::vector<std::string> filter_candidates(const Topology& topology,
                                           const std::string& source_id,
                                           const std::string& dest_id,
                                           double max_distance_m);

/// Planning utility of a relay link: the end-to-end rate min(R1, R2) the
/// pair would see if the channels held at their estimated gains.
double estimated_pair_rate(const LinkParams& params, double h0_sq, double g0_sq);

struct RelayCandidate {
    std::string id;
    double h0_sq = 0.0;
    double g0_sq = 0.0;
};

/// The candidate maximizing estimated_pair_rate, ties by id ascending.
/// Throws std::domain_error on an empty list.
std::string select_max_rate(const std::vector<RelayCandidate>& candidates,
                            const LinkParams& params);

struct TimerCandidate {
    std::string id;
    double interference_level = 0.0;
};

struct TimerOutcome {
    std::string relay_id;
    double backoff = 0.0;
};

/// Distributed contention by interference-proportional backoff timers:
/// backoff = timer_scale * interference_level, and the first timer to
/// expire wins (ties by id ascending). Throws std::domain_error on an
/// empty list, a negative level, or a non-positive scale.
TimerOutcome timer_based_select(const std::vector<TimerCandidate>& candidates,
                                double timer_scale);

/// Row-to-column pairing from hungarian_match, sorted by row.
struct MatchResult {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double objective_value = 0.0;
};

/// Id-level relay allocation.
struct Assignment {
    std::vector<std::pair<std::string, std::string>> pairs; // (pair_id, relay_id)
    double objective_value = 0.0;
};

/// Optimal one-to-one assignment over a rectangular cost matrix, matching
/// every row or every column of the smaller dimension (min cost, or max
/// utility with maximize). Among equally optimal assignments returns the
/// lexicographically smallest by (row, column) pairs. Throws
/// std::domain_error on an empty or non-finite matrix.
MatchResult hungarian_match(const Eigen::MatrixXd& cost, bool maximize);

/// Utility-maximizing pair-to-relay matching: fills the utility matrix on
/// the cross product and solves with hungarian_match(maximize = true).
Assignment allocate_relays(
    const std::vector<std::string>& pair_ids,
    const std::vector<std::string>& relay_ids,
    const std::function<double(const std::string&, const std::string&)>& utility);

/// Topology-driven allocation: utility of (pair, relay) is
/// estimated_pair_rate with the mean gains of the source-relay and
/// relay-dest hops. Considers every candidate_relay node.
Assignment allocate_relays(const Topology& topology, const LinkParams& params);

/// Baseline for comparison against the optimal matching: repeatedly award
/// the globally best remaining (pair, relay) utility, ties by
/// (pair_id, relay_id) ascending.
Assignment allocate_relays_greedy(
    const std::vector<std::string>& pair_ids,
    const std::vector<std::string>& relay_ids,
    const std::function<double(const std::string&, const std::string&)>& utility);

} // namespace d2dsim
