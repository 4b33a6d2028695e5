#include "d2dsim/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2dsim {

const Node& Topology::find(const std::string& id) const {
    for (const Node& n : nodes) {
        if (n.id == id) return n;
    }
    throw std::domain_error("unknown node id '" + id + "'");
}

void Topology::validate() const {
    if (!(cell_radius_m > 0.0) || !std::isfinite(cell_radius_m))
        throw std::domain_error("cell_radius_m must be finite and > 0");
    if (!(pathloss_exponent >= 2.0) || !std::isfinite(pathloss_exponent))
        throw std::domain_error("pathloss_exponent must be finite and >= 2");
    if (!(reference_gain > 0.0) || !std::isfinite(reference_gain))
        throw std::domain_error("reference_gain must be finite and > 0");
    if (!(max_relay_distance_m > 0.0) || std::isnan(max_relay_distance_m))
        throw std::domain_error("max_relay_distance_m must be > 0");

    bool has_bs = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        if (n.id.empty()) throw std::domain_error("node ids must not be empty");
        if (!std::isfinite(n.x) || !std::isfinite(n.y))
            throw std::domain_error("node '" + n.id + "' has non-finite coordinates");
        if (std::hypot(n.x, n.y) > cell_radius_m)
            throw std::domain_error("node '" + n.id + "' lies outside the cell");
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (nodes[j].id == n.id)
                throw std::domain_error("duplicate node id '" + n.id + "'");
        }
        if (n.role == NodeRole::base_station) has_bs = true;
    }
    if (!has_bs) throw std::domain_error("topology needs at least one base_station");

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const D2dPair& p = pairs[i];
        if (p.id.empty()) throw std::domain_error("pair ids must not be empty");
        find(p.source_id);
        find(p.dest_id);
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (pairs[j].id == p.id)
                throw std::domain_error("duplicate pair id '" + p.id + "'");
        }
    }
}

double distance_m(const Node& a, const Node& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double mean_channel_gain(const Topology& topology, const Node& a, const Node& b) {
    const double d = std::max(distance_m(a, b), 1.0);
    return topology.reference_gain * std::pow(d, -topology.pathloss_exponent);
}

std::vector<std::string> filter_candidates(const Topology& topology,
                                           const std::string& source_id,
                                           const std::string& dest_id,
                                           double max_distance_m) {
    if (!(max_distance_m >= 0.0) || std::isnan(max_distance_m))
        throw std::domain_error("max_distance_m must be >= 0");
    const Node& src = topology.find(source_id);
    const Node& dst = topology.find(dest_id);

    std::vector<std::pair<double, std::string>> reachable;
    for (const Node& n : topology.nodes) {
        if (n.role != NodeRole::candidate_relay) continue;
        const double reach = std::max(distance_m(n, src), distance_m(n, dst));
        if (reach <= max_distance_m) reachable.emplace_back(reach, n.id);
    }
    std::sort(reachable.begin(), reachable.end());

    std::vector<std::string> ids;
    ids.reserve(reachable.size());
    for (const auto& [reach, id] : reachable) ids.push_back(id);
    return ids;
}

double estimated_pair_rate(const LinkParams& params, double h0_sq, double g0_sq) {
    LinkRealization r;
    r.h0_sq = h0_sq;
    r.g0_sq = g0_sq;
    r.beta = amplification_factor(params, h0_sq, g0_sq);
    const SinrPair sinr = link_sinrs(params, r);
    return std::min(achievable_rate(sinr.gamma1), achievable_rate(sinr.gamma2));
}

std::string select_max_rate(const std::vector<RelayCandidate>& candidates,
                            const LinkParams& params) {
    if (candidates.empty())
        throw std::domain_error("select_max_rate needs at least one candidate");
    const RelayCandidate* best = nullptr;
    double best_rate = -1.0;
    for (const RelayCandidate& c : candidates) {
        const double rate = estimated_pair_rate(params, c.h0_sq, c.g0_sq);
        if (best == nullptr || rate > best_rate ||
            (rate == best_rate && c.id < best->id)) {
            best = &c;
            best_rate = rate;
        }
    }
    return best->id;
}

TimerOutcome timer_based_select(const std::vector<TimerCandidate>& candidates,
                                double timer_scale) {
    if (candidates.empty())
        throw std::domain_error("timer_based_select needs at least one candidate");
    if (!(timer_scale > 0.0) || !std::isfinite(timer_scale))
        throw std::domain_error("timer_scale must be finite and > 0");
    const TimerCandidate* winner = nullptr;
    for (const TimerCandidate& c : candidates) {
        if (!(c.interference_level >= 0.0) || !std::isfinite(c.interference_level))
            throw std::domain_error("interference_level must be finite and >= 0");
        if (winner == nullptr || c.interference_level < winner->interference_level ||
            (c.interference_level == winner->interference_level && c.id < winner->id))
            winner = &c;
    }
    return {winner->id, timer_scale * winner->interference_level};
}

namespace {

// Shortest-augmenting-path assignment (Jonker-Volgenant flavor) minimizing
// over complete matchings of all rows; requires rows <= cols. Potentials
// u, v and the predecessor array follow the classic 1-indexed formulation.
std::vector<int> solve_rows_min(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> match_col(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match_col[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = match_col[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[match_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match_col[j0] != 0);
        do {
            const int j1 = way[j0];
            match_col[j0] = match_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= m; ++j) {
        if (match_col[j] > 0) row_to_col[match_col[j] - 1] = j - 1;
    }
    return row_to_col;
}

// Minimum total cost of matching min(rows, cols) pairs.
double min_matching_value(const Eigen::MatrixXd& cost) {
    if (cost.rows() == 0 || cost.cols() == 0) return 0.0;
    const Eigen::MatrixXd oriented =
        cost.rows() <= cost.cols() ? cost : Eigen::MatrixXd(cost.transpose());
    const std::vector<int> row_to_col = solve_rows_min(oriented);
    double total = 0.0;
    for (int i = 0; i < oriented.rows(); ++i) total += oriented(i, row_to_col[i]);
    return total;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& a, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
    Eigen::MatrixXd s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
    return s;
}

} // namespace

MatchResult hungarian_match(const Eigen::MatrixXd& cost, bool maximize) {
    const int rows = static_cast<int>(cost.rows());
    const int cols = static_cast<int>(cost.cols());
    if (rows == 0 || cols == 0) throw std::domain_error("cost matrix must not be empty");
    if (!cost.allFinite()) throw std::domain_error("cost matrix entries must be finite");

    const Eigen::MatrixXd w = maximize ? Eigen::MatrixXd(-cost) : cost;
    const double optimum = min_matching_value(w);
    const double eps = 1e-9 * std::max(1.0, std::abs(optimum));
    const int slots = std::min(rows, cols);

    // Lexicographic refinement: walk the rows in order and commit, for each,
    // the smallest column that still completes to the optimal value (or skip
    // the row entirely when no column does and enough rows remain). Each
    // candidate is checked by re-solving the remaining subproblem.
    MatchResult result;
    std::vector<char> col_used(cols, 0);
    double committed = 0.0;

    for (int r = 0; r < rows && static_cast<int>(result.pairs.size()) < slots; ++r) {
        const int needed = slots - static_cast<int>(result.pairs.size());

        std::vector<int> tail_rows;
        for (int i = r + 1; i < rows; ++i) tail_rows.push_back(i);
        std::vector<int> free_cols_base;
        for (int j = 0; j < cols; ++j)
            if (!col_used[j]) free_cols_base.push_back(j);

        int chosen = -1;
        double fallback_total = std::numeric_limits<double>::infinity();
        int fallback_col = -1;
        for (int j : free_cols_base) {
            std::vector<int> free_cols;
            for (int c : free_cols_base)
                if (c != j) free_cols.push_back(c);
            const double tail = needed > 1
                                    ? min_matching_value(submatrix(w, tail_rows, free_cols))
                                    : 0.0;
            const double total = committed + w(r, j) + tail;
            if (total <= optimum + eps) {
                chosen = j;
                break;
            }
            if (total < fallback_total) {
                fallback_total = total;
                fallback_col = j;
            }
        }

        const bool may_skip = rows - r - 1 >= needed;
        if (chosen < 0 && !may_skip) chosen = fallback_col;
        if (chosen < 0) continue;

        result.pairs.emplace_back(static_cast<std::size_t>(r),
                                  static_cast<std::size_t>(chosen));
        col_used[chosen] = 1;
        committed += w(r, chosen);
    }

    for (const auto& [r, c] : result.pairs) result.objective_value += cost(r, c);
    return result;
}

namespace {

Assignment assignment_from_match(
    const MatchResult& match, const std::vector<std::string>& pair_ids,
    const std::vector<std::string>& relay_ids) {
    Assignment out;
    out.objective_value = match.objective_value;
    out.pairs.reserve(match.pairs.size());
    for (const auto& [r, c] : match.pairs)
        out.pairs.emplace_back(pair_ids[r], relay_ids[c]);
    return out;
}

} // namespace

Assignment allocate_relays(
    const std::vector<std::string>& pair_ids,
    const std::vector<std::string>& relay_ids,
    const std::function<double(const std::string&, const std::string&)>& utility) {
    if (pair_ids.empty() || relay_ids.empty())
        throw std::domain_error("allocate_relays needs at least one pair and one relay");
    Eigen::MatrixXd u(pair_ids.size(), relay_ids.size());
    for (std::size_t i = 0; i < pair_ids.size(); ++i)
        for (std::size_t j = 0; j < relay_ids.size(); ++j)
            u(i, j) = utility(pair_ids[i], relay_ids[j]);
    return assignment_from_match(hungarian_match(u, true), pair_ids, relay_ids);
}

Assignment allocate_relays(const Topology& topology, const LinkParams& params) {
    topology.validate();
    std::vector<std::string> pair_ids;
    for (const D2dPair& p : topology.pairs) pair_ids.push_back(p.id);
    std::vector<std::string> relay_ids;
    for (const Node& n : topology.nodes)
        if (n.role == NodeRole::candidate_relay) relay_ids.push_back(n.id);
    if (pair_ids.empty()) throw std::domain_error("topology defines no pairs");
    if (relay_ids.empty()) throw std::domain_error("topology defines no candidate relays");

    auto utility = [&](const std::string& pair_id, const std::string& relay_id) {
        const D2dPair* pair = nullptr;
        for (const D2dPair& p : topology.pairs)
            if (p.id == pair_id) pair = &p;
        const Node& src = topology.find(pair->source_id);
        const Node& dst = topology.find(pair->dest_id);
        const Node& relay = topology.find(relay_id);
        return estimated_pair_rate(params, mean_channel_gain(topology, src, relay),
                                   mean_channel_gain(topology, relay, dst));
    };
    return allocate_relays(pair_ids, relay_ids, utility);
}

Assignment allocate_relays_greedy(
    const std::vector<std::string>& pair_ids,
    const std::vector<std::string>& relay_ids,
    const std::function<double(const std::string&, const std::string&)>& utility) {
    if (pair_ids.empty() || relay_ids.empty())
        throw std::domain_error("allocate_relays_greedy needs at least one pair and one relay");

    Eigen::MatrixXd u(pair_ids.size(), relay_ids.size());
    for (std::size_t i = 0; i < pair_ids.size(); ++i)
        for (std::size_t j = 0; j < relay_ids.size(); ++j)
            u(i, j) = utility(pair_ids[i], relay_ids[j]);

    Assignment out;
    std::vector<char> pair_done(pair_ids.size(), 0), relay_done(relay_ids.size(), 0);
    const std::size_t awards = std::min(pair_ids.size(), relay_ids.size());
    for (std::size_t k = 0; k < awards; ++k) {
        std::ptrdiff_t bi = -1, bj = -1;
        for (std::size_t i = 0; i < pair_ids.size(); ++i) {
            if (pair_done[i]) continue;
            for (std::size_t j = 0; j < relay_ids.size(); ++j) {
                if (relay_done[j]) continue;
                const bool better =
                    bi < 0 || u(i, j) > u(bi, bj) ||
                    (u(i, j) == u(bi, bj) &&
                     std::make_pair(pair_ids[i], relay_ids[j]) <
                         std::make_pair(pair_ids[bi], relay_ids[bj]));
                if (better) {
                    bi = static_cast<std::ptrdiff_t>(i);
                    bj = static_cast<std::ptrdiff_t>(j);
                }
            }
        }
        out.pairs.emplace_back(pair_ids[bi], relay_ids[bj]);
        out.objective_value += u(bi, bj);
        pair_done[bi] = 1;
        relay_done[bj] = 1;
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

} // namespace d2dsim
