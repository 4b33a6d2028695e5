#include "d2dsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "d2dsim/channel.hpp"
#include "d2dsim/rng.hpp"

namespace d2dsim {

std::vector<double> Scenario::default_snr_grid_db() {
    std::vector<double> grid;
    for (int db = 0; db <= 30; db += 2) grid.push_back(static_cast<double>(db));
    return grid;
}

void Scenario::validate() const {
    link.validate();
    if (!(channel_variance_h >= 0.0) || !std::isfinite(channel_variance_h))
        throw std::domain_error("channel_variance_h must be finite and >= 0");
    if (!(channel_variance_g >= 0.0) || !std::isfinite(channel_variance_g))
        throw std::domain_error("channel_variance_g must be finite and >= 0");
    if (snr_grid_db.empty())
        throw std::domain_error("snr_grid_db must not be empty");
    for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
        if (!std::isfinite(snr_grid_db[i]))
            throw std::domain_error("snr_grid_db entries must be finite");
        if (i > 0 && !(snr_grid_db[i] > snr_grid_db[i - 1]))
            throw std::domain_error("snr_grid_db must be strictly increasing");
    }
    if (variation_rates.empty())
        throw std::domain_error("variation_rates must not be empty");
    for (double a : variation_rates) {
        if (!std::isfinite(a) || std::abs(a) > 1.0)
            throw std::domain_error("variation_rates entries must lie in [-1, 1]");
    }
    if (trials == 0) throw std::domain_error("trials must be positive");
    if (aging_steps == 0) throw std::domain_error("aging_steps must be >= 1");
}

namespace {

std::size_t index_of(const std::vector<double>& values, double value,
                     const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == value) return i;
    }
    throw std::domain_error(std::string(what) + " " + std::to_string(value) +
                            " is not on the scenario grid");
}

// Scales the configured power weights to the grid point. Powers grow with
// SNR while the noise floors stay fixed, so snr_db is the per-node transmit
// SNR relative to the relay noise.
LinkParams params_at(const Scenario& scenario, std::size_t snr_index,
                     std::size_t rate_index) {
    LinkParams p = scenario.link;
    const double scale =
        std::pow(10.0, scenario.snr_grid_db.at(snr_index) / 10.0) * p.sigma_r2;
    p.p1 *= scale;
    p.p2 *= scale;
    p.p_relay *= scale;
    const double a1 = scenario.variation_rates.at(rate_index);
    p.a1 = a1;
    p.a2 = a1;
    return p;
}

} // namespace

bool run_trial_at(const Scenario& scenario, std::size_t snr_index,
                  std::size_t rate_index, std::uint64_t trial_index) {
    const LinkParams p = params_at(scenario, snr_index, rate_index);

    CounterRng rng = CounterRng::from_path(
        scenario.master_seed,
        {static_cast<std::uint64_t>(rate_index),
         static_cast<std::uint64_t>(snr_index), trial_index});

    ChannelProcess h = init_channel(p.a1, scenario.channel_variance_h, rng);
    ChannelProcess g = init_channel(p.a2, scenario.channel_variance_g, rng);
    for (std::uint64_t s = 0; s < scenario.aging_steps; ++s) {
        h = step_channel(h, rng);
        g = step_channel(g, rng);
    }

    // Everything downstream runs on the estimates: the relay gain is fixed
    // from them, and the closed-form SINRs already average in the mismatch
    // between estimate and aged channel through their (1 - a1^2) terms.
    LinkRealization r;
    r.h0_sq = gain_sq(h.estimate);
    r.g0_sq = gain_sq(g.estimate);
    r.beta = amplification_factor(p, r.h0_sq, r.g0_sq);

    const SinrPair sinr = link_sinrs(p, r);
    const double r1 = achievable_rate(sinr.gamma1);
    const double r2 = achievable_rate(sinr.gamma2);
    return outage_indicator(r1, r2, p.r_threshold);
}

bool run_trial(const Scenario& scenario, double snr_db, double a1,
               std::uint64_t trial_index) {
    const std::size_t snr_index = index_of(scenario.snr_grid_db, snr_db, "snr_db");
    const std::size_t rate_index =
        index_of(scenario.variation_rates, a1, "variation rate");
    return run_trial_at(scenario, snr_index, rate_index, trial_index);
}

ConfidenceInterval estimate_outage_at(const Scenario& scenario,
                                      std::size_t snr_index, std::size_t rate_index,
                                      unsigned workers) {
    scenario.validate();
    if (snr_index >= scenario.snr_grid_db.size())
        throw std::out_of_range("snr_index out of range");
    if (rate_index >= scenario.variation_rates.size())
        throw std::out_of_range("rate_index out of range");
    if (workers == 0) workers = 1;

    const std::uint64_t n = scenario.trials;
    const unsigned used = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));

    // Each worker owns a contiguous block of trial indices and counts
    // successes locally; the merge is a sum, so the total is independent of
    // the worker count and of scheduling.
    std::vector<std::uint64_t> counts(used, 0);
    auto count_block = [&](unsigned w) {
        const std::uint64_t lo = n * w / used;
        const std::uint64_t hi = n * (w + 1) / used;
        std::uint64_t c = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
            if (run_trial_at(scenario, snr_index, rate_index, t)) ++c;
        }
        counts[w] = c;
    };

    if (used == 1) {
        count_block(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(used);
        for (unsigned w = 0; w < used; ++w) pool.emplace_back(count_block, w);
        for (std::thread& th : pool) th.join();
    }

    std::uint64_t successes = 0;
    for (std::uint64_t c : counts) successes += c;
    return wilson_interval(successes, n, 0.95);
}

ConfidenceInterval estimate_outage(const Scenario& scenario, double snr_db,
                                   double a1, unsigned workers) {
    const std::size_t snr_index = index_of(scenario.snr_grid_db, snr_db, "snr_db");
    const std::size_t rate_index =
        index_of(scenario.variation_rates, a1, "variation rate");
    return estimate_outage_at(scenario, snr_index, rate_index, workers);
}

std::vector<OutageCurve> sweep(const Scenario& scenario, unsigned workers) {
    scenario.validate();
    std::vector<OutageCurve> curves;
    curves.reserve(scenario.variation_rates.size());
    for (std::size_t ri = 0; ri < scenario.variation_rates.size(); ++ri) {
        OutageCurve curve;
        curve.variation_rate = scenario.variation_rates[ri];
        curve.points.reserve(scenario.snr_grid_db.size());
        for (std::size_t si = 0; si < scenario.snr_grid_db.size(); ++si) {
            OutagePoint pt;
            pt.snr_db = scenario.snr_grid_db[si];
            pt.estimate = estimate_outage_at(scenario, si, ri, workers);
            pt.trials = scenario.trials;
            curve.points.push_back(pt);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

} // namespace d2dsim
