#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "d2dsim/numerics.hpp"
#include "d2dsim/relay_link.hpp"

namespace d2dsim {

// One outage experiment: a link parameter bundle, channel statistics, the
// SNR grid and the set of variation rates to sweep, and the trial budget.
//
// At grid point snr_db the transmit powers are p1|p2|p_relay (taken as
// relative weights) times 10^(snr_db/10) * sigma_r2, so with the default
// unit weights and equal noise variances the x axis reads as p1/sigma^2.
struct Scenario {
    LinkParams link;
    double channel_variance_h = 3000.0; // E|h|^2, folds the link budget of the s1-relay hop
    double channel_variance_g = 3000.0; // E|g|^2, relay-BS hop
    std::vector<double> snr_grid_db = default_snr_grid_db();
    std::vector<double> variation_rates = {0.998, 0.899, 0.799};
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 0xd2d5eedULL;
    std::uint64_t aging_steps = 1; // AR steps between estimation and use

    static std::vector<double> default_snr_grid_db(); // 0..30 dB, 2 dB steps

    /// Throws std::domain_error on violated ranges, an empty or
    /// non-increasing grid, empty rates, or trials = 0.
    void validate() const;
};

/// Per-grid-point outage estimate.
struct OutagePoint {
    double snr_db = 0.0;
    ConfidenceInterval estimate;
    std::uint64_t trials = 0;
};

/// One curve of the sweep, all grid points at a fixed variation rate.
struct OutageCurve {
    double variation_rate = 1.0;
    std::vector<OutagePoint> points;
};

/// Runs one trial and reports whether the round was in outage. The trial's
/// random stream is derived from (master_seed, rate_index, snr_index,
/// trial_index), so any trial can be replayed in isolation.
bool run_trial_at(const Scenario& scenario, std::size_t snr_index,
                  std::size_t rate_index, std::uint64_t trial_index);

/// Value-addressed form; snr_db and a1 must be entries of the scenario's
/// grid and rate set (streams are keyed by their indices). Throws
/// std::domain_error otherwise.
bool run_trial(const Scenario& scenario, double snr_db, double a1,
               std::uint64_t trial_index);

/// Outage proportion over scenario.trials independent trials with a 95%
/// Wilson interval. The count is a pure function of the scenario; the
/// worker count only changes how trials are spread over threads.
ConfidenceInterval estimate_outage_at(const Scenario& scenario,
                                      std::size_t snr_index, std::size_t rate_index,
                                      unsigned workers = 1);

ConfidenceInterval estimate_outage(const Scenario& scenario, double snr_db,
                                   double a1, unsigned workers = 1);

/// One OutageCurve per variation rate, one point per grid entry.
std::vector<OutageCurve> sweep(const Scenario& scenario, unsigned workers = 1);

} // namespace d2dsim
