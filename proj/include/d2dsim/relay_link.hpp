#pragma once

namespace d2dsim {

// Parameter bundle of a two-way amplify-and-forward round between a
// cell-edge endpoint s1 and the base station through a mobile relay d1.
// Powers are in watts, noise variances in watts, rates in bits/s/Hz.
struct LinkParams {
    double p1 = 1.0;        // transmit power of s1
    double p2 = 1.0;        // transmit power of the BS
    double p_relay = 1.0;   // transmit power budget of the relay d1
    double sigma_r2 = 1.0;  // noise variance at the relay
    double sigma_1_2 = 1.0; // noise variance at s1
    double sigma_2_2 = 1.0; // noise variance at the BS
    double a1 = 0.998;      // variation rate of the s1-relay channel h
    double a2 = 0.998;      // variation rate of the relay-BS channel g
    double r_threshold = 5.0; // target rate R_th

    /// Throws std::domain_error on any violated range.
    void validate() const;
};

/// One channel draw as the receivers know it: the squared magnitudes of the
/// initial estimates and the relay amplification factor computed from them.
struct LinkRealization {
    double h0_sq = 0.0;
    double g0_sq = 0.0;
    double beta = 0.0;
};

/// SINRs measured at s1 (gamma1) and at the BS (gamma2), linear scale.
struct SinrPair {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

/// AF amplification factor normalizing the relay's mean received power to
/// its budget: beta = sqrt(p_relay / (p1 h0_sq + p2 g0_sq + sigma_r2)).
double amplification_factor(const LinkParams& params, double h0_sq, double g0_sq);

/// SINR at the cell-edge endpoint after self-interference subtraction with a
/// stale estimate. The (1 - a1^2) terms are the residual interference left
/// by channel aging.
double sinr_s1(const LinkParams& params, const LinkRealization& real);

/// SINR at the base station under the same aging model.
double sinr_bs(const LinkParams& params, const LinkRealization& real);

/// Both SINRs of one realization.
SinrPair link_sinrs(const LinkParams& params, const LinkRealization& real);

/// Half-duplex rate of the two-slot round: R = 0.5 log2(1 + gamma).
/// Throws std::domain_error on negative or non-finite gamma.
double achievable_rate(double gamma);

/// True iff min(r1, r2) < r_threshold (strict comparison).
bool outage_indicator(double r1, double r2, double r_threshold) noexcept;

} // namespace d2dsim
