#include "d2dsim/relay_link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace d2dsim {

namespace {

void require_finite_nonneg(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::domain_error(std::string("LinkParams: ") + name +
                                " must be finite and >= 0");
    }
}

void require_realization(const LinkRealization& real) {
    if (!std::isfinite(real.h0_sq) || real.h0_sq < 0.0 ||
        !std::isfinite(real.g0_sq) || real.g0_sq < 0.0 ||
        !std::isfinite(real.beta) || real.beta < 0.0) {
        throw std::domain_error("LinkRealization: fields must be finite and >= 0");
    }
}

} // namespace

void LinkParams::validate() const {
    require_finite_nonneg(p1, "p1");
    require_finite_nonneg(p2, "p2");
    require_finite_nonneg(p_relay, "p_relay");
    require_finite_nonneg(r_threshold, "r_threshold");
    if (!std::isfinite(sigma_r2) || sigma_r2 <= 0.0 ||
        !std::isfinite(sigma_1_2) || sigma_1_2 <= 0.0 ||
        !std::isfinite(sigma_2_2) || sigma_2_2 <= 0.0) {
        throw std::domain_error("LinkParams: noise variances must be finite and > 0");
    }
    if (!std::isfinite(a1) || std::abs(a1) > 1.0 ||
        !std::isfinite(a2) || std::abs(a2) > 1.0) {
        throw std::domain_error("LinkParams: variation rates must lie in [-1, 1]");
    }
}

double amplification_factor(const LinkParams& params, double h0_sq, double g0_sq) {
    params.validate();
    if (!std::isfinite(h0_sq) || h0_sq < 0.0 || !std::isfinite(g0_sq) || g0_sq < 0.0) {
        throw std::domain_error("amplification_factor: gains must be finite and >= 0");
    }
    // sigma_r2 > 0 keeps the denominator positive.
    return std::sqrt(params.p_relay /
                     (params.p1 * h0_sq + params.p2 * g0_sq + params.sigma_r2));
}

double sinr_s1(const LinkParams& params, const LinkRealization& real) {
    params.validate();
    require_realization(real);

    const double b2 = real.beta * real.beta;
    const double a2 = params.a1 * params.a1;
    const double aged = 1.0 - a2;
    const double h = real.h0_sq;
    const double g = real.g0_sq;

    // gamma1 = b2 a2 P2 h g /
    //          (2 b2 a2 P1 h (1-a2) + b2 a2 h sr2 + b2 a2 P2 g (1-a2) + s12)
    const double num = b2 * a2 * params.p2 * h * g;
    const double den = 2.0 * b2 * a2 * params.p1 * h * aged +
                       b2 * a2 * h * params.sigma_r2 +
                       b2 * a2 * params.p2 * g * aged + params.sigma_1_2;
    return num / den;
}

double sinr_bs(const LinkParams& params, const LinkRealization& real) {
    params.validate();
    require_realization(real);

    const double b2 = real.beta * real.beta;
    const double a2 = params.a1 * params.a1;
    const double aged = 1.0 - a2;
    const double h = real.h0_sq;
    const double g = real.g0_sq;

    // gamma2 = b2 a2 P1 h g / (b2 a2 P1 g (1-a2) + b2 P1 g + s22)
    const double num = b2 * a2 * params.p1 * h * g;
    const double den = b2 * a2 * params.p1 * g * aged + b2 * params.p1 * g +
                       params.sigma_2_2;
    return num / den;
}

SinrPair link_sinrs(const LinkParams& params, const LinkRealization& real) {
    return SinrPair{sinr_s1(params, real), sinr_bs(params, real)};
}

double achievable_rate(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw std::domain_error("achievable_rate: gamma must be finite and >= 0");
    }
    return 0.5 * std::log2(1.0 + gamma);
}

bool outage_indicator(double r1, double r2, double r_threshold) noexcept {
    return std::min(r1, r2) < r_threshold;
}

} // namespace d2dsim
