#include "d2dsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace d2dsim {

double doppler_correlation(const DopplerSpec& spec) {
    if (!std::isfinite(spec.doppler_hz) || spec.doppler_hz < 0.0) {
        throw std::domain_error("doppler_correlation: doppler_hz must be finite and >= 0");
    }
    if (!std::isfinite(spec.symbol_period_s) || spec.symbol_period_s <= 0.0) {
        throw std::domain_error("doppler_correlation: symbol_period_s must be finite and > 0");
    }
    return bessel_j0(2.0 * M_PI * spec.doppler_hz * spec.symbol_period_s);
}

ChannelProcess init_channel(double a, double variance, CounterRng& rng) {
    if (!std::isfinite(a) || std::abs(a) > 1.0) {
        throw std::domain_error("init_channel: |a| must be <= 1");
    }
    if (!std::isfinite(variance) || variance < 0.0) {
        throw std::domain_error("init_channel: variance must be finite and >= 0");
    }
    ChannelProcess p;
    p.a = a;
    p.variance = variance;
    p.current = sample_complex_gaussian(rng, ComplexGain(0.0, 0.0), variance);
    p.estimate = p.current;
    p.step_count = 0;
    return p;
}

ChannelProcess step_channel(const ChannelProcess& process, CounterRng& rng) {
    // x' = a x + sqrt(1 - a^2) w keeps E|x|^2 at the stationary variance:
    // a^2 v + (1 - a^2) v = v. With a = +/-1 the innovation weight is exactly
    // zero and the state is preserved bit for bit.
    const ComplexGain innovation =
        sample_complex_gaussian(rng, ComplexGain(0.0, 0.0), process.variance);
    const double w = std::sqrt(1.0 - process.a * process.a);

    ChannelProcess next = process;
    next.current = process.a * process.current + w * innovation;
    next.step_count = process.step_count + 1;
    return next;
}

} // namespace d2dsim
