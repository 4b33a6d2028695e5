#pragma once

#include <cstdint>

#include "d2dsim/numerics.hpp"
#include "d2dsim/rng.hpp"

namespace d2dsim {

/// Doppler description of a mobile link: maximum Doppler shift f_D (Hz)
/// and the slot/symbol duration T (s).
struct DopplerSpec {
    double doppler_hz = 0.0;
    double symbol_period_s = 1e-3;
};

// First-order Gauss-Markov fading process with a frozen receiver estimate:
//
//   x[n] = a * x[n-1] + sqrt(1 - a^2) * w[n],   w[n] ~ CN(0, variance)
//
// `current` is the true channel at step n; `estimate` is the receiver's
// knowledge, pinned to the initial draw x[0] and never updated. The gap
// between the two is what a stale estimate costs a moving relay.
struct ChannelProcess {
    double a = 1.0;            // variation/correlation coefficient, |a| <= 1
    double variance = 0.0;     // stationary variance E|x|^2
    ComplexGain current{0.0, 0.0};
    ComplexGain estimate{0.0, 0.0};
    std::uint64_t step_count = 0;
};

/// Slot-to-slot correlation coefficient a = J0(2 pi f_D T). May be negative
/// (J0 oscillates); no clamping is applied. Throws std::domain_error on
/// negative doppler_hz, non-positive symbol_period_s, or non-finite fields.
double doppler_correlation(const DopplerSpec& spec);

/// Draws x[0] ~ CN(0, variance) and returns a process with
/// current == estimate == x[0] and step_count == 0.
/// Throws std::domain_error unless |a| <= 1 and variance >= 0 (both finite).
ChannelProcess init_channel(double a, double variance, CounterRng& rng);

/// Advances the true channel one slot; the estimate is left untouched.
ChannelProcess step_channel(const ChannelProcess& process, CounterRng& rng);

} // namespace d2dsim
