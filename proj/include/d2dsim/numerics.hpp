#pragma once

#include <complex>
#include <cstdint>

#include "d2dsim/rng.hpp"

namespace d2dsim {

/// A complex channel coefficient sample.
using ComplexGain = std::complex<double>;

/// |z|^2, the instantaneous power gain of a channel coefficient.
inline double gain_sq(const ComplexGain& z) noexcept { return std::norm(z); }

/// Binomial proportion estimate with a two-sided confidence interval.
/// Invariant: 0 <= lo <= point <= hi <= 1.
struct ConfidenceInterval {
    double point = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double confidence = 0.95;
};

/// Zeroth-order Bessel function of the first kind.
/// Absolute error <= 1e-9 for |x| <= 50 (power series below |x| = 12,
/// Hankel asymptotic expansion above). Throws std::domain_error on
/// non-finite input.
double bessel_j0(double x);

/// Draws mean + z with z circularly-symmetric complex Gaussian,
/// E|z|^2 = variance (variance/2 per component). variance = 0 returns
/// mean exactly. Throws std::domain_error if variance is negative or
/// non-finite.
ComplexGain sample_complex_gaussian(CounterRng& rng, const ComplexGain& mean,
                                    double variance);

/// Wilson score interval for a binomial proportion; point = successes/trials.
/// Behaves sensibly for proportions at or near 0 and 1. Throws
/// std::domain_error when trials = 0, successes > trials, or confidence
/// is outside (0, 1).
ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                   double confidence);

} // namespace d2dsim
