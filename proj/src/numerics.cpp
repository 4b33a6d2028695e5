#include "d2dsim/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2dsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Power series sum_k (-1)^k (x/2)^{2k} / (k!)^2. Usable in double up to
// |x| ~ 16 before alternating-term cancellation eats the error budget.
double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18) {
            break;
        }
    }
    return sum;
}

// Hankel asymptotic expansion
//   J0(x) = sqrt(2/(pi x)) [P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)]
// with P, Q built from the Hankel symbols
//   (0,m) = prod_{j=1..m} -(2j-1)^2 / (8j),
//   P(x) = sum_k (-1)^k (0,2k) / x^{2k},
//   Q(x) = sum_k (-1)^k (0,2k+1) / x^{2k+1}.
// The series is truncated at its smallest term; at x = 12 that leaves an
// absolute error near 5e-13, shrinking rapidly for larger x.
double j0_asymptotic(double x) {
    double hank[26];
    hank[0] = 1.0;
    for (int m = 1; m < 26; ++m) {
        const double odd = 2.0 * m - 1.0;
        hank[m] = hank[m - 1] * (-(odd * odd) / (8.0 * m));
    }

    double p = 0.0;
    double q = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; 2 * k + 1 < 26; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double tp = sign * hank[2 * k] / std::pow(x, 2 * k);
        if (std::abs(tp) > std::abs(prev)) {
            break; // asymptotic tail started diverging
        }
        p += tp;
        q += sign * hank[2 * k + 1] / std::pow(x, 2 * k + 1);
        prev = tp;
    }

    const double chi = x - 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Phi^{-1}(p) by bisection on the normal CDF expressed through erfc.
double normal_quantile(double p) {
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double cdf = 0.5 * std::erfc(-mid / M_SQRT2);
        if (cdf < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("bessel_j0: non-finite argument");
    }
    const double ax = std::abs(x);
    return ax <= 12.0 ? j0_series(ax) : j0_asymptotic(ax);
}

ComplexGain sample_complex_gaussian(CounterRng& rng, const ComplexGain& mean,
                                    double variance) {
    if (!std::isfinite(variance) || variance < 0.0) {
        throw std::domain_error("sample_complex_gaussian: variance must be finite and >= 0");
    }
    if (variance == 0.0) {
        return mean;
    }
    // Box-Muller pair; u1 in (0,1] keeps the log finite.
    const double u1 = rng.next_unit_open();
    const double u2 = rng.next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double s = std::sqrt(0.5 * variance);
    return mean + ComplexGain(s * r * std::cos(kTwoPi * u2),
                              s * r * std::sin(kTwoPi * u2));
}

ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                   double confidence) {
    if (trials == 0) {
        throw std::domain_error("wilson_interval: trials must be >= 1");
    }
    if (successes > trials) {
        throw std::domain_error("wilson_interval: successes exceed trials");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::domain_error("wilson_interval: confidence must lie in (0, 1)");
    }

    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z = normal_quantile(0.5 + 0.5 * confidence);
    const double z2 = z * z;

    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;

    ConfidenceInterval ci;
    ci.point = phat;
    ci.lo = std::max(0.0, std::min(center - half, phat));
    ci.hi = std::min(1.0, std::max(center + half, phat));
    ci.confidence = confidence;
    return ci;
}

} // namespace d2dsim
