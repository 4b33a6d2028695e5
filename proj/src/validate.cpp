#include "d2dsim/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Core>

#include "d2dsim/channel.hpp"
#include "d2dsim/csv.hpp"
#include "d2dsim/montecarlo.hpp"
#include "d2dsim/numerics.hpp"
#include "d2dsim/relay_link.hpp"
#include "d2dsim/rng.hpp"
#include "d2dsim/selection.hpp"

namespace d2dsim {

namespace {

struct Battery {
    std::vector<CheckResult> results;

    void record(const std::string& name, bool ok, const std::string& detail) {
        results.push_back({name, ok, ok ? std::string() : detail});
    }

    void expect_near(const std::string& name, double got, double want, double tol) {
        const bool ok = std::isfinite(got) && std::abs(got - want) <= tol;
        std::ostringstream ss;
        ss << "got " << got << ", want " << want << " +/- " << tol;
        record(name, ok, ss.str());
    }
};

void check_bessel(Battery& b) {
    b.expect_near("bessel_j0(0) = 1", bessel_j0(0.0), 1.0, 1e-15);

    // First positive root, bracketed and bisected on the implementation.
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(lo) * bessel_j0(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    b.expect_near("bessel_j0 first root", 0.5 * (lo + hi), 2.404825557695773, 1e-8);

    bool bounded = true;
    for (int i = 0; i <= 500; ++i) {
        if (std::abs(bessel_j0(0.1 * i)) > 1.0 + 1e-12) bounded = false;
    }
    b.record("|bessel_j0| <= 1 on [0, 50]", bounded, "bound exceeded");
}

void check_channel_moments(Battery& b) {
    const double a = 0.9, variance = 2.0;
    CounterRng rng = CounterRng::from_path(404, {1});
    ChannelProcess ch = init_channel(a, variance, rng);

    const int n = 200000;
    double sum_sq = 0.0, lag = 0.0, lag_norm = 0.0;
    ComplexGain prev = ch.current;
    for (int i = 0; i < n; ++i) {
        ch = step_channel(ch, rng);
        sum_sq += gain_sq(ch.current);
        lag += (std::conj(prev) * ch.current).real();
        lag_norm += gain_sq(prev);
        prev = ch.current;
    }
    b.expect_near("AR(1) stationary E|h|^2", sum_sq / n, variance, 0.05 * variance);
    b.expect_near("AR(1) lag-1 autocorrelation", lag / lag_norm, a, 0.03);
}

void check_aging_identity(Battery& b) {
    // With a1 = 1 both uncertainty terms vanish, so the SINRs reduce to the
    // perfect-CSI forms evaluated directly.
    LinkParams p;
    p.p1 = 2.0;
    p.p2 = 3.0;
    p.p_relay = 1.5;
    p.sigma_r2 = 0.7;
    p.sigma_1_2 = 1.1;
    p.sigma_2_2 = 0.9;
    p.a1 = 1.0;
    p.a2 = 1.0;
    const double h = 0.8, g = 1.4;
    LinkRealization r{h, g, amplification_factor(p, h, g)};
    const double b2 = r.beta * r.beta;
    const double want1 = b2 * p.p2 * h * g / (b2 * h * p.sigma_r2 + p.sigma_1_2);
    const double want2 = b2 * p.p1 * h * g / (b2 * p.p1 * g + p.sigma_2_2);
    const SinrPair s = link_sinrs(p, r);
    b.expect_near("a1 = 1 recovers perfect-CSI gamma1", s.gamma1, want1, 1e-14);
    b.expect_near("a1 = 1 recovers perfect-CSI gamma2", s.gamma2, want2, 1e-14);
}

void check_scale_invariance(Battery& b) {
    CounterRng rng = CounterRng::from_path(405, {1});
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
        LinkParams p;
        p.p1 = 0.1 + 5.0 * rng.next_unit();
        p.p2 = 0.1 + 5.0 * rng.next_unit();
        p.p_relay = 0.1 + 5.0 * rng.next_unit();
        p.sigma_r2 = 0.1 + 2.0 * rng.next_unit();
        p.sigma_1_2 = 0.1 + 2.0 * rng.next_unit();
        p.sigma_2_2 = 0.1 + 2.0 * rng.next_unit();
        p.a1 = 0.5 + 0.5 * rng.next_unit();
        p.a2 = p.a1;
        const double h = 0.1 + 3.0 * rng.next_unit();
        const double g = 0.1 + 3.0 * rng.next_unit();
        LinkRealization r{h, g, amplification_factor(p, h, g)};
        const SinrPair base = link_sinrs(p, r);

        LinkParams q = p;
        const double c = 7.5;
        q.p1 *= c;
        q.p2 *= c;
        q.p_relay *= c;
        q.sigma_r2 *= c;
        q.sigma_1_2 *= c;
        q.sigma_2_2 *= c;
        LinkRealization rq{h, g, amplification_factor(q, h, g)};
        const SinrPair scaled = link_sinrs(q, rq);
        ok = std::abs(scaled.gamma1 - base.gamma1) <= 1e-9 * base.gamma1 &&
             std::abs(scaled.gamma2 - base.gamma2) <= 1e-9 * base.gamma2;
    }
    b.record("SINR invariance under common power/noise scaling", ok,
             "scaling changed a SINR");
}

double brute_force_best(const Eigen::MatrixXd& u) {
    const int rows = static_cast<int>(u.rows());
    const int cols = static_cast<int>(u.cols());
    const bool wide = cols >= rows;
    const int small = wide ? rows : cols;
    const int large = wide ? cols : rows;
    std::vector<int> perm(large);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -std::numeric_limits<double>::infinity();
    std::sort(perm.begin(), perm.end());
    do {
        double total = 0.0;
        for (int i = 0; i < small; ++i)
            total += wide ? u(i, perm[i]) : u(perm[i], i);
        best = std::max(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

void check_matching(Battery& b) {
    CounterRng rng = CounterRng::from_path(406, {1});
    bool ok = true;
    for (int trial = 0; trial < 40 && ok; ++trial) {
        const int rows = 1 + static_cast<int>(rng.next_u64() % 5);
        const int cols = 1 + static_cast<int>(rng.next_u64() % 5);
        Eigen::MatrixXd u(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) u(i, j) = 10.0 * rng.next_unit() - 5.0;
        const MatchResult m = hungarian_match(u, true);
        ok = std::abs(m.objective_value - brute_force_best(u)) <= 1e-9;
    }
    b.record("hungarian_match equals brute force", ok, "objective mismatch");
}

void check_wilson(Battery& b) {
    const ConfidenceInterval none = wilson_interval(0, 1000, 0.95);
    const ConfidenceInterval all = wilson_interval(1000, 1000, 0.95);
    const ConfidenceInterval mid = wilson_interval(400, 1000, 0.95);
    const bool ok = none.lo == 0.0 && none.point == 0.0 && all.hi == 1.0 &&
                    all.point == 1.0 && mid.lo < 0.4 && 0.4 < mid.hi &&
                    mid.lo >= 0.0 && mid.hi <= 1.0;
    b.record("wilson_interval bounds and coverage", ok, "interval malformed");
}

void check_outage_limits(Battery& b) {
    Scenario sc;
    sc.trials = 2000;
    sc.snr_grid_db = {10.0};
    sc.variation_rates = {0.9};

    Scenario no_threshold = sc;
    no_threshold.link.r_threshold = 0.0;
    const ConfidenceInterval zero = estimate_outage_at(no_threshold, 0, 0, 1);
    b.expect_near("r_threshold = 0 gives outage 0", zero.point, 0.0, 0.0);

    Scenario no_power = sc;
    no_power.link.p1 = 0.0;
    no_power.link.p2 = 0.0;
    const ConfidenceInterval one = estimate_outage_at(no_power, 0, 0, 1);
    b.expect_near("zero transmit powers give outage 1", one.point, 1.0, 0.0);
}

void check_determinism(Battery& b) {
    Scenario sc;
    sc.trials = 4000;
    sc.snr_grid_db = {10.0, 20.0};
    sc.variation_rates = {0.9};
    const ConfidenceInterval serial = estimate_outage_at(sc, 1, 0, 1);
    const ConfidenceInterval parallel = estimate_outage_at(sc, 1, 0, 3);
    b.record("estimate_outage is worker-count invariant",
             serial.point == parallel.point && serial.lo == parallel.lo &&
                 serial.hi == parallel.hi,
             "worker count changed the estimate");
}

void check_csv_round_trip(Battery& b) {
    Scenario sc;
    sc.trials = 500;
    sc.snr_grid_db = {0.0, 10.0};
    sc.variation_rates = {0.998, 0.799};
    const std::vector<OutageCurve> curves = sweep(sc, 1);
    const std::string text = render_outage_csv(curves);
    const std::vector<OutageCurve> back = parse_outage_csv(text);
    const bool ok = render_outage_csv(back) == text;
    b.record("outage CSV round trip", ok, "re-render differs");
}

} // namespace

std::vector<CheckResult> run_validation() {
    Battery b;
    check_bessel(b);
    check_channel_moments(b);
    check_aging_identity(b);
    check_scale_invariance(b);
    check_matching(b);
    check_wilson(b);
    check_outage_limits(b);
    check_determinism(b);
    check_csv_round_trip(b);
    return b.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

} // namespace d2dsim
