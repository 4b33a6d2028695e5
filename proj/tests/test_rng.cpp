#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>

#include "d2dsim/rng.hpp"

using d2dsim::CounterRng;
using d2dsim::mix64;

TEST_CASE("mix64 diffuses single-bit input changes") {
    int total = 0;
    for (int bit = 0; bit < 64; ++bit) {
        const std::uint64_t a = mix64(0x123456789abcdef0ULL);
        const std::uint64_t b = mix64(0x123456789abcdef0ULL ^ (1ULL << bit));
        total += __builtin_popcountll(a ^ b);
    }
    const double mean_flips = total / 64.0;
    CHECK(mean_flips > 24.0);
    CHECK(mean_flips < 40.0);
}

TEST_CASE("identical keys replay identical sequences") {
    CounterRng a = CounterRng::from_path(42, {1, 2, 3});
    CounterRng b = CounterRng::from_path(42, {1, 2, 3});
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different stream paths decorrelate") {
    CounterRng a = CounterRng::from_path(42, {0, 0, 0});
    CounterRng b = CounterRng::from_path(42, {0, 0, 1});
    CounterRng c = CounterRng::from_path(42, {0, 1, 0});
    CounterRng d = CounterRng::from_path(43, {0, 0, 0});
    std::set<std::uint64_t> firsts{a.next_u64(), b.next_u64(), c.next_u64(),
                                   d.next_u64()};
    CHECK(firsts.size() == 4);
}

TEST_CASE("path element order matters") {
    CounterRng a = CounterRng::from_path(7, {1, 2});
    CounterRng b = CounterRng::from_path(7, {2, 1});
    CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("unit draws respect their half-open ranges") {
    CounterRng rng(99);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CounterRng rng2(100);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng2.next_unit_open();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("unit draws are roughly uniform") {
    CounterRng rng(1234);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        sum += u;
        sum_sq += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
    CHECK(std::abs(sum_sq / n - 1.0 / 3.0) < 0.005);
}
