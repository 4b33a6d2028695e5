#pragma once

#include <cstdint>
#include <initializer_list>

namespace d2dsim {

/// 64-bit avalanche finalizer (Stafford variant 13 of the splitmix64 mixer).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-style random stream: the state is a Weyl counter and every output
// is a hash of it, so a (master seed, stream path) pair fully determines the
// sequence. Streams derived from distinct paths are independent for Monte
// Carlo purposes, and trials can be assigned to threads in any order without
// changing what each trial draws.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) noexcept : state_(key) {}

    /// Derives a stream key from a master seed and an index path
    /// (e.g. {rate_index, snr_index, trial_index}). Order-sensitive.
    static CounterRng from_path(std::uint64_t master_seed,
                                std::initializer_list<std::uint64_t> path) noexcept {
        std::uint64_t k = mix64(master_seed + 0x6a09e667f3bcc909ULL);
        for (std::uint64_t p : path) {
            k = mix64(k ^ mix64(p + kGamma));
        }
        return CounterRng(k);
    }

    std::uint64_t next_u64() noexcept {
        state_ += kGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe to feed to log().
    double next_unit_open() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

} // namespace d2dsim
