#pragma once

#include <cstdint>

namespace navsim {

// Splittable counter-based generator (splitmix64 core). Each run gets
// an independent stream derived from (master seed, run index), so
// Monte Carlo results do not depend on scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_run(std::uint64_t master_seed, std::uint64_t run_index) {
        return Rng(mix(master_seed ^ mix(run_index + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform double in [0, 1).
    double next_double() {
        return (next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace navsim
