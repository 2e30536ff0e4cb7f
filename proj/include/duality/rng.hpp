#pragma once

#include <cstdint>
#include <random>

namespace duality {

/// Seeded uniform generator with stdlib-independent output: the mapping from
/// raw mt19937_64 words to doubles is spelled out here so that identical seeds
/// give bit-identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream for a work item; (seed, stream) pairs never collide
    /// with plain seeds because the mix is a fixed splitmix64 step.
    Rng(std::uint64_t seed, std::uint64_t stream) : gen_(mix(seed, stream)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

} // namespace duality
