#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace burnside {

/// Seeded random stream with explicit bit paths for every variate we draw.
/// The standard <random> distributions are implementation-defined, so the
/// uniform/normal/gamma/beta transforms live here; a given seed produces the
/// same stream on every platform with the same libstdc++ mt19937_64 core
/// (the engine itself is specified exactly by the standard).
///
/// Streams are splittable: derive(seed, index) yields independent streams
/// for sharded sampling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        return Rng(mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0,1) with 53-bit resolution; never returns 1.0.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: empty range");
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool coin() { return (next_u64() >> 63) != 0; }

    double normal();
    double gamma(double shape);
    double beta(double a, double b);

    /// Beta(1, theta) via inverse CDF; used by stick breaking.
    double beta_one_theta(double theta) {
        double u = uniform01();
        return 1.0 - std::pow(1.0 - u, 1.0 / theta);
    }

  private:
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace burnside
