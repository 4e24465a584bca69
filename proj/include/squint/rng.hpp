#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace squint {

// Deterministic random source. Streams are derived from (seed, stream index)
// through SplitMix64, so trial t of a run draws the same numbers no matter
// which thread executes it. Distributions are implemented here rather than
// taken from <random> because the standard leaves their algorithms
// unspecified.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return engine_(); }
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    // Circularly-symmetric complex Gaussian, zero mean, unit variance.
    std::complex<double> complex_normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace squint
