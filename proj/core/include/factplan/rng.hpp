#pragma once

#include <cstdint>
#include <random>

namespace factplan {

/// Seeded random source. The unit-interval conversion is done by hand so the
/// stream is identical across standard library implementations.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace factplan
