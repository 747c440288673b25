#pragma once

#include <cstdint>

namespace contagion::rng {

// Philox-4x32-10 counter-based generator. Streams are keyed by (seed, path
// index), so path i produces the same draws under any scheduling.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_(stream) {}

    // Uniform on (0, 1].
    double next_uniform() {
        if (have_ == 0) refill();
        std::uint64_t bits = buf_[--have_];
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    // Pair of independent standard normals (Box-Muller).
    void next_normal_pair(double& z0, double& z1);

private:
    void refill();

    std::uint32_t key0_, key1_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int have_ = 0;
};

}  // namespace contagion::rng
