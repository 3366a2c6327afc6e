// random.hpp: counter-seeded random streams and Haar unitaries

#pragma once

#include "thermops/core.hpp"

#include <cstdint>
#include <random>

namespace thermops {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Independent stream for task `index` under a run seed. Streams for distinct
// indices never depend on how many other tasks ran, so batches can be split
// across threads and still reproduce bit-for-bit.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t index);

    // [0, 1) with 53 random bits
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Standard normal via Box-Muller; portable across standard libraries.
    double normal();
    // Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

Matrix haar_unitary(int n, Rng& rng);

}  // namespace thermops
