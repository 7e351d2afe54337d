// Deterministic random stream.  A fixed SplitMix64 core plus hand-rolled
// uniform/normal transforms keeps every sampled value identical across
// platforms and standard-library versions, which the reproducibility tests
// rely on.
#pragma once

#include <complex>
#include <cstdint>

namespace om {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

    // Derives an independent stream (e.g. per restart) from this seed.
    RandomStream fork(std::uint64_t salt) const noexcept;

    std::uint64_t next_u64() noexcept;

    // Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept;

    // Standard normal via Box-Muller (pairs cached).
    double normal() noexcept;
    std::complex<double> normal_complex() noexcept;

    // Uniform integer in [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace om
