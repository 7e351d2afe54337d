#include "om/rng.hpp"

#include <cmath>

namespace om {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
} // namespace

RandomStream RandomStream::fork(std::uint64_t salt) const noexcept {
    return RandomStream(mix(state_ + kGamma * (salt + 1)));
}

std::uint64_t RandomStream::next_u64() noexcept {
    state_ += kGamma;
    return mix(state_);
}

double RandomStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
}

double RandomStream::normal() noexcept {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // Reject u1 == 0 so the logarithm stays finite.
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
}

std::complex<double> RandomStream::normal_complex() noexcept {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::uint64_t RandomStream::below(std::uint64_t n) noexcept {
    // Multiply-shift bound; bias is negligible for the small n used here and
    // the result stays platform-independent.
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
}

} // namespace om
