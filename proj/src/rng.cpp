#include "selfsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace selfsim {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    return splitmix64(base + 0x9E3779B97F4A7C15ULL * (salt + 1));
}

namespace {

// 53-bit uniform in [0,1).
double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace

double NormalSampler::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // u1 in (0,1] keeps the log finite.
    const double u1 = 1.0 - to_unit(engine_());
    const double u2 = to_unit(engine_());
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

void NormalSampler::fill(std::span<double> out) {
    for (double& value : out) value = next();
}

} // namespace selfsim
