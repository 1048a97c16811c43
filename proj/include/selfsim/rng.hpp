#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace selfsim {

/// One step of the splitmix64 sequence. Used to decorrelate seeds that
/// differ only by small offsets before they reach the main engine.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic sub-seed for a numbered stream (or row, or replication
/// slot) of a larger experiment. derive_seed(s, a) != derive_seed(s, b)
/// for a != b in practice, and the results are well mixed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

/// Standard-normal generator with a fully pinned-down algorithm:
/// mt19937_64 uniforms fed through the trigonometric Box-Muller map.
/// std::normal_distribution is implementation-defined, so it cannot be
/// used where cross-platform replay of seeded output matters.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double next();
    void fill(std::span<double> out);

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace selfsim
