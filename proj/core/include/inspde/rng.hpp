#pragma once

#include <cmath>
#include <cstdint>

namespace inspde::rng {

/// SplitMix64 finalizer: a 64-bit avalanche permutation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream cell: a stateless hash of (seed, path, step, mode).
/// Draws are a pure function of the four words, so concurrent paths never
/// share state and coupled runs consuming the same tuple get the same bits.
inline std::uint64_t cell_key(std::uint64_t seed, std::uint64_t path,
                              std::uint64_t step, std::uint64_t mode) {
    std::uint64_t h = mix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
    h = mix64(h ^ (path * 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ (step * 0xd1b54a32d192ed03ULL));
    h = mix64(h ^ (mode * 0x94d049bb133111ebULL));
    return h;
}

/// Uniform draw in (0, 1), never exactly 0 or 1.
inline double uniform01(std::uint64_t word) {
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw for the stream cell (seed, path, step, mode),
/// Box-Muller on two decorrelated subdraws of the cell key.
inline double standard_normal(std::uint64_t seed, std::uint64_t path,
                              std::uint64_t step, std::uint64_t mode) {
    const std::uint64_t h = cell_key(seed, path, step, mode);
    const double u1 = uniform01(mix64(h ^ 0x2545f4914f6cdd1dULL));
    const double u2 = uniform01(mix64(h ^ 0x5851f42d4c957f2dULL));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace inspde::rng
