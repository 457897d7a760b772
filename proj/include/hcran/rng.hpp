#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hcran {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Folds a root seed and a list of stream/index tags into one engine seed.
/// Distinct tag tuples give statistically independent streams, so Monte
/// Carlo trials can run in any order or in parallel.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t h = mix64(seed);
    for (auto t : tags) {
        h = mix64(h ^ mix64(t + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

inline Engine make_engine(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    return Engine{derive_seed(seed, tags)};
}

// Stream tags keep the independent random sources apart.
namespace stream {
inline constexpr std::uint64_t topology = 1;
inline constexpr std::uint64_t fading = 2;
inline constexpr std::uint64_t shadowing = 3;
inline constexpr std::uint64_t arrivals = 4;
inline constexpr std::uint64_t drops = 5;
inline constexpr std::uint64_t drop_fading_mbs = 6;
inline constexpr std::uint64_t drop_fading_sbs = 7;
inline constexpr std::uint64_t instance = 8;
inline constexpr std::uint64_t sweep_point = 9;
}  // namespace stream

}  // namespace hcran
