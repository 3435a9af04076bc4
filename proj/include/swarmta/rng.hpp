#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace swarmta {

// Draw domains used when deriving counter-based keys. Each consumer of
// randomness gets its own domain so adding draws in one place never shifts
// the sequence seen by another.
enum class Stream : std::uint64_t {
    agent = 1,
    claim = 2,
    message = 3,
    placement = 4,
    aux = 5,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// SplitMix64 stream whose starting state is a hash of (seed, key words).
/// Streams are cheap to create, so the engine makes a fresh one per
/// (round, agent) or (round, vertex) and the order in which vertices are
/// visited cannot change any draw.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {}

    static RngStream keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> key) noexcept {
        std::uint64_t h = splitmix64(seed ^ 0x6A09E667F3BCC909ull);
        for (auto k : key) h = splitmix64(h ^ splitmix64(k + 0x3C6EF372FE94F82Bull));
        return RngStream(h);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Uniform integer in [0, n). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) noexcept {
        if (n <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace swarmta
