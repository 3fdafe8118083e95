#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lsm {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic sub-stream seed. Every random decision in the project draws
// from a stream keyed by (master seed, stream tag, coordinates), so parallel
// and serial schedules consume identical randomness.
inline uint64_t sub_seed(uint64_t master, uint64_t tag, uint64_t a = 0,
                         uint64_t b = 0, uint64_t c = 0) {
    uint64_t h = splitmix64(master);
    h = splitmix64(h ^ tag);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

// Stream tags for sub_seed. Kept in one place to avoid collisions.
namespace seed_tag {
inline constexpr uint64_t liquid_init = 1;
inline constexpr uint64_t offspring = 2;
inline constexpr uint64_t fresh_individual = 3;
inline constexpr uint64_t input_projection = 4;
inline constexpr uint64_t readout_init = 5;
inline constexpr uint64_t environment = 6;
inline constexpr uint64_t policy = 7;
inline constexpr uint64_t unevolved_net = 8;
inline constexpr uint64_t baseline = 9;
}  // namespace seed_tag

// mt19937_64 with explicit draw helpers. The standard distributions are not
// pinned across library implementations, so the few we need are done by hand.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // (0, 1]
    double uniform_open01() { return 1.0 - uniform01(); }

    // Unbiased integer in [0, n), n > 0.
    uint64_t below(uint64_t n) {
        const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    size_t index(size_t n) { return static_cast<size_t>(below(n)); }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace lsm
