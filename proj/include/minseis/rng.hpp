#pragma once

#include <cstdint>
#include <string_view>

namespace minseis {

// 64-bit finalizer used for seed derivation and as the engine step.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-based splitmix generator. Cheap to construct, so every unit of
// work (replication, attempt, individual) gets its own engine and results
// do not depend on evaluation order.
class RandomEngine {
public:
    using result_type = std::uint64_t;

    explicit RandomEngine(std::uint64_t seed) : state_(seed) {}

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    // Uniform in [0,1).
    double uniform_real01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform in [0,n). Rejection sampling, unbiased.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

// Hierarchical seed carrier. A stream never produces numbers itself; it
// derives child streams by key and hands out engines. Two streams derived
// through the same key path from the same master seed are identical, which
// is what makes parallel and serial runs agree.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(mix64(seed + 0x632be59bd9b4e019ULL)) {}

    RngStream substream(std::uint64_t key) const {
        RngStream child(0);
        child.state_ = mix64(state_ ^ mix64(key + 0x9e3779b97f4a7c15ULL));
        return child;
    }

    RngStream substream(std::string_view key) const { return substream(fnv1a64(key)); }

    RandomEngine engine() const { return RandomEngine(mix64(state_ ^ 0xd1b54a32d192ed03ULL)); }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace minseis
