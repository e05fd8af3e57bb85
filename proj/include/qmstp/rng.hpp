#ifndef QMSTP_RNG_HPP
#define QMSTP_RNG_HPP

#include <cstdint>
#include <vector>

namespace qmstp {

namespace detail {

/// splitmix64 step; used for seeding and for deriving sub-stream seeds.
inline uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl64(uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}

} // namespace detail

/// Deterministic 64-bit random generator (xoshiro256** seeded through
/// splitmix64).  All randomized routines in the library draw from this
/// generator only, so a run is reproducible bit-for-bit from its seed on
/// any platform.  Independent streams for subtasks (replicas, generators)
/// are derived with `derived_seed`.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) w = detail::splitmix64(x);
    }

    /// Next raw 64-bit value.
    uint64_t next() {
        uint64_t result = detail::rotl64(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    /// Uniform integer in [lo, hi], both inclusive.  Unbiased (rejection
    /// sampling on the top slice of the 64-bit range).
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<int64_t>(next()); // full 64-bit range
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<int64_t>(v % span);
    }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Fisher-Yates shuffle driven by this generator.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Seed of an independent stream (e.g. replica #idx of a batch).
    static uint64_t derived_seed(uint64_t seed, uint64_t stream) {
        uint64_t x = seed;
        detail::splitmix64(x);
        x ^= 0x632be59bd9b4e019ULL * (stream + 1);
        return detail::splitmix64(x);
    }

private:
    uint64_t s_[4];
};

} // namespace qmstp

#endif
