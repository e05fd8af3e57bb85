#ifndef QMSTP_UTIL_HPP
#define QMSTP_UTIL_HPP

#include <cmath>
#include <cstdint>

#include "qmstp/rng.hpp"

namespace qmstp {

/// Closed integer interval [lo, hi].
struct IntRange {
    int64_t lo = 0;
    int64_t hi = 0;

    bool contains(int64_t v) const { return lo <= v && v <= hi; }
    int64_t draw(Rng& rng) const { return rng.uniform_int(lo, hi); }
    bool operator==(const IntRange&) const = default;
};

/// Round to nearest integer, halves away from zero upward (2.5 -> 3).
inline int64_t round_half_up(double x) {
    return static_cast<int64_t>(std::floor(x + 0.5));
}

/// Contract check that stays on in release builds; throws std::logic_error.
void check(bool cond, const char* msg);

} // namespace qmstp

#endif
