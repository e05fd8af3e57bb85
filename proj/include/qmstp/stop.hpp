#ifndef QMSTP_STOP_HPP
#define QMSTP_STOP_HPP

#include <chrono>
#include <cstdint>
#include <optional>

namespace qmstp {

/// Early-exit conditions threaded through the long-running phases.  Checked
/// between descent iterations and between perturbation steps, never inside
/// a neighborhood scan, so overshoot is bounded by one iteration.
struct StopGuard {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::optional<int64_t> target;

    bool hit(int64_t current_value) const {
        if (target && current_value <= *target) return true;
        if (deadline && std::chrono::steady_clock::now() >= *deadline) return true;
        return false;
    }
};

} // namespace qmstp

#endif
