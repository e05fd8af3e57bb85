#ifndef QMSTP_PERTURB_HPP
#define QMSTP_PERTURB_HPP

#include <cstdint>
#include <vector>

#include "qmstp/descent.hpp"
#include "qmstp/instance.hpp"
#include "qmstp/rng.hpp"
#include "qmstp/stop.hpp"

namespace qmstp {

/// Sentinel for "never touched"; far enough below zero that adding any
/// tenure cannot overflow or wrap past a real counter value.
constexpr int64_t kNeverTouched = INT64_MIN / 4;

/// Recency memory of the directed perturbation operators: when each edge or
/// vertex last took part in an applied move, plus the shared move counter.
/// One history lives for a whole run; the counter never resets between
/// phases.
struct TabuHistory {
    std::vector<int64_t> edge_last_touched;   ///< per edge, kNeverTouched initially
    std::vector<int64_t> vertex_last_touched; ///< 1-based per vertex
    int64_t move_counter = 0;                 ///< advances once per applied directed move

    explicit TabuHistory(const Instance& inst)
        : edge_last_touched(inst.m, kNeverTouched),
          vertex_last_touched(inst.n + 1, kNeverTouched) {}
};

enum class MoveOp { swap_edge, swap_vertex, diversify };

/// One applied perturbation move, with everything a replay needs to confirm
/// the tenure and aspiration rules were honored.
struct MoveRecord {
    int64_t step = 0;           ///< move_counter at apply time (-1 for diversify)
    MoveOp op = MoveOp::swap_edge;
    int a = 0;                  ///< entering edge / leaf i / entering edge
    int b = 0;                  ///< leaving edge / leaf j / leaving edge
    int64_t delta = 0;
    int64_t objective_after = 0;
    int64_t best_overall = 0;   ///< aspiration threshold in effect
    int64_t tenure_a = 0;       ///< entering tenure (edges) or swap tenure (vertices)
    int64_t tenure_b = 0;       ///< leaving tenure (edges) or swap tenure (vertices)
    bool tabu = false;          ///< failed the tenure test when applied
    bool aspiration = false;    ///< admitted because it beats the overall best
    bool fallback = false;      ///< least-recently-touched relaxation step
};
using MoveLog = std::vector<MoveRecord>;

struct PerturbStats {
    int64_t directed_edge_moves = 0;
    int64_t directed_vertex_moves = 0;
    int64_t diversified_moves = 0;
    int64_t fallback_steps = 0;              ///< all admissible moves tabu, relaxed
    int64_t empty_steps = 0;                 ///< no legal move at all, step skipped
    int64_t vertex_fallback_edge_moves = 0;  ///< empty leaf-pair set, edge step taken
    int64_t aspiration_moves = 0;
};

/// `steps` tabu-directed edge swaps: each step enumerates every legal swap,
/// keeps those that are non-tabu (counter beyond both last-touched marks
/// plus their tenures) or beat best_overall (aspiration), applies one with
/// minimum gain (ties uniform), and stamps both edges with the counter.
/// When every legal move is tabu the step relaxes to the least-recently
/// touched moves and is counted in stats.fallback_steps.
void directed_perturb_edges(const Instance& inst, SearchState& state, TabuHistory& hist,
                            int64_t l_in, int64_t l_out, int64_t steps, int64_t best_overall,
                            Rng& rng, PerturbStats& stats, MoveLog* log = nullptr,
                            const StopGuard* stop = nullptr);

/// Same scheme over leaf-pair swaps with a single tenure for both vertices.
/// When no legal leaf pair exists at a step, one directed edge step runs
/// instead (using l_swap for both edge tenures) and is counted in
/// stats.vertex_fallback_edge_moves.
void directed_perturb_vertices(const Instance& inst, SearchState& state, TabuHistory& hist,
                               int64_t l_swap, int64_t steps, int64_t best_overall, Rng& rng,
                               PerturbStats& stats, MoveLog* log = nullptr,
                               const StopGuard* stop = nullptr);

/// `steps` random edge replacements: remove a uniformly chosen tree edge,
/// then reinsert the reconnecting edge of minimum current contribution
/// (the removed edge stays eligible, so a step can undo itself).  Does not
/// touch tabu memory.
void diversified_perturb(const Instance& inst, SearchState& state, int64_t steps, Rng& rng,
                         PerturbStats& stats, MoveLog* log = nullptr,
                         const StopGuard* stop = nullptr);

} // namespace qmstp

#endif
