#ifndef QMSTP_DESCENT_HPP
#define QMSTP_DESCENT_HPP

#include <cstdint>
#include <functional>

#include "qmstp/instance.hpp"
#include "qmstp/rng.hpp"
#include "qmstp/spanning_tree.hpp"
#include "qmstp/stop.hpp"

namespace qmstp {

/// Mutable search position: the tree and its contribution vector move
/// together through every operator.
struct SearchState {
    SpanningTree tree;
    ContributionVector dvec;
};

/// Counters reported per run; the discard ratio is
/// discarded_edges / n1_candidate_edges.
struct DescentStats {
    int64_t iterations = 0;          ///< improvement passes (incl. the final failed one)
    int64_t n1_candidate_edges = 0;  ///< entering edges examined
    int64_t discarded_edges = 0;     ///< rejected by the pre-estimation bound
    int64_t swap_edge_moves = 0;
    int64_t swap_vertex_moves = 0;
};

/// Test instrumentation: called with each edge index the moment it is
/// discarded, while the tree still has the state the decision was made on.
struct DescentHooks {
    std::function<void(int)> on_discard;
};

/// Pre-estimation bound: inserting edge e cannot improve the tree when
/// d_e - gamma - lambda >= 0, because every removable edge f has
/// d_f <= gamma and every pair interaction is at most lambda, so the swap
/// gain d_e - d_f - s(e,f) stays non-negative.
inline bool fast_discard(int64_t d_e, int64_t gamma, int64_t lambda) {
    return d_e - gamma - lambda >= 0;
}

/// First-improvement descent over the union of both neighborhoods.  Each
/// iteration refreshes gamma, shuffles one interleaved candidate list of
/// entering edges and leaf pairs, skips entering edges caught by
/// fast_discard, and applies the first strictly improving move found;
/// stops at a local optimum (no move of either kind has negative gain).
void descent(const Instance& inst, SearchState& state, Rng& rng, DescentStats& stats,
             const StopGuard* stop = nullptr, const DescentHooks* hooks = nullptr);

} // namespace qmstp

#endif
