#include "qmstp/descent.hpp"

namespace qmstp {

namespace {

struct Candidate {
    int a = 0;             // entering edge, or leaf vertex i
    int b = 0;             // unused, or leaf vertex j
    bool is_vertex = false;
};

} // namespace

void descent(const Instance& inst, SearchState& state, Rng& rng, DescentStats& stats,
             const StopGuard* stop, const DescentHooks* hooks) {
    SpanningTree& tree = state.tree;
    ContributionVector& dvec = state.dvec;
    std::vector<Candidate> cands;
    std::vector<int> path;

    for (;;) {
        if (stop && stop->hit(tree.objective)) return;
        ++stats.iterations;
        const int64_t g = gamma(inst, tree, dvec);

        cands.clear();
        for (int e = 0; e < inst.m; ++e)
            if (!tree.in_tree[e]) cands.push_back({e, 0, false});
        auto leaves = degree_one_vertices(inst, tree);
        for (size_t a = 0; a < leaves.size(); ++a) {
            for (size_t b = a + 1; b < leaves.size(); ++b) {
                auto [i, ri] = leaves[a];
                auto [j, rj] = leaves[b];
                if (ri == rj) continue;
                if (inst.edge_index(i, rj) < 0 || inst.edge_index(j, ri) < 0) continue;
                cands.push_back({i, j, true});
            }
        }
        rng.shuffle(cands);

        bool moved = false;
        for (const Candidate& cand : cands) {
            if (!cand.is_vertex) {
                const int e = cand.a;
                ++stats.n1_candidate_edges;
                if (fast_discard(dvec.d[e], g, inst.lambda_max)) {
                    ++stats.discarded_edges;
                    if (hooks && hooks->on_discard) hooks->on_discard(e);
                    continue;
                }
                cycle_path(inst, tree, e, path);
                for (int f : path) {
                    if (gain_swap_edge(dvec, inst, e, f) < 0) {
                        apply_swap_edge(inst, tree, dvec, e, f);
                        ++stats.swap_edge_moves;
                        moved = true;
                        break;
                    }
                }
            } else {
                if (gain_swap_vertex(dvec, inst, tree, cand.a, cand.b) < 0) {
                    apply_swap_vertex(inst, tree, dvec, cand.a, cand.b);
                    ++stats.swap_vertex_moves;
                    moved = true;
                }
            }
            if (moved) break;
        }
        if (!moved) return;
    }
}

} // namespace qmstp
