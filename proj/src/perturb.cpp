#include "qmstp/perturb.hpp"

#include <algorithm>

#include "qmstp/util.hpp"

namespace qmstp {

namespace {

/// Single-pass minimum tracker over a (key1, key2) lexicographic order with
/// uniform tie-breaking: streaming, so enumeration stays one pass.
struct Pick {
    bool have = false;
    int64_t key1 = 0, key2 = 0;
    int a = 0, b = 0;
    int64_t delta = 0;
    bool tabu = false;
    int64_t ties = 0;

    void offer(int64_t k1, int64_t k2, int aa, int bb, int64_t dl, bool tb, Rng& rng) {
        if (!have || k1 < key1 || (k1 == key1 && k2 < key2)) {
            have = true;
            key1 = k1;
            key2 = k2;
            ties = 1;
        } else if (k1 == key1 && k2 == key2) {
            ++ties;
            if (rng.uniform_int(1, ties) != 1) return;
        } else {
            return;
        }
        a = aa;
        b = bb;
        delta = dl;
        tabu = tb;
    }
};

/// One tabu-directed edge step.  Returns false when the graph has no
/// non-tree edge at all (then nothing is applied and the step is counted
/// as empty).
bool one_directed_edge_step(const Instance& inst, SearchState& st, TabuHistory& hist, int64_t l_in,
                            int64_t l_out, int64_t best_overall, Rng& rng, PerturbStats& stats,
                            MoveLog* log) {
    const auto& d = st.dvec.d;
    const int64_t cnt = hist.move_counter;
    Pick adm;  // minimum gain among admissible moves
    Pick lru;  // least-recently-touched fallback over all legal moves
    std::vector<int> path;
    for (int e = 0; e < inst.m; ++e) {
        if (st.tree.in_tree[e]) continue;
        cycle_path(inst, st.tree, e, path);
        for (int f : path) {
            int64_t delta = d[e] - d[f] - inst.s_at(e, f);
            bool tabu = !(cnt > hist.edge_last_touched[e] + l_in && cnt > hist.edge_last_touched[f] + l_out);
            bool admissible = !tabu || st.tree.objective + delta < best_overall;
            if (admissible) adm.offer(delta, 0, e, f, delta, tabu, rng);
            lru.offer(std::max(hist.edge_last_touched[e], hist.edge_last_touched[f]), delta, e, f, delta,
                      tabu, rng);
        }
    }
    if (!lru.have) {
        ++stats.empty_steps;
        return false;
    }
    const Pick& pick = adm.have ? adm : lru;
    const bool fallback = !adm.have;
    apply_swap_edge(inst, st.tree, st.dvec, pick.a, pick.b);
    ++stats.directed_edge_moves;
    if (fallback) ++stats.fallback_steps;
    bool aspiration = pick.tabu && !fallback;
    if (aspiration) ++stats.aspiration_moves;
    if (log)
        log->push_back({cnt, MoveOp::swap_edge, pick.a, pick.b, pick.delta, st.tree.objective,
                        best_overall, l_in, l_out, pick.tabu, aspiration, fallback});
    hist.edge_last_touched[pick.a] = cnt;
    hist.edge_last_touched[pick.b] = cnt;
    ++hist.move_counter;
    return true;
}

/// One tabu-directed leaf-pair step.  Returns false when no legal pair
/// exists (caller decides the fallback).
bool one_directed_vertex_step(const Instance& inst, SearchState& st, TabuHistory& hist, int64_t l_swap,
                              int64_t best_overall, Rng& rng, PerturbStats& stats, MoveLog* log) {
    const int64_t cnt = hist.move_counter;
    Pick adm;
    Pick lru;
    auto leaves = degree_one_vertices(inst, st.tree);
    for (size_t a = 0; a < leaves.size(); ++a) {
        for (size_t b = a + 1; b < leaves.size(); ++b) {
            auto [i, ri] = leaves[a];
            auto [j, rj] = leaves[b];
            if (ri == rj) continue;
            if (inst.edge_index(i, rj) < 0 || inst.edge_index(j, ri) < 0) continue;
            int64_t delta = gain_swap_vertex(st.dvec, inst, st.tree, i, j);
            bool tabu = !(cnt > hist.vertex_last_touched[i] + l_swap &&
                          cnt > hist.vertex_last_touched[j] + l_swap);
            bool admissible = !tabu || st.tree.objective + delta < best_overall;
            if (admissible) adm.offer(delta, 0, i, j, delta, tabu, rng);
            lru.offer(std::max(hist.vertex_last_touched[i], hist.vertex_last_touched[j]), delta, i, j,
                      delta, tabu, rng);
        }
    }
    if (!lru.have) return false;
    const Pick& pick = adm.have ? adm : lru;
    const bool fallback = !adm.have;
    apply_swap_vertex(inst, st.tree, st.dvec, pick.a, pick.b);
    ++stats.directed_vertex_moves;
    if (fallback) ++stats.fallback_steps;
    bool aspiration = pick.tabu && !fallback;
    if (aspiration) ++stats.aspiration_moves;
    if (log)
        log->push_back({cnt, MoveOp::swap_vertex, pick.a, pick.b, pick.delta, st.tree.objective,
                        best_overall, l_swap, l_swap, pick.tabu, aspiration, fallback});
    hist.vertex_last_touched[pick.a] = cnt;
    hist.vertex_last_touched[pick.b] = cnt;
    ++hist.move_counter;
    return true;
}

} // namespace

void directed_perturb_edges(const Instance& inst, SearchState& state, TabuHistory& hist, int64_t l_in,
                            int64_t l_out, int64_t steps, int64_t best_overall, Rng& rng,
                            PerturbStats& stats, MoveLog* log, const StopGuard* stop) {
    for (int64_t k = 0; k < steps; ++k) {
        if (stop && stop->hit(state.tree.objective)) return;
        one_directed_edge_step(inst, state, hist, l_in, l_out, best_overall, rng, stats, log);
    }
}

void directed_perturb_vertices(const Instance& inst, SearchState& state, TabuHistory& hist,
                               int64_t l_swap, int64_t steps, int64_t best_overall, Rng& rng,
                               PerturbStats& stats, MoveLog* log, const StopGuard* stop) {
    for (int64_t k = 0; k < steps; ++k) {
        if (stop && stop->hit(state.tree.objective)) return;
        if (!one_directed_vertex_step(inst, state, hist, l_swap, best_overall, rng, stats, log)) {
            // no legal leaf pair: degrade this step to a directed edge step,
            // reusing l_swap for both edge tenures
            if (one_directed_edge_step(inst, state, hist, l_swap, l_swap, best_overall, rng, stats, log))
                ++stats.vertex_fallback_edge_moves;
        }
    }
}

void diversified_perturb(const Instance& inst, SearchState& state, int64_t steps, Rng& rng,
                         PerturbStats& stats, MoveLog* log, const StopGuard* stop) {
    SpanningTree& tree = state.tree;
    auto& d = state.dvec.d;
    const int n = inst.n;
    std::vector<char> detached(n + 1);
    std::vector<int> head(n + 1), nxt(n + 1), stack;

    for (int64_t k = 0; k < steps; ++k) {
        if (stop && stop->hit(tree.objective)) return;

        // uniform pick among the n-1 tree edges, ordered by child vertex
        int child = 2 + static_cast<int>(rng.uniform_int(0, n - 2));
        int f = inst.edge_index(child, tree.parent[child]);

        // take f out of the running sums (membership flips inside
        // replace_tree_edge later)
        const int64_t removed = d[f];
        tree.objective -= removed;
        const int32_t* row_f = &inst.s[static_cast<size_t>(f) * inst.m];
        for (int g = 0; g < inst.m; ++g) d[g] -= row_f[g];

        // mark the component hanging below f
        std::fill(detached.begin(), detached.end(), 0);
        std::fill(head.begin(), head.end(), 0);
        for (int v = 2; v <= n; ++v) {
            nxt[v] = head[tree.parent[v]];
            head[tree.parent[v]] = v;
        }
        stack.assign(1, child);
        detached[child] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = head[v]; w != 0; w = nxt[w]) {
                detached[w] = 1;
                stack.push_back(w);
            }
        }

        // cheapest reconnecting edge by current contribution; ties go to the
        // lowest edge index; f itself is eligible, making the step undoable
        int best_e = -1;
        for (int g = 0; g < inst.m; ++g) {
            if (tree.in_tree[g] && g != f) continue;
            auto [u, v] = inst.edges[g];
            if (detached[u] == detached[v]) continue;
            if (best_e < 0 || d[g] < d[best_e]) best_e = g;
        }
        check(best_e >= 0, "no reconnecting edge found");

        const int64_t added = d[best_e];
        tree.objective += added;
        const int32_t* row_e = &inst.s[static_cast<size_t>(best_e) * inst.m];
        for (int g = 0; g < inst.m; ++g) d[g] += row_e[g];
        replace_tree_edge(inst, tree, best_e, f);
        ++stats.diversified_moves;
        if (log)
            log->push_back({-1, MoveOp::diversify, best_e, f, added - removed, tree.objective, 0, 0, 0,
                            false, false, false});
    }
}

} // namespace qmstp
