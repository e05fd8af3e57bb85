#include <algorithm>
#include <chrono>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qmstp/descent.hpp"
#include "qmstp/generators.hpp"
#include "qmstp/instance.hpp"
#include "qmstp/rng.hpp"
#include "qmstp/stop.hpp"

using namespace qmstp;

namespace {

SearchState random_state(const Instance& inst, uint64_t seed) {
    Rng rng(seed);
    SearchState state;
    state.tree = random_spanning_tree(inst, rng);
    state.dvec = build_contributions(inst, state.tree);
    return state;
}

} // namespace

TEST_CASE("the discard test fires exactly at the zero boundary") {
    CHECK(fast_discard(10, 7, 3));    // 10 - 7 - 3 == 0: provably useless
    CHECK(!fast_discard(9, 7, 3));    // -1: might improve
    CHECK(fast_discard(100, 0, 0));
    CHECK(!fast_discard(-5, 0, 0));
}

TEST_CASE("descent ends in a state no exhaustive scan can improve") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = oracle::random_instance(seed + 200, 5, 10);
        SearchState state = random_state(inst, seed);
        Rng rng(seed * 7 + 1);
        DescentStats stats{};
        descent(inst, state, rng, stats);
        CHECK(oracle::tree_invariant_violation(inst, state.tree).empty());
        CHECK(state.dvec.d == oracle::contributions_of_tree(inst, state.tree));
        CHECK(!oracle::has_improving_move(inst, state.tree));
    }
}

TEST_CASE("with no interactions descent lands on the classical minimum") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 10 + static_cast<int>(seed) * 3;
        const Instance inst =
            generate_uniform(n, 0.8, IntRange{1, 100}, IntRange{0, 0}, seed + 300);
        SearchState state = random_state(inst, seed * 5);
        Rng rng(seed * 9 + 2);
        DescentStats stats{};
        descent(inst, state, rng, stats);
        CHECK(state.tree.objective == oracle::mst_linear_value(inst));
    }
}

TEST_CASE("descent is deterministic per seed") {
    const Instance inst = oracle::random_instance(777, 10, 16);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        SearchState a = random_state(inst, seed);
        SearchState b = random_state(inst, seed);
        Rng ra(seed + 50), rb(seed + 50);
        DescentStats sa{}, sb{};
        descent(inst, a, ra, sa);
        descent(inst, b, rb, sb);
        CHECK(a.tree.objective == b.tree.objective);
        CHECK(a.tree.parent == b.tree.parent);
        CHECK(sa.iterations == sb.iterations);
        CHECK(sa.swap_edge_moves == sb.swap_edge_moves);
        CHECK(sa.swap_vertex_moves == sb.swap_vertex_moves);
        CHECK(sa.discarded_edges == sb.discarded_edges);
        CHECK(sa.n1_candidate_edges == sb.n1_candidate_edges);
    }
}

TEST_CASE("descent only ever walks downhill") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = oracle::random_instance(seed + 400, 8, 14);
        SearchState state = random_state(inst, seed);
        const int64_t start = state.tree.objective;
        Rng rng(seed);
        DescentStats stats{};
        descent(inst, state, rng, stats);
        CHECK(state.tree.objective <= start);
    }
}

TEST_CASE("every iteration but the last applies exactly one move") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = oracle::random_instance(seed + 500, 6, 12);
        SearchState state = random_state(inst, seed);
        Rng rng(seed * 3);
        DescentStats stats{};
        descent(inst, state, rng, stats);
        CHECK(stats.iterations >= 1);
        CHECK(stats.swap_edge_moves + stats.swap_vertex_moves == stats.iterations - 1);
        CHECK(stats.discarded_edges <= stats.n1_candidate_edges);
    }
}

TEST_CASE("descent from a fixpoint stops after one scan") {
    const Instance inst = oracle::random_instance(900, 8, 12);
    SearchState state = random_state(inst, 1);
    Rng rng(2);
    DescentStats stats{};
    descent(inst, state, rng, stats);
    const SpanningTree settled = state.tree;
    DescentStats again{};
    descent(inst, state, rng, again);
    CHECK(again.iterations == 1);
    CHECK(again.swap_edge_moves + again.swap_vertex_moves == 0);
    CHECK(state.tree.parent == settled.parent);
    CHECK(state.tree.objective == settled.objective);
}

TEST_CASE("a satisfied stop guard halts descent before any work") {
    const Instance inst = oracle::random_instance(901, 8, 12);
    SearchState state = random_state(inst, 3);
    const SpanningTree before = state.tree;
    Rng rng(4);
    DescentStats stats{};

    StopGuard by_target;
    by_target.target = std::numeric_limits<int64_t>::max();  // any value qualifies
    descent(inst, state, rng, stats, &by_target);
    CHECK(stats.iterations == 0);
    CHECK(state.tree.parent == before.parent);

    StopGuard by_time;
    by_time.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    DescentStats timed{};
    descent(inst, state, rng, timed, &by_time);
    CHECK(timed.iterations == 0);
    CHECK(state.tree.parent == before.parent);
}

TEST_CASE("discarded entering edges truly admit no improving exchange") {
    int64_t verified = 0;
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        const Instance inst = oracle::random_instance(seed + 600, 5, 8);
        SearchState state = random_state(inst, seed);
        Rng rng(seed * 21);
        DescentStats stats{};
        DescentHooks hooks;
        hooks.on_discard = [&](int e) {
            const std::vector<int> ids = oracle::tree_edge_ids(inst, state.tree);
            const int64_t base = oracle::objective_of_edges(inst, ids);
            for (int f : oracle::cycle_edges_by_bfs(inst, state.tree, e)) {
                std::vector<int> next = ids;
                next.erase(std::find(next.begin(), next.end(), f));
                next.push_back(e);
                CHECK(oracle::objective_of_edges(inst, next) >= base);
                ++verified;
            }
        };
        descent(inst, state, rng, stats, nullptr, &hooks);
    }
    CHECK(verified > 0);
}
