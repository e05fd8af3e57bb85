#include "qmstp/tps.hpp"

#include <chrono>
#include <stdexcept>

namespace qmstp {

void TpsParams::validate() const {
    auto ok = [](const IntRange& r) { return r.lo >= 0 && r.lo <= r.hi; };
    if (!(p >= 0.0 && p <= 1.0)) throw std::runtime_error("params: p must be in [0,1]");
    if (!ok(l_in_range) || !ok(l_out_range) || !ok(l_swap_range) || !ok(L_dir_range) || !ok(L_div_range))
        throw std::runtime_error("params: ranges must be non-empty with non-negative bounds");
    if (omega_max < 1) throw std::runtime_error("params: omega_max must be >= 1");
}

TpsParams default_params(Profile profile, int n) {
    auto scaled = [n](double lo_factor, double hi_factor) {
        IntRange r{round_half_up(lo_factor * n), round_half_up(hi_factor * n)};
        if (r.lo < 0) r.lo = 0;
        if (r.hi < r.lo) r.hi = r.lo;
        return r;
    };
    TpsParams params;
    params.profile = profile;
    params.p = 1.0;
    params.l_in_range = {1, 3};
    params.l_out_range = scaled(0.35, 0.45);
    params.L_dir_range = scaled(0.5, 1.0);
    params.L_div_range = scaled(0.4, 0.6);
    params.l_swap_range = scaled(1.0, 5.0);
    params.omega_max = 5;
    if (profile == Profile::qap) {
        params.p = 0.5;
        params.L_dir_range = scaled(5.0, 10.0);
    }
    params.validate();
    return params;
}

StopCriterion StopCriterion::rounds(int64_t r) {
    StopCriterion s;
    s.mode = Mode::max_rounds;
    s.max_rounds = r;
    return s;
}

StopCriterion StopCriterion::stagnant(int64_t stag, int64_t cap) {
    StopCriterion s;
    s.mode = Mode::stagnant_rounds_or_cap;
    s.stagnant_rounds = stag;
    s.round_cap = cap;
    return s;
}

StopCriterion StopCriterion::target_value(int64_t f) {
    StopCriterion s;
    s.mode = Mode::target_value;
    s.target = f;
    return s;
}

StopCriterion StopCriterion::wall_clock(double seconds) {
    StopCriterion s;
    s.mode = Mode::wall_clock;
    s.seconds = seconds;
    return s;
}

namespace {

/// One directed perturbation call: flavor chosen by p, tenures and strength
/// redrawn fresh.
void directed_perturb(const Instance& inst, SearchState& state, TabuHistory& hist,
                      const TpsParams& params, BestSolution& best, Rng& rng, RunStats& stats,
                      MoveLog* log, const StopGuard* stop) {
    bool edge_flavor = rng.uniform01() < params.p;
    if (edge_flavor) {
        int64_t l_in = params.l_in_range.draw(rng);
        int64_t l_out = params.l_out_range.draw(rng);
        int64_t strength = params.L_dir_range.draw(rng);
        directed_perturb_edges(inst, state, hist, l_in, l_out, strength, best.f, rng, stats.perturb,
                               log, stop);
    } else {
        int64_t l_swap = params.l_swap_range.draw(rng);
        int64_t strength = params.L_dir_range.draw(rng);
        directed_perturb_vertices(inst, state, hist, l_swap, strength, best.f, rng, stats.perturb, log,
                                  stop);
    }
}

void offer_best(const SearchState& state, BestSolution& best) {
    if (state.tree.objective < best.f) {
        best.tree = state.tree;
        best.f = state.tree.objective;
    }
}

} // namespace

void explore_local_optima(const Instance& inst, SearchState& state, TabuHistory& hist,
                          const TpsParams& params, BestSolution& best, Rng& rng, RunStats& stats,
                          MoveLog* log, const StopGuard* stop) {
    SearchState region = state; // best local optimum seen in this region
    offer_best(region, best);
    int omega = 0;
    while (omega < params.omega_max) {
        if (stop && stop->hit(region.tree.objective)) break;
        directed_perturb(inst, state, hist, params, best, rng, stats, log, stop);
        descent(inst, state, rng, stats.descent, stop);
        if (state.tree.objective < region.tree.objective) {
            region = state;
            omega = 0;
            offer_best(region, best); // keep the aspiration threshold current
        } else {
            ++omega;
        }
    }
    state = region;
}

namespace {

RunResult run_impl(const Instance& inst, const TpsParams& params, const StopCriterion& stop,
                   uint64_t seed, Variant variant, bool keep_move_log) {
    params.validate();
    const auto t0 = std::chrono::steady_clock::now();

    StopGuard guard;
    if (stop.mode == StopCriterion::Mode::wall_clock) {
        if (stop.seconds <= 0) throw std::runtime_error("stop: time budget must be positive");
        guard.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(stop.seconds));
    } else if (stop.mode == StopCriterion::Mode::target_value) {
        guard.target = stop.target;
    } else if (stop.mode == StopCriterion::Mode::max_rounds) {
        if (stop.max_rounds <= 0) throw std::runtime_error("stop: round budget must be positive");
    } else {
        if (stop.stagnant_rounds <= 0 || stop.round_cap <= 0)
            throw std::runtime_error("stop: stagnation thresholds must be positive");
    }

    Rng rng(seed);
    RunResult result;
    result.seed = seed;
    MoveLog* log = keep_move_log ? &result.move_log : nullptr;

    TabuHistory hist(inst);
    SearchState state;
    state.tree = random_spanning_tree(inst, rng);
    state.dvec = build_contributions(inst, state.tree);

    descent(inst, state, rng, result.stats.descent, &guard);
    BestSolution best{state.tree, state.tree.objective};
    explore_local_optima(inst, state, hist, params, best, rng, result.stats, log, &guard);

    int64_t rounds = 0;
    int64_t stagnant = 0;
    auto finished = [&] {
        switch (stop.mode) {
            case StopCriterion::Mode::max_rounds:
                return rounds >= stop.max_rounds;
            case StopCriterion::Mode::stagnant_rounds_or_cap:
                return stagnant >= stop.stagnant_rounds || rounds >= stop.round_cap;
            case StopCriterion::Mode::target_value:
                return best.f <= stop.target;
            case StopCriterion::Mode::wall_clock:
                return std::chrono::steady_clock::now() >= *guard.deadline;
        }
        return true;
    };
    while (!finished()) {
        const int64_t before = best.f;
        switch (variant) {
            case Variant::v0:
                diversified_perturb(inst, state, params.L_div_range.draw(rng), rng,
                                    result.stats.perturb, log, &guard);
                break;
            case Variant::v1:
                state.tree = random_spanning_tree(inst, rng);
                state.dvec = build_contributions(inst, state.tree);
                break;
            case Variant::v2:
                directed_perturb(inst, state, hist, params, best, rng, result.stats, log, &guard);
                break;
        }
        descent(inst, state, rng, result.stats.descent, &guard);
        explore_local_optima(inst, state, hist, params, best, rng, result.stats, log, &guard);
        ++rounds;
        stagnant = best.f < before ? 0 : stagnant + 1;
    }
    result.best_tree = best.tree;
    result.best_f = best.f;
    result.rounds = rounds;
    result.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace

RunResult tps_run(const Instance& inst, const TpsParams& params, const StopCriterion& stop,
                  uint64_t seed, bool keep_move_log) {
    return run_impl(inst, params, stop, seed, Variant::v0, keep_move_log);
}

RunResult variant_run(const Instance& inst, const TpsParams& params, const StopCriterion& stop,
                      uint64_t seed, Variant variant, bool keep_move_log) {
    return run_impl(inst, params, stop, seed, variant, keep_move_log);
}

} // namespace qmstp
