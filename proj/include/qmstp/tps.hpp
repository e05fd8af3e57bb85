#ifndef QMSTP_TPS_HPP
#define QMSTP_TPS_HPP

#include <cstdint>
#include <string>

#include "qmstp/descent.hpp"
#include "qmstp/instance.hpp"
#include "qmstp/perturb.hpp"
#include "qmstp/spanning_tree.hpp"
#include "qmstp/stop.hpp"
#include "qmstp/util.hpp"

namespace qmstp {

enum class Profile { general, qap };

/// All solver tunables.  The ranges are sampled afresh at every operator
/// invocation; see default_params for the built-in presets.
struct TpsParams {
    double p = 1.0;            ///< probability of the edge flavor of directed perturbation
    IntRange l_in_range;       ///< tenure against re-entering a touched edge
    IntRange l_out_range;      ///< tenure against removing a touched edge
    IntRange l_swap_range;     ///< tenure against re-swapping a touched vertex
    IntRange L_dir_range;      ///< directed perturbation strength
    IntRange L_div_range;      ///< diversified perturbation strength
    int omega_max = 5;         ///< consecutive non-improving rounds tolerated while exploring
    Profile profile = Profile::general;

    void validate() const;     ///< throws std::runtime_error on bad fields
};

/// Preset parameter profiles, scaled by instance size with round-half-up on
/// the fractional bounds and clamped so every range stays non-empty and
/// non-negative.
TpsParams default_params(Profile profile, int n);

/// Termination rule; exactly one mode per run.
struct StopCriterion {
    enum class Mode { max_rounds, stagnant_rounds_or_cap, target_value, wall_clock };
    Mode mode = Mode::stagnant_rounds_or_cap;
    int64_t max_rounds = 0;       ///< max_rounds mode
    int64_t stagnant_rounds = 0;  ///< stagnant mode: consecutive non-improving rounds
    int64_t round_cap = 0;        ///< stagnant mode: hard round cap
    int64_t target = 0;           ///< target_value mode
    double seconds = 0.0;         ///< wall_clock mode

    static StopCriterion rounds(int64_t r);
    static StopCriterion stagnant(int64_t s, int64_t cap);
    static StopCriterion target_value(int64_t f);
    static StopCriterion wall_clock(double seconds);
};

struct RunStats {
    DescentStats descent;
    PerturbStats perturb;
};

/// Everything one solver run reports.
struct RunResult {
    SpanningTree best_tree;
    int64_t best_f = 0;
    int64_t rounds = 0;       ///< diversification rounds executed
    RunStats stats;
    double wall_ms = 0.0;
    uint64_t seed = 0;
    MoveLog move_log;         ///< filled only when requested
};

/// Incumbent shared across phases: the aspiration rule compares against
/// best.f, and any phase that finds a better local optimum installs it.
struct BestSolution {
    SpanningTree tree;
    int64_t f = INT64_MAX;
};

/// The exploring phase: repeated directed-perturbation + descent rounds,
/// keeping the best local optimum of the region; gives up after omega_max
/// consecutive rounds without improving it.  On return `state` holds that
/// region best, and `best` has been updated if the region beat it.
void explore_local_optima(const Instance& inst, SearchState& state, TabuHistory& hist,
                          const TpsParams& params, BestSolution& best, Rng& rng, RunStats& stats,
                          MoveLog* log = nullptr, const StopGuard* stop = nullptr);

/// Diversification flavors: v0 rebuilds locality with random edge
/// replacements, v1 restarts from a fresh random tree, v2 runs one directed
/// perturbation call instead.
enum class Variant { v0, v1, v2 };

/// Full search: random start, descent, explore, then diversify + descent +
/// explore rounds until the stop criterion fires.  Deterministic for a
/// given (instance, params, stop, seed).
RunResult tps_run(const Instance& inst, const TpsParams& params, const StopCriterion& stop,
                  uint64_t seed, bool keep_move_log = false);

/// tps_run with the diversification step swapped per the variant; v0 is
/// exactly tps_run.
RunResult variant_run(const Instance& inst, const TpsParams& params, const StopCriterion& stop,
                      uint64_t seed, Variant variant, bool keep_move_log = false);

} // namespace qmstp

#endif
