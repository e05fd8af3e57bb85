#ifndef QMSTP_EXPERIMENT_HPP
#define QMSTP_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmstp/instance.hpp"
#include "qmstp/tps.hpp"

namespace qmstp {

/// Where an experiment's instance comes from: an explicit file, or one of
/// the named generator families.
struct InstanceSpec {
    std::string path;    ///< non-empty: load this file, ignore the rest
    std::string family;  ///< cp|sym|vsym|esym|sca|ss|rand|soak
    int n = 0;
    double density = 1.0;  ///< cp only
    int cost_max = 100;    ///< cp only
    uint64_t gen_seed = 1;

    /// Name used in result records: the file stem, or family-n<n>-g<seed>.
    std::string label() const;
};

/// Build an instance of one of the benchmark families:
///   cp    density/cost_max as given, linear and pair costs both [1,cost_max]
///   sym   complete, linear [1,100], pair [1,20]
///   ss    same construction as sym
///   rand  same construction as sym
///   vsym  complete, linear [1,10000], pair = product of four vertex weights
///   esym  points in a 100-square, linear = endpoint distance, pair = midpoint distance
///   sca   points in a 500-square, linear = endpoint distance, pair [0,20]
///   soak  points in a 500-square, linear = endpoint distance, pair [1,20]
Instance make_family_instance(const std::string& family, int n, double density,
                              int cost_max, uint64_t seed);

/// Everything one `solve`/`bench` invocation needs.
struct RunConfig {
    InstanceSpec instance;
    Profile profile = Profile::general;
    std::vector<std::string> overrides;  ///< raw KEY=VALUE strings
    StopCriterion stop = StopCriterion::stagnant(10, 50);
    int replicas = 1;
    uint64_t base_seed = 1;  ///< replica k runs with seed base_seed + k
    Variant variant = Variant::v0;
    bool move_log = false;    ///< emit one record per applied move
    bool emit_timing = true;  ///< include wall-time fields in records
    int workers = 0;          ///< 0: one per hardware thread
};

/// Apply CLI parameter overrides on top of the profile defaults.  Each
/// override is KEY=VALUE with KEY one of p, lin, lout, lswap, Ldir, Ldiv,
/// omega.  Range values are written lo:hi; a single value gives a
/// degenerate range.  Bounds may use an `n` suffix scaled by the instance
/// size, e.g. "Ldir=5n:10n" or "lout=0.35n:0.45n".
TpsParams resolve_params(Profile profile, int n, const std::vector<std::string>& overrides);

/// Parse "rounds:R", "stagnant:S,CAP", "target:F", or "time:SECONDS".
StopCriterion parse_stop(const std::string& text);

/// One replica's outcome: a result, or the error that ended it.
struct ReplicaOutcome {
    int index = 0;
    uint64_t seed = 0;
    bool failed = false;
    std::string error;
    RunResult result;
};

/// Aggregated view over all replicas of one configuration.
struct ExperimentReport {
    std::string instance_name;
    int n = 0;
    int m = 0;
    std::vector<ReplicaOutcome> replicas;

    int64_t best_f = 0;      ///< min over successful replicas
    double average_f = 0.0;  ///< mean best value over successful replicas
    int hits = 0;            ///< replicas whose best equals best_f
    double total_time_ms = 0.0;
    double mean_time_ms = 0.0;
    int64_t discarded_edges = 0;
    int64_t total_candidates = 0;
    int successes = 0;
    int failures = 0;

    std::optional<int64_t> reference;  ///< best-known value, if a table had one
    int improve_count = 0;             ///< replicas strictly below the reference
    int match_count = 0;               ///< replicas equal to the reference

    double discard_ratio() const;
};

/// Run all replicas of one configuration (bounded thread pool, one solver
/// state per replica) and aggregate.  `reference` supplies the best-known
/// value for the improve/match counters.
ExperimentReport run_experiment(const Instance& inst, const RunConfig& config,
                                std::optional<int64_t> reference = std::nullopt);

/// Newline-delimited JSON records.  One object per replica (plus one per
/// move when requested) and a final aggregate object.
void write_report(std::ostream& out, const ExperimentReport& report, const RunConfig& config);

/// Best-known value table: lines of "<name> <value>", # comments allowed.
std::map<std::string, int64_t> load_reference_table(std::istream& in);
std::map<std::string, int64_t> load_reference_table(const std::string& path);

/// Fixed-width comparison table over several experiment reports.
std::string bench_table(const std::vector<ExperimentReport>& reports);

} // namespace qmstp

#endif
