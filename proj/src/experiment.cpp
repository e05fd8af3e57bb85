#include "qmstp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "qmstp/generators.hpp"
#include "qmstp/perturb.hpp"
#include "qmstp/util.hpp"

namespace qmstp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

/// One range bound: "12", "0.5", "n", "5n", "0.35n".  The `n` suffix scales
/// by the instance size; fractional results round half up.
int64_t parse_bound(const std::string& raw, int n) {
    if (raw.empty()) fail("empty bound in parameter override");
    std::string num = raw;
    bool scaled = false;
    if (num.back() == 'n') {
        scaled = true;
        num.pop_back();
    }
    double coeff = 1.0;
    if (!num.empty()) {
        size_t pos = 0;
        try {
            coeff = std::stod(num, &pos);
        } catch (const std::exception&) {
            fail("bad bound '" + raw + "' in parameter override");
        }
        if (pos != num.size()) fail("bad bound '" + raw + "' in parameter override");
    } else if (!scaled) {
        fail("empty bound in parameter override");
    }
    return round_half_up(scaled ? coeff * n : coeff);
}

/// "lo:hi" or a single value (degenerate range), clamped like the profile
/// defaults: lower bound at least 0, upper bound at least the lower.
IntRange parse_range(const std::string& value, int n) {
    IntRange range{};
    auto colon = value.find(':');
    if (colon == std::string::npos) {
        range.lo = range.hi = parse_bound(value, n);
    } else {
        range.lo = parse_bound(value.substr(0, colon), n);
        range.hi = parse_bound(value.substr(colon + 1), n);
    }
    range.lo = std::max<int64_t>(range.lo, 0);
    range.hi = std::max(range.hi, range.lo);
    return range;
}

double parse_probability(const std::string& value) {
    size_t pos = 0;
    double p = -1.0;
    try {
        p = std::stod(value, &pos);
    } catch (const std::exception&) {
        fail("bad probability '" + value + "' in parameter override");
    }
    if (pos != value.size() || p < 0.0 || p > 1.0)
        fail("probability '" + value + "' must be a number in [0,1]");
    return p;
}

int64_t parse_int(const std::string& text, const std::string& what) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        fail("bad " + what + " '" + text + "'");
    }
    if (pos != text.size()) fail("bad " + what + " '" + text + "'");
    return v;
}

const char* op_name(MoveOp op) {
    switch (op) {
        case MoveOp::swap_edge: return "swap_edge";
        case MoveOp::swap_vertex: return "swap_vertex";
        case MoveOp::diversify: return "diversify";
    }
    return "unknown";
}

json moves_json(const RunStats& stats) {
    return json{
        {"descent_iterations", stats.descent.iterations},
        {"swap_edge", stats.descent.swap_edge_moves},
        {"swap_vertex", stats.descent.swap_vertex_moves},
        {"directed_edge", stats.perturb.directed_edge_moves},
        {"directed_vertex", stats.perturb.directed_vertex_moves},
        {"diversified", stats.perturb.diversified_moves},
        {"fallback_steps", stats.perturb.fallback_steps},
        {"aspiration", stats.perturb.aspiration_moves},
    };
}

json replica_json(const std::string& name, const ReplicaOutcome& rep, bool emit_timing) {
    if (rep.failed)
        return json{{"instance", name}, {"seed", rep.seed}, {"error", rep.error}};
    json rec{
        {"instance", name},
        {"seed", rep.seed},
        {"bestF", rep.result.best_f},
        {"rounds", rep.result.rounds},
        {"moves", moves_json(rep.result.stats)},
        {"discards", rep.result.stats.descent.discarded_edges},
        {"total_candidates", rep.result.stats.descent.n1_candidate_edges},
    };
    if (emit_timing) rec["time_ms"] = rep.result.wall_ms;
    return rec;
}

json move_json(const std::string& name, uint64_t seed, const MoveRecord& mv) {
    return json{
        {"record", "move"},
        {"instance", name},
        {"seed", seed},
        {"step", mv.step},
        {"op", op_name(mv.op)},
        {"a", mv.a},
        {"b", mv.b},
        {"delta", mv.delta},
        {"objective", mv.objective_after},
        {"tabu", mv.tabu},
        {"aspiration", mv.aspiration},
        {"fallback", mv.fallback},
    };
}

json aggregate_json(const ExperimentReport& report, const RunConfig& config) {
    json rec{
        {"record", "aggregate"},
        {"instance", report.instance_name},
        {"replicas", static_cast<int>(report.replicas.size())},
        {"failures", report.failures},
        {"bestF", report.best_f},
        {"averageF", report.average_f},
        {"hits", report.hits},
        {"discards", report.discarded_edges},
        {"total_candidates", report.total_candidates},
        {"discard_ratio", report.discard_ratio()},
    };
    if (report.reference) {
        rec["reference"] = *report.reference;
        rec["improve"] = report.improve_count;
        rec["match"] = report.match_count;
    }
    if (config.emit_timing) {
        rec["time_ms_total"] = report.total_time_ms;
        rec["time_ms_mean"] = report.mean_time_ms;
    }
    return rec;
}

} // namespace

std::string InstanceSpec::label() const {
    if (!path.empty()) {
        std::string stem = std::filesystem::path(path).stem().string();
        return stem.empty() ? path : stem;
    }
    return family + "-n" + std::to_string(n) + "-g" + std::to_string(gen_seed);
}

Instance make_family_instance(const std::string& family, int n, double density,
                              int cost_max, uint64_t seed) {
    if (family == "cp")
        return generate_uniform(n, density, IntRange{1, cost_max}, IntRange{1, cost_max}, seed);
    if (family == "sym" || family == "ss" || family == "rand")
        return generate_uniform(n, 1.0, IntRange{1, 100}, IntRange{1, 20}, seed);
    if (family == "vsym") return generate_vsym(n, seed);
    if (family == "esym") return generate_esym(n, 100.0, seed);
    if (family == "sca") return generate_euclidean(n, 500.0, IntRange{0, 20}, seed);
    if (family == "soak") return generate_euclidean(n, 500.0, IntRange{1, 20}, seed);
    fail("unknown family '" + family +
         "' (expected cp, sym, vsym, esym, sca, ss, rand, or soak)");
}

TpsParams resolve_params(Profile profile, int n, const std::vector<std::string>& overrides) {
    TpsParams params = default_params(profile, n);
    for (const std::string& item : overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            fail("parameter override '" + item + "' is not KEY=VALUE");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "p") {
            params.p = parse_probability(value);
        } else if (key == "lin") {
            params.l_in_range = parse_range(value, n);
        } else if (key == "lout") {
            params.l_out_range = parse_range(value, n);
        } else if (key == "lswap") {
            params.l_swap_range = parse_range(value, n);
        } else if (key == "Ldir") {
            params.L_dir_range = parse_range(value, n);
        } else if (key == "Ldiv") {
            params.L_div_range = parse_range(value, n);
        } else if (key == "omega") {
            const int64_t v = parse_int(value, "omega value");
            if (v < 1) fail("omega must be at least 1");
            params.omega_max = static_cast<int>(v);
        } else {
            fail("unknown parameter key '" + key +
                 "' (expected p, lin, lout, lswap, Ldir, Ldiv, or omega)");
        }
    }
    params.validate();
    return params;
}

StopCriterion parse_stop(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        fail("stop criterion '" + text +
             "' is not MODE:ARGS (rounds:R, stagnant:S,CAP, target:F, time:SECONDS)");
    const std::string mode = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    if (mode == "rounds") {
        const int64_t r = parse_int(args, "round count");
        if (r < 1) fail("round count must be positive");
        return StopCriterion::rounds(r);
    }
    if (mode == "stagnant") {
        auto comma = args.find(',');
        if (comma == std::string::npos) fail("stagnant stop needs S,CAP");
        const int64_t s = parse_int(args.substr(0, comma), "stagnant round count");
        const int64_t cap = parse_int(args.substr(comma + 1), "round cap");
        if (s < 1 || cap < 1) fail("stagnant thresholds must be positive");
        return StopCriterion::stagnant(s, cap);
    }
    if (mode == "target") return StopCriterion::target_value(parse_int(args, "target value"));
    if (mode == "time") {
        size_t pos = 0;
        double secs = 0.0;
        try {
            secs = std::stod(args, &pos);
        } catch (const std::exception&) {
            fail("bad time budget '" + args + "'");
        }
        if (pos != args.size() || secs <= 0.0) fail("time budget must be a positive number");
        return StopCriterion::wall_clock(secs);
    }
    fail("unknown stop mode '" + mode + "' (expected rounds, stagnant, target, or time)");
}

double ExperimentReport::discard_ratio() const {
    if (total_candidates == 0) return 0.0;
    return static_cast<double>(discarded_edges) / static_cast<double>(total_candidates);
}

ExperimentReport run_experiment(const Instance& inst, const RunConfig& config,
                                std::optional<int64_t> reference) {
    if (config.replicas < 1) fail("replica count must be at least 1");
    const TpsParams params = resolve_params(config.profile, inst.n, config.overrides);

    ExperimentReport report;
    report.instance_name = config.instance.label();
    report.n = inst.n;
    report.m = inst.m;
    report.reference = reference;
    report.replicas.resize(static_cast<size_t>(config.replicas));

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= config.replicas) return;
            ReplicaOutcome& out = report.replicas[static_cast<size_t>(idx)];
            out.index = idx;
            out.seed = config.base_seed + static_cast<uint64_t>(idx);
            try {
                out.result = variant_run(inst, params, config.stop, out.seed, config.variant,
                                         config.move_log);
            } catch (const std::exception& ex) {
                out.failed = true;
                out.error = ex.what();
            }
        }
    };

    int pool = config.workers > 0 ? config.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    pool = std::clamp(pool, 1, config.replicas);
    if (pool == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(pool));
        for (int i = 0; i < pool; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    int64_t best = std::numeric_limits<int64_t>::max();
    double sum_f = 0.0;
    double sum_t = 0.0;
    for (const ReplicaOutcome& rep : report.replicas) {
        if (rep.failed) {
            ++report.failures;
            continue;
        }
        ++report.successes;
        best = std::min(best, rep.result.best_f);
        sum_f += static_cast<double>(rep.result.best_f);
        sum_t += rep.result.wall_ms;
        report.discarded_edges += rep.result.stats.descent.discarded_edges;
        report.total_candidates += rep.result.stats.descent.n1_candidate_edges;
        if (reference) {
            if (rep.result.best_f < *reference) ++report.improve_count;
            else if (rep.result.best_f == *reference) ++report.match_count;
        }
    }
    if (report.successes > 0) {
        report.best_f = best;
        report.average_f = sum_f / report.successes;
        report.total_time_ms = sum_t;
        report.mean_time_ms = sum_t / report.successes;
        for (const ReplicaOutcome& rep : report.replicas)
            if (!rep.failed && rep.result.best_f == best) ++report.hits;
    }
    return report;
}

void write_report(std::ostream& out, const ExperimentReport& report, const RunConfig& config) {
    for (const ReplicaOutcome& rep : report.replicas) {
        if (config.move_log && !rep.failed)
            for (const MoveRecord& mv : rep.result.move_log)
                out << move_json(report.instance_name, rep.seed, mv).dump() << '\n';
        out << replica_json(report.instance_name, rep, config.emit_timing).dump() << '\n';
    }
    out << aggregate_json(report, config).dump() << '\n';
}

std::map<std::string, int64_t> load_reference_table(std::istream& in) {
    std::map<std::string, int64_t> table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string name;
        if (!(fields >> name)) continue;
        long long value = 0;
        if (!(fields >> value))
            fail("reference table line " + std::to_string(line_no) +
                 ": expected '<name> <value>'");
        std::string extra;
        if (fields >> extra)
            fail("reference table line " + std::to_string(line_no) + ": trailing text '" +
                 extra + "'");
        table[name] = value;
    }
    return table;
}

std::map<std::string, int64_t> load_reference_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open reference table '" + path + "'");
    return load_reference_table(in);
}

std::string bench_table(const std::vector<ExperimentReport>& reports) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "instance" << std::right << std::setw(6) << "n"
        << std::setw(8) << "m" << std::setw(12) << "best" << std::setw(14) << "avg"
        << std::setw(12) << "ref" << std::setw(5) << "imp" << std::setw(5) << "mat"
        << std::setw(9) << "disc%" << std::setw(10) << "time_s" << '\n';
    for (const ExperimentReport& r : reports) {
        std::ostringstream avg;
        avg << std::fixed << std::setprecision(1) << r.average_f;
        std::ostringstream disc;
        disc << std::fixed << std::setprecision(1) << 100.0 * r.discard_ratio();
        std::ostringstream secs;
        secs << std::fixed << std::setprecision(2) << r.total_time_ms / 1000.0;
        out << std::left << std::setw(24) << r.instance_name << std::right << std::setw(6)
            << r.n << std::setw(8) << r.m << std::setw(12) << r.best_f << std::setw(14)
            << avg.str() << std::setw(12)
            << (r.reference ? std::to_string(*r.reference) : std::string("-")) << std::setw(5)
            << (r.reference ? std::to_string(r.improve_count) : std::string("-"))
            << std::setw(5)
            << (r.reference ? std::to_string(r.match_count) : std::string("-")) << std::setw(9)
            << disc.str() << std::setw(10) << secs.str() << '\n';
    }
    return out.str();
}

} // namespace qmstp
