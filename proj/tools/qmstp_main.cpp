#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmstp/exact.hpp"
#include "qmstp/experiment.hpp"
#include "qmstp/generators.hpp"
#include "qmstp/instance.hpp"
#include "qmstp/spanning_tree.hpp"
#include "qmstp/tps.hpp"

namespace {

using nlohmann::json;
using namespace qmstp;

Profile parse_profile(const std::string& name) {
    if (name == "general") return Profile::general;
    if (name == "qap") return Profile::qap;
    throw std::runtime_error("unknown profile '" + name + "'");
}

Variant parse_variant(const std::string& name) {
    if (name == "v0") return Variant::v0;
    if (name == "v1") return Variant::v1;
    if (name == "v2") return Variant::v2;
    throw std::runtime_error("unknown variant '" + name + "'");
}

json instance_summary(const Instance& inst) {
    int32_t c_min = std::numeric_limits<int32_t>::max();
    int32_t c_max = std::numeric_limits<int32_t>::min();
    for (int32_t c : inst.c) {
        c_min = std::min(c_min, c);
        c_max = std::max(c_max, c);
    }
    int32_t s_min = 0;
    int32_t s_max = 0;
    bool first_pair = true;
    for (int e = 0; e < inst.m; ++e)
        for (int f = e + 1; f < inst.m; ++f) {
            const int32_t s = inst.s_at(e, f);
            if (first_pair) {
                s_min = s_max = s;
                first_pair = false;
            } else {
                s_min = std::min(s_min, s);
                s_max = std::max(s_max, s);
            }
        }
    return json{
        {"n", inst.n},
        {"m", inst.m},
        {"density", inst.density()},
        {"c_min", c_min},
        {"c_max", c_max},
        {"s_min", s_min},
        {"s_max", s_max},
        {"lambda_max", inst.lambda_max},
    };
}

/// Options shared by solve and bench.
struct SolveOpts {
    std::vector<std::string> instances;
    std::string family;
    std::vector<int> sizes;
    double density = 1.0;
    int cost_max = 100;
    uint64_t gen_seed = 1;
    std::string profile = "general";
    std::vector<std::string> params;
    std::string stop = "stagnant:10,50";
    int replicas = 1;
    uint64_t seed = 1;
    std::string variant = "v0";
    std::string reference;
    std::string out;
    bool move_log = false;
    bool no_timing = false;
    int workers = 0;
};

void add_solver_flags(CLI::App* cmd, SolveOpts& opts) {
    cmd->add_option("--instance", opts.instances, "instance file (repeatable for bench)");
    cmd->add_option("--family", opts.family,
                    "generator family: cp, sym, vsym, esym, sca, ss, rand, soak");
    cmd->add_option("--n", opts.sizes, "vertex count for --family (repeatable for bench)");
    cmd->add_option("--density", opts.density, "edge density for the cp family");
    cmd->add_option("--cost-max", opts.cost_max, "cost upper bound for the cp family");
    cmd->add_option("--gen-seed", opts.gen_seed, "generator seed for --family");
    cmd->add_option("--profile", opts.profile, "parameter preset: general or qap")
        ->check(CLI::IsMember({"general", "qap"}));
    cmd->add_option("--param", opts.params,
                    "override, e.g. p=0.5 or Ldir=5n:10n (repeatable)");
    cmd->add_option("--stop", opts.stop,
                    "stop criterion: rounds:R, stagnant:S,CAP, target:F, or time:SECONDS");
    cmd->add_option("--replicas", opts.replicas, "independent runs; replica k uses seed+k")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "base seed for the solver runs");
    cmd->add_option("--variant", opts.variant, "diversification variant")
        ->check(CLI::IsMember({"v0", "v1", "v2"}));
    cmd->add_option("--reference", opts.reference, "best-known table: '<name> <value>' lines");
    cmd->add_option("--out", opts.out, "write result records to this file instead of stdout");
    cmd->add_flag("--move-log", opts.move_log, "emit one record per applied move");
    cmd->add_flag("--no-timing", opts.no_timing,
                  "omit wall-time fields so records are reproducible byte for byte");
    cmd->add_option("--workers", opts.workers, "replica thread cap (0 = hardware threads)");
}

/// Expand the instance options into concrete InstanceSpec entries: files
/// first, then one entry per requested generated size.
std::vector<InstanceSpec> expand_specs(const SolveOpts& opts) {
    std::vector<InstanceSpec> specs;
    for (const std::string& path : opts.instances) {
        InstanceSpec spec;
        spec.path = path;
        specs.push_back(spec);
    }
    if (!opts.family.empty()) {
        if (opts.sizes.empty())
            throw std::runtime_error("--family requires --n");
        for (int n : opts.sizes) {
            InstanceSpec spec;
            spec.family = opts.family;
            spec.n = n;
            spec.density = opts.density;
            spec.cost_max = opts.cost_max;
            spec.gen_seed = opts.gen_seed;
            specs.push_back(spec);
        }
    } else if (!opts.sizes.empty()) {
        throw std::runtime_error("--n requires --family");
    }
    return specs;
}

Instance realize(const InstanceSpec& spec) {
    if (!spec.path.empty()) return load_instance(spec.path);
    return make_family_instance(spec.family, spec.n, spec.density, spec.cost_max,
                                spec.gen_seed);
}

RunConfig make_config(const SolveOpts& opts, const InstanceSpec& spec) {
    RunConfig config;
    config.instance = spec;
    config.profile = parse_profile(opts.profile);
    config.overrides = opts.params;
    config.stop = parse_stop(opts.stop);
    config.replicas = opts.replicas;
    config.base_seed = opts.seed;
    config.variant = parse_variant(opts.variant);
    config.move_log = opts.move_log;
    config.emit_timing = !opts.no_timing;
    config.workers = opts.workers;
    return config;
}

int run_solve_like(const SolveOpts& opts, bool bench) {
    const std::vector<InstanceSpec> specs = expand_specs(opts);
    if (!bench && specs.size() != 1)
        throw std::runtime_error("solve needs exactly one --instance or one --family/--n pair");

    std::map<std::string, int64_t> reference_table;
    if (!opts.reference.empty()) reference_table = load_reference_table(opts.reference);

    std::ofstream out_file;
    if (!opts.out.empty()) {
        out_file.open(opts.out);
        if (!out_file) throw std::runtime_error("cannot open output file '" + opts.out + "'");
    }
    std::ostream& records = opts.out.empty() ? std::cout : out_file;

    std::vector<ExperimentReport> reports;
    int failures = 0;
    for (const InstanceSpec& spec : specs) {
        const Instance inst = realize(spec);
        const RunConfig config = make_config(opts, spec);
        std::optional<int64_t> reference;
        auto it = reference_table.find(config.instance.label());
        if (it != reference_table.end()) reference = it->second;
        ExperimentReport report = run_experiment(inst, config, reference);
        write_report(records, report, config);
        failures += report.failures;
        reports.push_back(std::move(report));
    }
    if (bench || !opts.out.empty()) std::cout << bench_table(reports);
    return failures == 0 ? 0 : 1;
}

int run_generate(const std::string& family, int n, double density, int cost_max,
                 uint64_t seed, const std::string& out_path) {
    const Instance inst = make_family_instance(family, n, density, cost_max, seed);
    save_instance(inst, out_path);
    std::cout << instance_summary(inst).dump() << '\n';
    return 0;
}

int run_exact(const std::string& path, uint64_t max_trees, const std::string& tree_out) {
    const Instance inst = load_instance(path);
    const ExactResult res = exact_optimum(inst, max_trees);
    std::cout << "F " << res.best_f << '\n';
    std::cout << "trees " << res.tree_count << '\n';
    std::cout << "edges";
    for (int e : res.best_edges)
        std::cout << ' ' << inst.edges[static_cast<size_t>(e)].first << '-'
                  << inst.edges[static_cast<size_t>(e)].second;
    std::cout << '\n';
    if (!tree_out.empty()) {
        const SpanningTree tree = tree_from_edges(inst, res.best_edges);
        std::ofstream out(tree_out);
        if (!out) throw std::runtime_error("cannot open output file '" + tree_out + "'");
        write_tree(out, inst, tree);
    }
    return 0;
}

int run_stats(const std::string& path) {
    const Instance inst = load_instance(path);
    std::cout << instance_summary(inst).dump() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic minimum spanning tree solver and experiment toolkit"};
    app.require_subcommand(1);

    SolveOpts solve_opts;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run the solver on one instance");
    add_solver_flags(solve_cmd, solve_opts);

    SolveOpts bench_opts;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "run the solver over several instances and tabulate");
    add_solver_flags(bench_cmd, bench_opts);

    std::string gen_family;
    int gen_n = 0;
    double gen_density = 1.0;
    int gen_cost_max = 100;
    uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App* gen_cmd = app.add_subcommand("generate", "write a benchmark-family instance");
    gen_cmd->add_option("--family", gen_family, "cp, sym, vsym, esym, sca, ss, rand, soak")
        ->required();
    gen_cmd->add_option("--n", gen_n, "vertex count")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--density", gen_density, "edge density for the cp family");
    gen_cmd->add_option("--cost-max", gen_cost_max, "cost upper bound for the cp family");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output instance file")->required();

    std::string exact_instance;
    uint64_t exact_bound = kDefaultTreeBound;
    std::string exact_tree_out;
    CLI::App* exact_cmd =
        app.add_subcommand("exact", "enumerate all spanning trees and report the optimum");
    exact_cmd->add_option("--instance", exact_instance, "instance file")->required();
    exact_cmd->add_option("--max-trees", exact_bound, "enumeration refusal bound");
    exact_cmd->add_option("--out", exact_tree_out, "also write the optimal tree to this file");

    std::string stats_instance;
    CLI::App* stats_cmd = app.add_subcommand("stats", "print a summary of an instance file");
    stats_cmd->add_option("--instance", stats_instance, "instance file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve_cmd->parsed()) return run_solve_like(solve_opts, false);
        if (bench_cmd->parsed()) return run_solve_like(bench_opts, true);
        if (gen_cmd->parsed())
            return run_generate(gen_family, gen_n, gen_density, gen_cost_max, gen_seed,
                                gen_out);
        if (exact_cmd->parsed()) return run_exact(exact_instance, exact_bound, exact_tree_out);
        if (stats_cmd->parsed()) return run_stats(stats_instance);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
