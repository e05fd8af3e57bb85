#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qmstp/exact.hpp"
#include "qmstp/experiment.hpp"
#include "qmstp/instance.hpp"

using namespace qmstp;

namespace {

RunConfig quick_config(int replicas, uint64_t base_seed) {
    RunConfig config;
    config.instance.family = "ss";
    config.instance.n = 0;  // label only; callers pass the instance directly
    config.stop = StopCriterion::stagnant(2, 4);
    config.replicas = replicas;
    config.base_seed = base_seed;
    config.workers = 1;
    config.emit_timing = false;
    return config;
}

} // namespace

TEST_CASE("override grammar covers plain, range, and size-scaled values") {
    const std::vector<std::string> overrides = {"p=0.5", "Ldir=5n:10n", "lout=0.35n:0.45n",
                                                "omega=3", "lin=2"};
    const TpsParams params = resolve_params(Profile::general, 30, overrides);
    CHECK(params.p == 0.5);
    CHECK(params.L_dir_range.lo == 150);
    CHECK(params.L_dir_range.hi == 300);
    CHECK(params.l_out_range.lo == 11);  // 10.5 rounds up
    CHECK(params.l_out_range.hi == 14);  // 13.5 rounds up
    CHECK(params.omega_max == 3);
    CHECK(params.l_in_range.lo == 2);    // single value: degenerate range
    CHECK(params.l_in_range.hi == 2);

    const TpsParams at100 = resolve_params(Profile::general, 100, {"lout=0.35n:0.45n"});
    CHECK(at100.l_out_range.lo == 35);
    CHECK(at100.l_out_range.hi == 45);

    // an inverted range is clamped the same way the presets are
    const TpsParams clamped = resolve_params(Profile::general, 10, {"Ldir=9:3"});
    CHECK(clamped.L_dir_range.lo == 9);
    CHECK(clamped.L_dir_range.hi == 9);

    // untouched keys keep their profile defaults
    const TpsParams defaults = default_params(Profile::general, 30);
    CHECK(params.L_div_range.lo == defaults.L_div_range.lo);
    CHECK(params.L_div_range.hi == defaults.L_div_range.hi);
    CHECK(params.l_swap_range.lo == defaults.l_swap_range.lo);
}

TEST_CASE("override errors name the offending piece") {
    CHECK_THROWS_WITH_AS(resolve_params(Profile::general, 10, {"bogus=3"}),
                         doctest::Contains("bogus"), std::runtime_error);
    CHECK_THROWS_AS(resolve_params(Profile::general, 10, {"p"}), std::runtime_error);
    CHECK_THROWS_AS(resolve_params(Profile::general, 10, {"p=x"}), std::runtime_error);
    CHECK_THROWS_AS(resolve_params(Profile::general, 10, {"p=2.0"}), std::runtime_error);
    CHECK_THROWS_AS(resolve_params(Profile::general, 10, {"omega=0"}), std::runtime_error);
}

TEST_CASE("stop grammar parses every mode") {
    const StopCriterion rounds = parse_stop("rounds:12");
    CHECK(rounds.mode == StopCriterion::Mode::max_rounds);
    CHECK(rounds.max_rounds == 12);
    const StopCriterion stagnant = parse_stop("stagnant:5,40");
    CHECK(stagnant.mode == StopCriterion::Mode::stagnant_rounds_or_cap);
    CHECK(stagnant.stagnant_rounds == 5);
    CHECK(stagnant.round_cap == 40);
    const StopCriterion target = parse_stop("target:1234");
    CHECK(target.mode == StopCriterion::Mode::target_value);
    CHECK(target.target == 1234);
    const StopCriterion timed = parse_stop("time:2.5");
    CHECK(timed.mode == StopCriterion::Mode::wall_clock);
    CHECK(timed.seconds == doctest::Approx(2.5));

    CHECK_THROWS_AS(parse_stop("rounds:0"), std::runtime_error);
    CHECK_THROWS_AS(parse_stop("stagnant:5"), std::runtime_error);
    CHECK_THROWS_AS(parse_stop("never"), std::runtime_error);
    CHECK_THROWS_AS(parse_stop("time:-1"), std::runtime_error);
}

TEST_CASE("family construction matches the published shapes") {
    const Instance ss = make_family_instance("ss", 25, 1.0, 100, 5);
    CHECK(ss.n == 25);
    CHECK(ss.m == 300);
    for (int e = 0; e < ss.m; ++e) {
        CHECK(ss.c[static_cast<size_t>(e)] >= 1);
        CHECK(ss.c[static_cast<size_t>(e)] <= 100);
        for (int f = 0; f < ss.m; ++f) {
            if (e == f) continue;
            CHECK(ss.s_at(e, f) >= 2);
            CHECK(ss.s_at(e, f) <= 40);
        }
    }
    // sym and rand share the construction, and the same seed gives the
    // same instance
    std::ostringstream a, b;
    save_instance(make_family_instance("sym", 12, 1.0, 100, 9), a);
    save_instance(make_family_instance("rand", 12, 1.0, 100, 9), b);
    CHECK(a.str() == b.str());

    const Instance sca = make_family_instance("sca", 20, 1.0, 100, 5);
    CHECK(sca.m == 190);
    for (int e = 0; e < sca.m; ++e) CHECK(sca.c[static_cast<size_t>(e)] <= 708);  // 500*sqrt(2)+eps

    const Instance cp = make_family_instance("cp", 30, 0.33, 10, 5);
    CHECK(cp.m == 144);  // 0.33 * 435, rounded half-up
    for (int e = 0; e < cp.m; ++e) CHECK(cp.c[static_cast<size_t>(e)] <= 10);

    const Instance vsym = make_family_instance("vsym", 10, 1.0, 100, 5);
    for (int e = 0; e < vsym.m; ++e) CHECK(vsym.c[static_cast<size_t>(e)] <= 10000);
    CHECK(vsym.lambda_max <= 2 * 10 * 10 * 10 * 10);

    CHECK_THROWS_WITH_AS(make_family_instance("mystery", 10, 1.0, 100, 5),
                         doctest::Contains("mystery"), std::runtime_error);
}

TEST_CASE("instance labels identify file stems and generated families") {
    InstanceSpec from_file;
    from_file.path = "/tmp/instances/cp50-1.qmstp";
    CHECK(from_file.label() == "cp50-1");
    InstanceSpec generated;
    generated.family = "vsym";
    generated.n = 35;
    generated.gen_seed = 4;
    CHECK(generated.label() == "vsym-n35-g4");
}

TEST_CASE("reference tables parse names, values, and comments") {
    std::istringstream in(
        "# best known values\n"
        "cp30-1 1234\n"
        "\n"
        "vsym-n35-g4  99887\n");
    const auto table = load_reference_table(in);
    REQUIRE(table.size() == 2);
    CHECK(table.at("cp30-1") == 1234);
    CHECK(table.at("vsym-n35-g4") == 99887);

    std::istringstream bad("cp30-1 notanumber\n");
    CHECK_THROWS_WITH_AS(load_reference_table(bad), doctest::Contains("line 1"),
                         std::runtime_error);
    std::istringstream missing("cp30-1\n");
    CHECK_THROWS_AS(load_reference_table(missing), std::runtime_error);
}

TEST_CASE("replica aggregation reports minima, means, and hit counts") {
    const Instance inst = make_family_instance("ss", 8, 1.0, 100, 3);
    const ExperimentReport report = run_experiment(inst, quick_config(6, 100));
    CHECK(report.n == 8);
    CHECK(report.m == 28);
    CHECK(report.successes == 6);
    CHECK(report.failures == 0);
    REQUIRE(report.replicas.size() == 6);

    int64_t best = std::numeric_limits<int64_t>::max();
    double sum = 0.0;
    for (const ReplicaOutcome& rep : report.replicas) {
        CHECK(!rep.failed);
        CHECK(rep.seed == 100 + static_cast<uint64_t>(rep.index));
        best = std::min(best, rep.result.best_f);
        sum += static_cast<double>(rep.result.best_f);
    }
    CHECK(report.best_f == best);
    CHECK(report.average_f == doctest::Approx(sum / 6.0));
    int hits = 0;
    for (const ReplicaOutcome& rep : report.replicas)
        if (rep.result.best_f == best) ++hits;
    CHECK(report.hits == hits);
    CHECK(report.hits >= 1);
    CHECK(report.total_candidates > 0);
    CHECK(report.discard_ratio() >= 0.0);
    CHECK(report.discard_ratio() <= 1.0);
    CHECK(!report.reference.has_value());
    CHECK(report.improve_count == 0);
    CHECK(report.match_count == 0);
}

TEST_CASE("improve and match counters compare replicas against the reference") {
    const Instance inst = make_family_instance("ss", 7, 1.0, 100, 11);
    const int64_t opt = exact_optimum(inst).best_f;

    RunConfig config = quick_config(5, 40);
    config.stop = StopCriterion::target_value(opt);

    // every replica lands exactly on the optimum
    const ExperimentReport at_opt = run_experiment(inst, config, opt);
    REQUIRE(at_opt.reference.has_value());
    CHECK(*at_opt.reference == opt);
    CHECK(at_opt.best_f == opt);
    CHECK(at_opt.improve_count == 0);
    CHECK(at_opt.match_count == 5);
    CHECK(at_opt.hits == 5);

    // a stale, worse reference counts as improved by every replica
    const ExperimentReport stale = run_experiment(inst, config, opt + 10);
    CHECK(stale.improve_count == 5);
    CHECK(stale.match_count == 0);

    // a reference below the true optimum can never be matched
    const ExperimentReport below = run_experiment(inst, config, opt - 1);
    CHECK(below.improve_count == 0);
    CHECK(below.match_count == 0);
}

TEST_CASE("records serialize byte-identically when timing is suppressed") {
    const Instance inst = make_family_instance("ss", 8, 1.0, 100, 21);
    RunConfig config = quick_config(3, 7);
    config.move_log = true;

    std::ostringstream first, second;
    write_report(first, run_experiment(inst, config), config);
    write_report(second, run_experiment(inst, config), config);
    CHECK(first.str() == second.str());
    CHECK(!first.str().empty());

    // one JSON object per line, replicas plus moves plus the aggregate
    std::istringstream lines(first.str());
    std::string line;
    int count = 0;
    bool saw_aggregate = false, saw_move = false;
    while (std::getline(lines, line)) {
        ++count;
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
        if (line.find("\"aggregate\"") != std::string::npos) saw_aggregate = true;
        if (line.find("\"move\"") != std::string::npos) saw_move = true;
        CHECK(line.find("time_ms") == std::string::npos);
    }
    CHECK(count >= 4);
    CHECK(saw_aggregate);
    CHECK(saw_move);
}

TEST_CASE("worker count does not change the emitted records") {
    const Instance inst = make_family_instance("ss", 9, 1.0, 100, 31);
    RunConfig serial = quick_config(4, 9);
    RunConfig parallel = serial;
    parallel.workers = 4;

    std::ostringstream a, b;
    write_report(a, run_experiment(inst, serial), serial);
    write_report(b, run_experiment(inst, parallel), parallel);
    CHECK(a.str() == b.str());
}

TEST_CASE("the comparison table lines up one row per experiment") {
    const Instance small = make_family_instance("ss", 7, 1.0, 100, 2);
    RunConfig config = quick_config(2, 5);
    config.instance.n = 7;
    ExperimentReport report = run_experiment(small, config, 12345);
    report.instance_name = config.instance.label();

    const std::string table = bench_table({report});
    CHECK(table.find("instance") != std::string::npos);
    CHECK(table.find("ss-n7-g1") != std::string::npos);
    CHECK(table.find("12345") != std::string::npos);
    CHECK(table.find(std::to_string(report.best_f)) != std::string::npos);
    CHECK(bench_table({}).empty() == false);  // header row still present
}
