#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "qmstp/instance.hpp"

using qmstp::Instance;
using qmstp::load_instance;
using qmstp::save_instance;

namespace {

// Triangle with one interacting edge pair.
const char* kTriangle =
    "# tiny example\n"
    "QMSTP 3 3\n"
    "1 2 1\n"
    "1 3 2\n"
    "\n"
    "2 3 3   # costs above\n"
    "0 10 0\n"
    "10 0 0\n"
    "0 0 0\n";

Instance triangle() {
    std::istringstream in(kTriangle);
    return load_instance(in);
}

Instance from_text(const std::string& text) {
    std::istringstream in(text);
    return load_instance(in);
}

} // namespace

TEST_CASE("parser reads header, edges, matrix, comments, and blank lines") {
    const Instance inst = triangle();
    CHECK(inst.n == 3);
    CHECK(inst.m == 3);
    CHECK(inst.edges[0] == std::pair<int, int>(1, 2));
    CHECK(inst.edges[2] == std::pair<int, int>(2, 3));
    CHECK(inst.c[0] == 1);
    CHECK(inst.c[2] == 3);
    CHECK(inst.s_at(0, 1) == 10);
    CHECK(inst.s_at(1, 0) == 10);
    CHECK(inst.s_at(0, 2) == 0);
    CHECK(inst.lambda_max == 10);
}

TEST_CASE("edge lookup is symmetric and rejects absent pairs") {
    const Instance inst = triangle();
    CHECK(inst.edge_index(1, 2) == 0);
    CHECK(inst.edge_index(2, 1) == 0);
    CHECK(inst.edge_index(2, 3) == 2);
    CHECK(inst.edge_index(1, 1) == -1);
    CHECK(inst.other_end(0, 1) == 2);
    CHECK(inst.other_end(0, 2) == 1);
}

TEST_CASE("adjacency lists every incident edge") {
    const Instance inst = triangle();
    CHECK(inst.adjacency[1].size() == 2);
    CHECK(inst.adjacency[2].size() == 2);
    CHECK(inst.adjacency[3].size() == 2);
}

TEST_CASE("density of a complete graph is 1") {
    const Instance inst = triangle();
    CHECK(inst.density() == doctest::Approx(1.0));
}

TEST_CASE("save and load round-trip preserves every field") {
    const Instance inst = oracle::random_instance(5, 6, 10);
    std::ostringstream out;
    save_instance(inst, out);
    std::istringstream in(out.str());
    const Instance back = load_instance(in);
    CHECK(back.n == inst.n);
    CHECK(back.m == inst.m);
    CHECK(back.edges == inst.edges);
    CHECK(back.c == inst.c);
    CHECK(back.s == inst.s);
    CHECK(back.lambda_max == inst.lambda_max);

    std::ostringstream again;
    save_instance(back, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("parse errors carry the offending line number") {
    CHECK_THROWS_WITH_AS(from_text(""), "empty input", std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("MSTP 3 3\n"), doctest::Contains("line 1"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 3\n"), doctest::Contains("expected header"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 3 3\n1 2 1\n"),
                         doctest::Contains("unexpected end of input"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 2 1\n1 2 1\n0 0\n"),
        doctest::Contains("more than m entries"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 2 1\n1 2 99999999999\n0\n"),
        doctest::Contains("32-bit"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 3 3\n1 2 1\n1 3 2\n2 3 3\n0 10\n10 0 0\n0 0 0\n"),
        doctest::Contains("fewer than m entries"), std::runtime_error);
}

TEST_CASE("validation rejects malformed instances") {
    CHECK_THROWS_WITH_AS(from_text("QMSTP 1 1\n1 1 0\n0\n"),
                         doctest::Contains("bad vertex/edge count"), std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 3 1\n1 2 1\n0\n"),
                         doctest::Contains("edge count out of range"), std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 3 2\n1 2 1\n2 1 1\n0 0\n0 0\n"),
                         doctest::Contains("u < v"), std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 3 2\n1 2 1\n1 4 1\n0 0\n0 0\n"),
                         doctest::Contains("out of range"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 3 3\n1 2 1\n1 2 1\n2 3 1\n0 0 0\n0 0 0\n0 0 0\n"),
        doctest::Contains("duplicate edge"), std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 2 1\n1 2 -4\n0\n"),
                         doctest::Contains("negative cost"), std::runtime_error);
    CHECK_THROWS_WITH_AS(from_text("QMSTP 2 1\n1 2 1\n5\n"),
                         doctest::Contains("diagonal"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 3 3\n1 2 1\n1 3 1\n2 3 1\n0 3 0\n4 0 0\n0 0 0\n"),
        doctest::Contains("asymmetric"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 3 3\n1 2 1\n1 3 1\n2 3 1\n0 3 0\n3 0 -1\n0 -1 0\n"),
        doctest::Contains("negative cost in interaction"), std::runtime_error);
    // 4 vertices, two disjoint pairs: connected check must fire
    CHECK_THROWS_WITH_AS(
        from_text("QMSTP 4 3\n1 2 1\n1 3 1\n2 3 1\n0 0 0\n0 0 0\n0 0 0\n"),
        doctest::Contains("disconnected"), std::runtime_error);
}

TEST_CASE("largest pairwise interaction is cached on load") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = oracle::random_instance(seed, 5, 12);
        CHECK(inst.lambda_max == oracle::max_pair_interaction(inst));
    }
}

TEST_CASE("missing file reports its path") {
    CHECK_THROWS_WITH_AS(load_instance(std::string("/nonexistent/foo.q")),
                         doctest::Contains("/nonexistent/foo.q"), std::runtime_error);
}
