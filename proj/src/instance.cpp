#include "qmstp/instance.hpp"

#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qmstp {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

[[noreturn]] void fail_line(int line_no, const std::string& msg) {
    fail("line " + std::to_string(line_no) + ": " + msg);
}

} // namespace

void Instance::finalize() {
    if (n < 2) fail("instance needs at least 2 vertices");
    m = static_cast<int>(edges.size());
    const int64_t max_m = static_cast<int64_t>(n) * (n - 1) / 2;
    if (m < n - 1 || m > max_m) fail("edge count out of range for vertex count");
    if (static_cast<int>(c.size()) != m) fail("cost list length != edge count");
    if (s.size() != static_cast<size_t>(m) * m) fail("interaction matrix is not m x m");

    edge_lookup_.assign(static_cast<size_t>(n + 1) * (n + 1), -1);
    adjacency.assign(n + 1, {});
    for (int e = 0; e < m; ++e) {
        auto [u, v] = edges[e];
        if (u < 1 || v < 1 || u > n || v > n) fail("edge endpoint out of range");
        if (u >= v) fail("edge endpoints must satisfy u < v (no self-loops)");
        if (edge_index(u, v) != -1) fail("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
        edge_lookup_[static_cast<size_t>(u) * (n + 1) + v] = e;
        edge_lookup_[static_cast<size_t>(v) * (n + 1) + u] = e;
        adjacency[u].push_back(e);
        adjacency[v].push_back(e);
        if (c[e] < 0) fail("negative cost on edge index " + std::to_string(e));
    }

    lambda_max = 0;
    for (int e = 0; e < m; ++e) {
        for (int f = 0; f < m; ++f) {
            int32_t v = s_at(e, f);
            if (e == f) {
                if (v != 0) fail("interaction matrix diagonal must be zero");
                continue;
            }
            if (v != s_at(f, e)) fail("asymmetric quadratic matrix at (" + std::to_string(e) + "," + std::to_string(f) + ")");
            if (v < 0) fail("negative cost in interaction matrix");
            if (v > lambda_max) lambda_max = v;
        }
    }

    // connectivity from vertex 1
    std::vector<char> seen(n + 1, 0);
    std::queue<int> q;
    q.push(1);
    seen[1] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e : adjacency[v]) {
            int w = other_end(e, v);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    if (reached != n) fail("disconnected graph");
}

namespace {

/// Pulls the next content line (comments stripped, blanks skipped) into `out`.
/// Returns false at end of stream; `line_no` tracks physical lines.
bool next_content_line(std::istream& in, std::string& out, int& line_no) {
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        size_t a = raw.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        out = raw;
        return true;
    }
    return false;
}

} // namespace

Instance load_instance(std::istream& in) {
    Instance inst;
    int line_no = 0;
    std::string line;

    if (!next_content_line(in, line, line_no)) fail("empty input");
    {
        std::istringstream ss(line);
        std::string magic;
        if (!(ss >> magic >> inst.n) || magic != "QMSTP") fail_line(line_no, "expected header 'QMSTP <n> <m>'");
        if (!(ss >> inst.m)) fail_line(line_no, "expected header 'QMSTP <n> <m>'");
    }
    if (inst.n < 2 || inst.m < 1) fail_line(line_no, "bad vertex/edge count in header");

    inst.edges.reserve(inst.m);
    inst.c.reserve(inst.m);
    for (int e = 0; e < inst.m; ++e) {
        if (!next_content_line(in, line, line_no)) fail_line(line_no, "unexpected end of input in edge list");
        std::istringstream ss(line);
        int u, v;
        long long cost;
        if (!(ss >> u >> v >> cost)) fail_line(line_no, "expected '<u> <v> <cost>'");
        inst.edges.emplace_back(u, v);
        if (cost < INT32_MIN || cost > INT32_MAX) fail_line(line_no, "cost out of 32-bit range");
        inst.c.push_back(static_cast<int32_t>(cost));
    }

    inst.s.resize(static_cast<size_t>(inst.m) * inst.m);
    for (int e = 0; e < inst.m; ++e) {
        if (!next_content_line(in, line, line_no)) fail_line(line_no, "unexpected end of input in interaction matrix");
        std::istringstream ss(line);
        for (int f = 0; f < inst.m; ++f) {
            long long v;
            if (!(ss >> v)) fail_line(line_no, "interaction matrix row " + std::to_string(e) + " has fewer than m entries");
            if (v < INT32_MIN || v > INT32_MAX) fail_line(line_no, "interaction value out of 32-bit range");
            inst.s[static_cast<size_t>(e) * inst.m + f] = static_cast<int32_t>(v);
        }
        long long extra;
        if (ss >> extra) fail_line(line_no, "interaction matrix row " + std::to_string(e) + " has more than m entries");
    }

    inst.finalize();
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open instance file: " + path);
    return load_instance(in);
}

void save_instance(const Instance& inst, std::ostream& out) {
    out << "QMSTP " << inst.n << ' ' << inst.m << '\n';
    for (int e = 0; e < inst.m; ++e)
        out << inst.edges[e].first << ' ' << inst.edges[e].second << ' ' << inst.c[e] << '\n';
    for (int e = 0; e < inst.m; ++e) {
        for (int f = 0; f < inst.m; ++f) {
            if (f) out << ' ';
            out << inst.s_at(e, f);
        }
        out << '\n';
    }
    if (!out) fail("write failure while saving instance");
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot open output file: " + path);
    save_instance(inst, out);
}

} // namespace qmstp
