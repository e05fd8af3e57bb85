#include "qmstp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmstp {

namespace {

/// Decodes a uniform random code sequence into a uniform random labeled
/// tree on vertices 1..n (n >= 2); returns the n-1 edges with u < v.
std::vector<std::pair<int, int>> random_labeled_tree(int n, Rng& rng) {
    std::vector<std::pair<int, int>> out;
    out.reserve(n - 1);
    if (n == 2) {
        out.emplace_back(1, 2);
        return out;
    }
    std::vector<int> code(n - 2);
    for (auto& x : code) x = static_cast<int>(rng.uniform_int(1, n));
    std::vector<int> deg(n + 1, 1);
    for (int x : code) ++deg[x];
    int ptr = 1;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : code) {
        out.emplace_back(std::min(leaf, x), std::max(leaf, x));
        if (--deg[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    out.emplace_back(std::min(leaf, n), std::max(leaf, n));
    return out;
}

/// Fills the interaction matrix with one uniform draw per unordered edge
/// pair, stored as the doubled sum on both sides of the diagonal.
void fill_pair_interactions(Instance& inst, IntRange q_range, Rng& rng) {
    int m = static_cast<int>(inst.edges.size());
    inst.s.assign(static_cast<size_t>(m) * m, 0);
    for (int e = 0; e < m; ++e) {
        for (int f = e + 1; f < m; ++f) {
            auto v = static_cast<int32_t>(2 * q_range.draw(rng));
            inst.s[static_cast<size_t>(e) * m + f] = v;
            inst.s[static_cast<size_t>(f) * m + e] = v;
        }
    }
}

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) out.emplace_back(u, v);
    return out;
}

struct Points {
    std::vector<double> x, y; // 1-based
};

Points random_points(int n, double side, Rng& rng) {
    Points p;
    p.x.resize(n + 1);
    p.y.resize(n + 1);
    for (int v = 1; v <= n; ++v) {
        p.x[v] = rng.uniform01() * side;
        p.y[v] = rng.uniform01() * side;
    }
    return p;
}

int32_t rounded_dist(double ax, double ay, double bx, double by) {
    return static_cast<int32_t>(round_half_up(std::hypot(ax - bx, ay - by)));
}

} // namespace

Instance generate_uniform(int n, double density, IntRange c_range, IntRange q_range, uint64_t seed) {
    if (n < 2) throw std::runtime_error("generate_uniform: n must be >= 2");
    if (density <= 0.0 || density > 1.0) throw std::runtime_error("generate_uniform: density must be in (0,1]");
    if (c_range.lo < 0 || q_range.lo < 0) throw std::runtime_error("generate_uniform: cost ranges must be non-negative");
    const int64_t total = static_cast<int64_t>(n) * (n - 1) / 2;
    const int64_t m = round_half_up(density * static_cast<double>(total));
    if (m < n - 1) throw std::runtime_error("generate_uniform: density too low for connectivity");

    Rng rng(seed);
    Instance inst;
    inst.n = n;
    if (m == total) {
        inst.edges = all_pairs(n);
    } else {
        inst.edges = random_labeled_tree(n, rng);
        std::vector<char> chosen(static_cast<size_t>(n + 1) * (n + 1), 0);
        for (auto [u, v] : inst.edges) chosen[static_cast<size_t>(u) * (n + 1) + v] = 1;
        std::vector<std::pair<int, int>> rest;
        rest.reserve(total - (n - 1));
        for (auto [u, v] : all_pairs(n))
            if (!chosen[static_cast<size_t>(u) * (n + 1) + v]) rest.emplace_back(u, v);
        rng.shuffle(rest);
        rest.resize(m - (n - 1));
        inst.edges.insert(inst.edges.end(), rest.begin(), rest.end());
        std::sort(inst.edges.begin(), inst.edges.end());
    }

    inst.c.resize(m);
    for (auto& cost : inst.c) cost = static_cast<int32_t>(c_range.draw(rng));
    fill_pair_interactions(inst, q_range, rng);
    inst.finalize();
    return inst;
}

Instance generate_euclidean(int n, double side, IntRange q_range, uint64_t seed) {
    if (n < 2) throw std::runtime_error("generate_euclidean: n must be >= 2");
    Rng rng(seed);
    Points p = random_points(n, side, rng);

    Instance inst;
    inst.n = n;
    inst.edges = all_pairs(n);
    inst.c.reserve(inst.edges.size());
    for (auto [u, v] : inst.edges) inst.c.push_back(rounded_dist(p.x[u], p.y[u], p.x[v], p.y[v]));
    fill_pair_interactions(inst, q_range, rng);
    inst.finalize();
    return inst;
}

Instance generate_vsym_with_weights(int n, const std::vector<int>& weights, uint64_t seed) {
    if (n < 2) throw std::runtime_error("generate_vsym: n must be >= 2");
    if (static_cast<int>(weights.size()) != n + 1) throw std::runtime_error("generate_vsym: weights must be 1-based, length n+1");
    Rng rng(seed);

    Instance inst;
    inst.n = n;
    inst.edges = all_pairs(n);
    const int m = static_cast<int>(inst.edges.size());
    inst.c.resize(m);
    for (auto& cost : inst.c) cost = static_cast<int32_t>(rng.uniform_int(1, 10000));
    inst.s.assign(static_cast<size_t>(m) * m, 0);
    for (int e = 0; e < m; ++e) {
        auto [a, b] = inst.edges[e];
        int64_t we = static_cast<int64_t>(weights[a]) * weights[b];
        for (int f = e + 1; f < m; ++f) {
            auto [cc, dd] = inst.edges[f];
            auto v = static_cast<int32_t>(2 * we * weights[cc] * weights[dd]);
            inst.s[static_cast<size_t>(e) * m + f] = v;
            inst.s[static_cast<size_t>(f) * m + e] = v;
        }
    }
    inst.finalize();
    return inst;
}

Instance generate_vsym(int n, uint64_t seed, std::vector<int>* weights_out) {
    if (n < 2) throw std::runtime_error("generate_vsym: n must be >= 2");
    Rng rng(seed);
    std::vector<int> w(n + 1, 0);
    for (int v = 1; v <= n; ++v) w[v] = static_cast<int>(rng.uniform_int(1, 10));
    if (weights_out) *weights_out = w;
    return generate_vsym_with_weights(n, w, Rng::derived_seed(seed, 1));
}

Instance generate_esym(int n, double side, uint64_t seed) {
    if (n < 2) throw std::runtime_error("generate_esym: n must be >= 2");
    Rng rng(seed);
    Points p = random_points(n, side, rng);

    Instance inst;
    inst.n = n;
    inst.edges = all_pairs(n);
    const int m = static_cast<int>(inst.edges.size());
    inst.c.reserve(m);
    std::vector<double> mx(m), my(m);
    for (int e = 0; e < m; ++e) {
        auto [u, v] = inst.edges[e];
        inst.c.push_back(rounded_dist(p.x[u], p.y[u], p.x[v], p.y[v]));
        mx[e] = (p.x[u] + p.x[v]) / 2.0;
        my[e] = (p.y[u] + p.y[v]) / 2.0;
    }
    inst.s.assign(static_cast<size_t>(m) * m, 0);
    for (int e = 0; e < m; ++e) {
        for (int f = e + 1; f < m; ++f) {
            auto v = static_cast<int32_t>(2 * rounded_dist(mx[e], my[e], mx[f], my[f]));
            inst.s[static_cast<size_t>(e) * m + f] = v;
            inst.s[static_cast<size_t>(f) * m + e] = v;
        }
    }
    inst.finalize();
    return inst;
}

} // namespace qmstp
