#include "qmstp/spanning_tree.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

#include "qmstp/util.hpp"

namespace qmstp {

void check(bool cond, const char* msg) {
    if (!cond) throw std::logic_error(msg);
}

namespace {

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n + 1) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[a] = b;
        return true;
    }
};

/// Orients parent/depth away from root 1 along the tree edges listed in
/// tree.in_tree, and counts degrees.
void orient_from_root(const Instance& inst, SpanningTree& tree) {
    int n = inst.n;
    tree.parent.assign(n + 1, 0);
    tree.depth.assign(n + 1, 0);
    tree.degree.assign(n + 1, 0);
    std::vector<int> stack = {1};
    std::vector<char> seen(n + 1, 0);
    seen[1] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : inst.adjacency[v]) {
            if (!tree.in_tree[e]) continue;
            int w = inst.other_end(e, v);
            if (seen[w]) continue;
            seen[w] = 1;
            ++visited;
            tree.parent[w] = v;
            tree.depth[w] = tree.depth[v] + 1;
            stack.push_back(w);
        }
    }
    check(visited == inst.n, "edge set does not span all vertices");
    for (int v = 2; v <= n; ++v) {
        ++tree.degree[v];
        ++tree.degree[tree.parent[v]];
    }
}

} // namespace

void replace_tree_edge(const Instance& inst, SpanningTree& tree, int e_in, int f_out) {
    auto [fu, fv] = inst.edges[f_out];
    int child = tree.parent[fu] == fv ? fu : fv;
    check(tree.parent[child] == (child == fu ? fv : fu), "leaving edge is not a tree edge");

    auto in_detached = [&](int x) {
        for (; x != 0; x = tree.parent[x])
            if (x == child) return true;
        return false;
    };
    auto [eu, ev] = inst.edges[e_in];
    bool u_in = in_detached(eu), v_in = in_detached(ev);
    check(u_in != v_in, "entering edge does not reconnect the two components");
    int inside = u_in ? eu : ev;
    int outside = u_in ? ev : eu;

    // reverse the parent chain inside the detached component: inside .. child
    std::vector<int> chain;
    for (int x = inside;; x = tree.parent[x]) {
        chain.push_back(x);
        if (x == child) break;
    }
    tree.parent[inside] = outside;
    for (size_t i = 1; i < chain.size(); ++i) tree.parent[chain[i]] = chain[i - 1];

    tree.in_tree[f_out] = 0;
    tree.in_tree[e_in] = 1;
    --tree.degree[fu];
    --tree.degree[fv];
    ++tree.degree[eu];
    ++tree.degree[ev];

    // recompute depths of the re-hung component (children scan from the
    // updated parent array, then a downward walk from `inside`)
    int n = inst.n;
    std::vector<int> head(n + 1, 0), nxt(n + 1, 0);
    for (int v = 2; v <= n; ++v) {
        nxt[v] = head[tree.parent[v]];
        head[tree.parent[v]] = v;
    }
    std::vector<int> stack = {inside};
    tree.depth[inside] = tree.depth[outside] + 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = head[v]; w != 0; w = nxt[w]) {
            tree.depth[w] = tree.depth[v] + 1;
            stack.push_back(w);
        }
    }
}

namespace {

/// Tree neighbor of a degree-1 vertex (parent, or the unique child when the
/// root itself is a leaf).
int leaf_neighbor(const Instance& inst, const SpanningTree& tree, int v) {
    if (v != 1) return tree.parent[v];
    for (int x = 2; x <= inst.n; ++x)
        if (tree.parent[x] == 1) return x;
    check(false, "root has no child");
    return 0;
}

struct VertexSwapEdges {
    int e1, e2, f1, f2;
};

/// Resolves and validates the four edges of a vertex swap.
VertexSwapEdges vertex_swap_edges(const Instance& inst, const SpanningTree& tree, int i, int j) {
    check(i != j, "vertex swap needs two distinct vertices");
    check(tree.degree[i] == 1 && tree.degree[j] == 1, "vertex swap requires two degree-1 vertices");
    int ri = leaf_neighbor(inst, tree, i);
    int rj = leaf_neighbor(inst, tree, j);
    check(ri != rj, "vertex swap requires distinct tree neighbors");
    VertexSwapEdges r;
    r.e1 = inst.edge_index(i, rj);
    r.e2 = inst.edge_index(j, ri);
    r.f1 = inst.edge_index(i, ri);
    r.f2 = inst.edge_index(j, rj);
    check(r.e1 >= 0 && r.e2 >= 0, "vertex swap requires the crossed edges to exist");
    check(r.e1 != r.e2 && r.e1 != r.f1 && r.e1 != r.f2 && r.e2 != r.f1 && r.e2 != r.f2 && r.f1 != r.f2,
          "vertex swap edges must be pairwise distinct");
    return r;
}

} // namespace

SpanningTree tree_from_edges(const Instance& inst, const std::vector<int>& edge_ids) {
    check(static_cast<int>(edge_ids.size()) == inst.n - 1, "tree needs exactly n-1 edges");
    SpanningTree tree;
    tree.in_tree.assign(inst.m, 0);
    for (int e : edge_ids) {
        check(e >= 0 && e < inst.m, "edge index out of range");
        check(!tree.in_tree[e], "repeated edge in tree edge set");
        tree.in_tree[e] = 1;
    }
    orient_from_root(inst, tree);
    tree.objective = objective(inst, tree);
    return tree;
}

SpanningTree random_spanning_tree(const Instance& inst, Rng& rng) {
    std::vector<int> order(inst.m);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    UnionFind uf(inst.n);
    std::vector<int> chosen;
    chosen.reserve(inst.n - 1);
    for (int e : order) {
        if (static_cast<int>(chosen.size()) == inst.n - 1) break;
        if (uf.unite(inst.edges[e].first, inst.edges[e].second)) chosen.push_back(e);
    }
    return tree_from_edges(inst, chosen);
}

int64_t objective(const Instance& inst, const SpanningTree& tree) {
    std::vector<int> xs;
    xs.reserve(inst.n - 1);
    for (int e = 0; e < inst.m; ++e)
        if (tree.in_tree[e]) xs.push_back(e);
    int64_t f = 0;
    for (size_t a = 0; a < xs.size(); ++a) {
        f += inst.c[xs[a]];
        for (size_t b = a + 1; b < xs.size(); ++b) f += inst.s_at(xs[a], xs[b]);
    }
    return f;
}

ContributionVector build_contributions(const Instance& inst, const SpanningTree& tree) {
    std::vector<int> xs;
    xs.reserve(inst.n - 1);
    for (int e = 0; e < inst.m; ++e)
        if (tree.in_tree[e]) xs.push_back(e);
    ContributionVector dvec;
    dvec.d.resize(inst.m);
    for (int g = 0; g < inst.m; ++g) {
        const int32_t* row = &inst.s[static_cast<size_t>(g) * inst.m];
        int64_t acc = inst.c[g];
        for (int h : xs) acc += row[h];
        dvec.d[g] = acc;
    }
    return dvec;
}

void cycle_path(const Instance& inst, const SpanningTree& tree, int e, std::vector<int>& out) {
    check(e >= 0 && e < inst.m, "edge index out of range");
    check(!tree.in_tree[e], "cycle_path requires a non-tree edge");
    out.clear();
    int a = inst.edges[e].first;
    int b = inst.edges[e].second;
    while (a != b) {
        int& deeper = tree.depth[a] >= tree.depth[b] ? a : b;
        out.push_back(inst.edge_index(deeper, tree.parent[deeper]));
        deeper = tree.parent[deeper];
    }
}

std::vector<int> cycle_path(const Instance& inst, const SpanningTree& tree, int e) {
    std::vector<int> path;
    cycle_path(inst, tree, e, path);
    return path;
}

int64_t gain_swap_edge(const ContributionVector& dvec, const Instance& inst, int e, int f) {
    return dvec.d[e] - dvec.d[f] - inst.s_at(e, f);
}

void apply_swap_edge(const Instance& inst, SpanningTree& tree, ContributionVector& dvec, int e, int f) {
    check(!tree.in_tree[e] && tree.in_tree[f], "swap needs a non-tree entering edge and a tree leaving edge");
    tree.objective += gain_swap_edge(dvec, inst, e, f);
    const int32_t* row_e = &inst.s[static_cast<size_t>(e) * inst.m];
    const int32_t* row_f = &inst.s[static_cast<size_t>(f) * inst.m];
    for (int g = 0; g < inst.m; ++g) dvec.d[g] += row_e[g] - row_f[g];
    replace_tree_edge(inst, tree, e, f);
}

std::vector<std::pair<int, int>> degree_one_vertices(const Instance& inst, const SpanningTree& tree) {
    std::vector<std::pair<int, int>> out;
    for (int v = 1; v <= inst.n; ++v)
        if (tree.degree[v] == 1) out.emplace_back(v, leaf_neighbor(inst, tree, v));
    return out;
}

int64_t gain_swap_vertex(const ContributionVector& dvec, const Instance& inst, const SpanningTree& tree,
                         int i, int j) {
    auto [e1, e2, f1, f2] = vertex_swap_edges(inst, tree, i, j);
    const auto& d = dvec.d;
    return d[e1] + d[e2] - d[f1] - d[f2] + inst.s_at(e1, e2) + inst.s_at(f1, f2) - inst.s_at(e1, f1) -
           inst.s_at(e1, f2) - inst.s_at(e2, f1) - inst.s_at(e2, f2);
}

void apply_swap_vertex(const Instance& inst, SpanningTree& tree, ContributionVector& dvec, int i, int j) {
    auto [e1, e2, f1, f2] = vertex_swap_edges(inst, tree, i, j);
    // the vertex swap decomposes into two edge swaps whose gains telescope
    apply_swap_edge(inst, tree, dvec, e1, f1);
    apply_swap_edge(inst, tree, dvec, e2, f2);
}

int64_t gamma(const Instance& inst, const SpanningTree& tree, const ContributionVector& dvec) {
    int64_t best = INT64_MIN;
    for (int v = 2; v <= inst.n; ++v) {
        int e = inst.edge_index(v, tree.parent[v]);
        if (dvec.d[e] > best) best = dvec.d[e];
    }
    return best;
}

void write_tree(std::ostream& out, const Instance& inst, const SpanningTree& tree) {
    out << "TREE " << inst.n << ' ' << tree.objective << '\n';
    for (int v = 2; v <= inst.n; ++v) out << v << ' ' << tree.parent[v] << '\n';
}

} // namespace qmstp
