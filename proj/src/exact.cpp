#include "qmstp/exact.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qmstp {

namespace {

mpz_class tree_count_mpz(const Instance& inst) {
    // Laplacian with vertex n's row/column struck out; fraction-free
    // (Bareiss) elimination keeps every intermediate value an exact integer.
    const int sz = inst.n - 1;
    std::vector<mpz_class> a(static_cast<size_t>(sz) * sz, 0);
    auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<size_t>(i) * sz + j]; };
    for (auto [u, v] : inst.edges) {
        if (u <= sz) at(u - 1, u - 1) += 1;
        if (v <= sz) at(v - 1, v - 1) += 1;
        if (u <= sz && v <= sz) {
            at(u - 1, v - 1) -= 1;
            at(v - 1, u - 1) -= 1;
        }
    }
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < sz; ++k) {
        if (at(k, k) == 0) {
            int pivot = -1;
            for (int i = k + 1; i < sz; ++i)
                if (at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            for (int j = 0; j < sz; ++j) std::swap(at(k, j), at(pivot, j));
            sign = -sign;
        }
        for (int i = k + 1; i < sz; ++i)
            for (int j = k + 1; j < sz; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(sz - 1, sz - 1);
}

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

struct Enumerator {
    const Instance& inst;
    const std::function<void(const std::vector<int>&)>& visitor;
    std::vector<int> chosen;
    uint64_t count = 0;

    /// True when the edges of `chosen` plus those with index >= from can
    /// still connect all vertices.
    bool connectable(int from) const {
        UnionFind uf(inst.n);
        int parts = inst.n;
        for (int e : chosen)
            if (uf.unite(inst.edges[e].first, inst.edges[e].second)) --parts;
        for (int e = from; e < inst.m && parts > 1; ++e)
            if (uf.unite(inst.edges[e].first, inst.edges[e].second)) --parts;
        return parts == 1;
    }

    void rec(int idx, UnionFind uf) {
        if (static_cast<int>(chosen.size()) == inst.n - 1) {
            ++count;
            visitor(chosen);
            return;
        }
        if (idx == inst.m) return;
        auto [u, v] = inst.edges[idx];
        if (uf.find(u) != uf.find(v)) {
            UnionFind with = uf;
            with.unite(u, v);
            chosen.push_back(idx);
            rec(idx + 1, std::move(with));
            chosen.pop_back();
        }
        if (connectable(idx + 1)) rec(idx + 1, std::move(uf));
    }
};

} // namespace

std::string spanning_tree_count(const Instance& inst) {
    return tree_count_mpz(inst).get_str();
}

uint64_t enumerate_spanning_trees(const Instance& inst,
                                  const std::function<void(const std::vector<int>&)>& visitor,
                                  uint64_t max_trees) {
    mpz_class total = tree_count_mpz(inst);
    if (total > mpz_class(static_cast<unsigned long>(max_trees)))
        throw std::runtime_error("instance has " + total.get_str() + " spanning trees, above the enumeration bound of " +
                                 std::to_string(max_trees));
    Enumerator en{inst, visitor, {}, 0};
    en.chosen.reserve(inst.n - 1);
    en.rec(0, UnionFind(inst.n));
    return en.count;
}

ExactResult exact_optimum(const Instance& inst, uint64_t max_trees) {
    ExactResult result;
    bool first = true;
    auto score = [&](const std::vector<int>& xs) {
        int64_t f = 0;
        for (size_t a = 0; a < xs.size(); ++a) {
            f += inst.c[xs[a]];
            for (size_t b = a + 1; b < xs.size(); ++b) f += inst.s_at(xs[a], xs[b]);
        }
        return f;
    };
    result.tree_count = enumerate_spanning_trees(
        inst,
        [&](const std::vector<int>& xs) {
            int64_t f = score(xs);
            if (first || f < result.best_f ||
                (f == result.best_f && std::lexicographical_compare(xs.begin(), xs.end(),
                                                                    result.best_edges.begin(),
                                                                    result.best_edges.end()))) {
                first = false;
                result.best_f = f;
                result.best_edges = xs;
            }
        },
        max_trees);
    return result;
}

} // namespace qmstp
