#ifndef QMSTP_INSTANCE_HPP
#define QMSTP_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qmstp {

/// Immutable problem data: a connected undirected graph with a linear cost
/// per edge and a symmetric interaction cost for every unordered pair of
/// edges.  A spanning tree X is scored as
///
///     F(X) = sum_{e in X} c[e]  +  sum_{e<f, e,f in X} s(e,f)
///
/// where s(e,f) already folds both directions of the pair interaction into
/// one number and the diagonal is zero.  Vertices are labeled 1..n; an
/// edge's index is its position in `edges`.
struct Instance {
    int n = 0;                                   ///< vertex count
    int m = 0;                                   ///< edge count
    std::vector<std::pair<int, int>> edges;      ///< (u,v) with u < v
    std::vector<int32_t> c;                      ///< linear cost per edge
    std::vector<int32_t> s;                      ///< m*m interaction sums (flat, row-major)
    int64_t lambda_max = 0;                      ///< max off-diagonal entry of s
    std::vector<std::vector<int>> adjacency;     ///< incident edge indices per vertex

    int32_t s_at(int e, int f) const { return s[static_cast<size_t>(e) * m + f]; }

    /// Edge index of the pair {u,v}, or -1 when the graph has no such edge.
    int edge_index(int u, int v) const {
        return edge_lookup_[static_cast<size_t>(u) * (n + 1) + v];
    }

    /// The endpoint of edge e that is not v.
    int other_end(int e, int v) const {
        return edges[e].first == v ? edges[e].second : edges[e].first;
    }

    double density() const {
        return n < 2 ? 0.0 : 2.0 * m / (static_cast<double>(n) * (n - 1));
    }

    /// Builds the lookup tables and lambda_max, then checks every structural
    /// invariant (vertex bounds, u < v, no duplicates, connectivity, matrix
    /// symmetry, zero diagonal, non-negative costs).  Throws
    /// std::runtime_error naming the violated invariant.
    void finalize();

private:
    std::vector<int> edge_lookup_;               // (n+1)^2 flat table, -1 = absent
};

/// Parses the canonical text format (see README).  Throws std::runtime_error
/// with the offending line number on malformed input, or a validation error
/// naming the broken invariant.
Instance load_instance(std::istream& in);
Instance load_instance(const std::string& path);

/// Writes the canonical text format; load_instance(save_instance(I)) == I.
void save_instance(const Instance& inst, std::ostream& out);
void save_instance(const Instance& inst, const std::string& path);

} // namespace qmstp

#endif
