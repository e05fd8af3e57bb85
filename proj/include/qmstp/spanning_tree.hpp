#ifndef QMSTP_SPANNING_TREE_HPP
#define QMSTP_SPANNING_TREE_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qmstp/instance.hpp"
#include "qmstp/rng.hpp"

namespace qmstp {

/// A feasible solution: a spanning tree rooted at vertex 1, held as a
/// parent vector plus edge-membership flags, with its objective cached.
struct SpanningTree {
    std::vector<int> parent;   ///< 1-based; parent[1] = 0
    std::vector<int> depth;    ///< 1-based; depth[1] = 0
    std::vector<char> in_tree; ///< per edge index
    std::vector<int> degree;   ///< tree degree, 1-based
    int64_t objective = 0;     ///< cached F of the current tree
};

/// Per-edge contribution d[g] = c[g] + sum over tree edges h of s(g,h).
/// For a tree edge this is what the edge adds to F; for a non-tree edge it
/// is what inserting it would add.  Kept exactly in sync with the tree by
/// the apply_* operations, giving O(1) move gains.
struct ContributionVector {
    std::vector<int64_t> d;
};

/// Builds the tree spanned by the given edge indices (parent/depth oriented
/// away from root 1, degrees counted, objective computed from scratch).
SpanningTree tree_from_edges(const Instance& inst, const std::vector<int>& edge_ids);

/// Greedy feasible tree in uniformly random edge order: edges of E are
/// drawn in a random order and each one joining two distinct components is
/// kept, until n-1 are chosen.
SpanningTree random_spanning_tree(const Instance& inst, Rng& rng);

/// From-scratch evaluation: sum of tree-edge costs plus the interaction of
/// every unordered pair of tree edges.
int64_t objective(const Instance& inst, const SpanningTree& tree);

/// From-scratch construction of the contribution vector; O(mn).
ContributionVector build_contributions(const Instance& inst, const SpanningTree& tree);

/// The tree path between the endpoints of non-tree edge e, i.e. the edges
/// that close a cycle with e; found by climbing both endpoints to their
/// lowest common ancestor.  Throws std::logic_error if e is in the tree.
std::vector<int> cycle_path(const Instance& inst, const SpanningTree& tree, int e);

/// Allocation-free variant for hot loops; `out` is cleared and refilled.
void cycle_path(const Instance& inst, const SpanningTree& tree, int e, std::vector<int>& out);

/// Topology-only edge replacement: swaps membership flags, degrees, parent
/// chain (reversing inside the detached component so vertex 1 stays root)
/// and the re-hung depths.  Objective and contributions are the caller's
/// business — apply_swap_edge is the all-in-one version.
void replace_tree_edge(const Instance& inst, SpanningTree& tree, int e_in, int f_out);

/// Objective change of swapping non-tree edge e in and cycle edge f out;
/// O(1).  Caller guarantees f lies on cycle_path(tree, e).
int64_t gain_swap_edge(const ContributionVector& dvec, const Instance& inst, int e, int f);

/// Applies the swap: membership flags, degrees, parent/depth (the detached
/// component is re-hung at e's endpoint by reversing its parent chain, so
/// vertex 1 stays root), cached objective, and the contribution vector are
/// all updated; O(m), dominated by the contribution update.
void apply_swap_edge(const Instance& inst, SpanningTree& tree, ContributionVector& dvec, int e, int f);

/// All tree-degree-1 vertices paired with their unique tree neighbor,
/// ascending by vertex; the root is included when its degree is 1.
std::vector<std::pair<int, int>> degree_one_vertices(const Instance& inst, const SpanningTree& tree);

/// Objective change of exchanging the attachment of two degree-1 vertices
/// i and j (with tree neighbors r_i != r_j): edges {i,r_j} and {j,r_i}
/// enter, {i,r_i} and {j,r_j} leave; O(1).  Throws std::logic_error when
/// the preconditions fail (not leaves, equal neighbors, missing edges).
int64_t gain_swap_vertex(const ContributionVector& dvec, const Instance& inst, const SpanningTree& tree,
                         int i, int j);

/// Applies the vertex swap as its two constituent edge swaps; total
/// objective change equals gain_swap_vertex exactly.
void apply_swap_vertex(const Instance& inst, SpanningTree& tree, ContributionVector& dvec, int i, int j);

/// Largest contribution among tree edges; O(n).
int64_t gamma(const Instance& inst, const SpanningTree& tree, const ContributionVector& dvec);

/// Text form `TREE <n> <F>` followed by n-1 `<child> <parent>` lines.
void write_tree(std::ostream& out, const Instance& inst, const SpanningTree& tree);

} // namespace qmstp

#endif
