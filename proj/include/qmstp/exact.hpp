#ifndef QMSTP_EXACT_HPP
#define QMSTP_EXACT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmstp/instance.hpp"

namespace qmstp {

constexpr uint64_t kDefaultTreeBound = 10'000'000;

struct ExactResult {
    int64_t best_f = 0;
    std::vector<int> best_edges; ///< ascending edge indices of one optimal tree
    uint64_t tree_count = 0;     ///< spanning trees enumerated
};

/// Exact number of spanning trees by the weighted-Laplacian determinant,
/// computed in arbitrary-precision integers; returned as a decimal string
/// because the count overflows 64 bits well inside benchmark sizes.
std::string spanning_tree_count(const Instance& inst);

/// Visits every spanning tree exactly once (edge sets in ascending index
/// order) by recursive include/exclude with a connectivity prune: an edge
/// may be skipped only while the remaining edges still connect the graph.
/// Refuses to start when the determinant count exceeds max_trees, throwing
/// std::runtime_error that reports the count.
uint64_t enumerate_spanning_trees(const Instance& inst,
                                  const std::function<void(const std::vector<int>&)>& visitor,
                                  uint64_t max_trees = kDefaultTreeBound);

/// Minimum objective over all spanning trees; ties resolved to the
/// lexicographically smallest edge-index set.
ExactResult exact_optimum(const Instance& inst, uint64_t max_trees = kDefaultTreeBound);

} // namespace qmstp

#endif
