#ifndef QMSTP_GENERATORS_HPP
#define QMSTP_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "qmstp/instance.hpp"
#include "qmstp/util.hpp"

namespace qmstp {

/// Random graph with m = round(density * n(n-1)/2) edges, connected by
/// construction (a uniform random spanning tree is laid down first, the
/// remaining edge slots are filled without replacement from the leftover
/// pairs).  Linear costs are i.i.d. uniform on c_range; every unordered
/// pair of edges gets an i.i.d. uniform interaction from q_range, stored
/// as its doubled (two-directional) sum.  Same arguments -> identical
/// instance, field for field.
Instance generate_uniform(int n, double density, IntRange c_range, IntRange q_range, uint64_t seed);

/// Complete graph on points dropped uniformly in a [0,side]^2 square;
/// linear cost = endpoint distance rounded half-up; pair interactions
/// i.i.d. uniform on q_range (stored doubled).
Instance generate_euclidean(int n, double side, IntRange q_range, uint64_t seed);

/// Complete graph; per-vertex weights uniform on [1,10]; the interaction of
/// edges e and f is the product of the four endpoint weights (stored
/// doubled); linear costs uniform on [1,10000].  `weights_out`, when given,
/// receives the drawn weights so tests can recompute entries.
Instance generate_vsym(int n, uint64_t seed, std::vector<int>* weights_out = nullptr);

/// Same construction with caller-supplied vertex weights (only the linear
/// costs are drawn from the seed).
Instance generate_vsym_with_weights(int n, const std::vector<int>& weights, uint64_t seed);

/// Complete graph on points in a [0,side]^2 square; linear cost = rounded
/// endpoint distance; interaction of two edges = rounded distance between
/// their midpoints (stored doubled).
Instance generate_esym(int n, double side, uint64_t seed);

} // namespace qmstp

#endif
