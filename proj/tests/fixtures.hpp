#pragma once

#include <cstddef>
#include <vector>

#include "qcluster/qcluster.hpp"

namespace fixtures {

using qcluster::Partitioning;
using qcluster::Point;
using qcluster::SimilarityInstance;

// w(0,1)=3, w(0,2)=2, w(1,2)=1
inline SimilarityInstance t3() { return SimilarityInstance(3, {3.0, 2.0, 1.0}); }

// path 0-1-2-3 with weights 10, 9, 8 and every other pair 1
inline SimilarityInstance p4() { return SimilarityInstance(4, {10.0, 1.0, 1.0, 9.0, 1.0, 8.0}); }

inline Partitioning parts(std::size_t n, std::vector<std::vector<Point>> blocks) {
    return Partitioning(n, std::move(blocks));
}

inline SimilarityInstance random(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    qcluster::Rng rng = qcluster::Rng::stream(seed, stream);
    return qcluster::random_instance(n, rng);
}

}  // namespace fixtures
