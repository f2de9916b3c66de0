#pragma once

#include <cstddef>
#include <vector>

#include "qcluster/error.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/random.hpp"
#include "qcluster/similarity.hpp"

namespace qcluster {

/// Weights i.i.d. uniform on (0, 1].
inline SimilarityInstance random_instance(std::size_t n, Rng& rng) {
    detail::require(n >= 2, ErrorKind::InvalidInstance, "random_instance needs n >= 2");
    return SimilarityInstance::from_function(n, [&](Point, Point) { return rng.uniform_open_closed(); });
}

/// True iff inner pairs (w.r.t. gamma) did not decrease and outer pairs did
/// not increase going from s to s_prime.
inline bool is_gamma_transform(const SimilarityInstance& s, const SimilarityInstance& s_prime,
                               const Partitioning& gamma) {
    detail::require(s.n() == s_prime.n(), ErrorKind::Shape, "instances differ in n");
    detail::require_same_n(s, gamma);
    const auto& before = s.upper_weights();
    const auto& after = s_prime.upper_weights();
    std::size_t idx = 0;
    for (Point i = 0; i < s.n(); ++i) {
        for (Point j = i + 1; j < s.n(); ++j, ++idx) {
            if (gamma.same_block(i, j) ? after[idx] < before[idx] : after[idx] > before[idx]) {
                return false;
            }
        }
    }
    return true;
}

inline constexpr double kInnerFactorMax = 2.0;
inline constexpr double kOuterFactorMin = 0.5;

/// Random gamma-transformation: inner weights scaled by factors in [1, 2],
/// outer weights by factors in [0.5, 1].
inline SimilarityInstance gamma_transform_sample(const SimilarityInstance& s,
                                                 const Partitioning& gamma, Rng& rng) {
    detail::require_same_n(s, gamma);
    return SimilarityInstance::from_function(s.n(), [&](Point i, Point j) {
        const double factor = gamma.same_block(i, j) ? rng.uniform(1.0, kInnerFactorMax)
                                                     : rng.uniform(kOuterFactorMin, 1.0);
        return s.weight(i, j) * factor;
    });
}

/// Instance on which Single-Linkage and Max-Sum both return gamma: inner
/// weights 4n^2, outer weights 1, so any single inner pair outweighs all
/// outer pairs together.
inline SimilarityInstance richness_witness(const Partitioning& gamma) {
    const std::size_t n = gamma.n();
    const double inner = 4.0 * static_cast<double>(n * n);
    return SimilarityInstance::from_function(
        n, [&](Point i, Point j) { return gamma.same_block(i, j) ? inner : 1.0; });
}

}  // namespace qcluster
