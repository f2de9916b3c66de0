#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/error.hpp"
#include "qcluster/flow_cut.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/similarity.hpp"
#include "qcluster/submodular.hpp"
#include "qcluster/tree.hpp"

namespace qcluster {

namespace detail {
inline void require_k(std::size_t n, std::size_t k) {
    require(k >= 1 && k <= n, ErrorKind::InvalidK,
            "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
}
}  // namespace detail

/// Single-Linkage, agglomerative form: walk the canonical edge order and merge
/// the two endpoint clusters whenever they differ, until k clusters remain.
inline Partitioning single_linkage(const SimilarityInstance& s, std::size_t k) {
    detail::require_k(s.n(), k);
    detail::DisjointSets clusters(s.n());
    for (const Edge& e : canonical_order(s)) {
        if (clusters.count() == k) {
            break;
        }
        clusters.unite(e.u, e.v);
    }
    return clusters.partition();
}

/// Single-Linkage, tree form: cut the k-1 lightest maximum spanning tree edges.
inline Partitioning single_linkage_via_mst(const SimilarityInstance& s, std::size_t k) {
    detail::require_k(s.n(), k);
    return tree_min_kcut(mst(s), k).partition;
}

/// Max-Sum approximation: repeatedly remove the cheapest internal global
/// minimum cut over all current components until k components remain.
/// Components are scanned by smallest point, so ties go to the component
/// holding the smallest id.
inline Partitioning max_sum_approx(const SimilarityInstance& s, std::size_t k) {
    detail::require_k(s.n(), k);
    std::vector<std::vector<Point>> components(1);
    for (Point p = 0; p < s.n(); ++p) {
        components[0].push_back(p);
    }
    while (components.size() < k) {
        std::optional<std::pair<std::size_t, CutResult>> best;
        for (std::size_t c = 0; c < components.size(); ++c) {
            if (components[c].size() < 2) {
                continue;
            }
            CutResult cut = global_min_cut(induced(s, components[c]));
            if (!best || cut.value < best->second.value) {
                best = std::make_pair(c, std::move(cut));
            }
        }
        const std::vector<Point> whole = components[best->first];
        std::vector<bool> in_side(whole.size(), false);
        for (Point local : best->second.side) {
            in_side[local] = true;
        }
        std::vector<Point> kept;
        std::vector<Point> split_off;
        for (std::size_t i = 0; i < whole.size(); ++i) {
            (in_side[i] ? kept : split_off).push_back(whole[i]);
        }
        components[best->first] = std::move(kept);
        components.push_back(std::move(split_off));
        std::sort(components.begin(), components.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }
    return Partitioning(s.n(), std::move(components));
}

/// Exact Max-Sum by exhaustion: the k-partitioning of largest in-block
/// weight, first in canonical order on ties. NP-hard in general; n <= 12.
inline Partitioning max_sum_exact(const SimilarityInstance& s, std::size_t k) {
    detail::require(s.n() <= kMaxBruteForcePoints, ErrorKind::OracleSize,
                    "exact Max-Sum is limited to n <= 12");
    detail::require_k(s.n(), k);
    std::optional<std::pair<double, std::vector<std::size_t>>> best;
    for_each_partition_labels(s.n(), k, [&](const std::vector<std::size_t>& labels) {
        double lambda = 0.0;
        std::size_t idx = 0;
        for (Point i = 0; i < s.n(); ++i) {
            for (Point j = i + 1; j < s.n(); ++j, ++idx) {
                if (labels[i] == labels[j]) {
                    lambda += s.upper_weights()[idx];
                }
            }
        }
        if (!best || lambda > best->first) {
            best = std::make_pair(lambda, labels);
        }
    });
    return Partitioning::from_labels(best->second);
}

/// Q-clustering of a symmetric submodular objective: cut the k-1 lightest
/// edges of its generalized Gomory-Hu tree.
inline Partitioning q_cluster(const SetFunctionOracle& f, std::size_t n, std::size_t k) {
    detail::require_k(n, k);
    return tree_min_kcut(gomory_hu_general(f, n), k).partition;
}

struct Domain {
    std::size_t n = 0;
    std::size_t k = 0;
    friend bool operator==(const Domain&, const Domain&) = default;
};

/// Named map (s, k) -> k-partitioning.
struct PartitioningFunction {
    std::string name;
    std::function<Partitioning(const SimilarityInstance&, std::size_t)> apply;
    /// The only (n, k) where the function differs from its base algorithm;
    /// property harnesses sample there when set.
    std::optional<Domain> focus;
    /// True when the output never depends on the similarity values.
    bool ignores_input = false;

    Partitioning operator()(const SimilarityInstance& s, std::size_t k) const {
        Partitioning out = apply(s, k);
        detail::require(out.n() == s.n() && out.k() == k, ErrorKind::Shape,
                        name + " returned a partitioning of the wrong shape");
        return out;
    }
};

/// Bijection on the k-partitionings of n points, as an index map over the
/// canonical enumeration order.
class PartitionPermutation {
  public:
    PartitionPermutation(std::size_t n, std::size_t k, std::vector<std::size_t> mapping)
      : domain_{n, k}
      , partitions_{enumerate_partitionings(n, k)}
      , mapping_{std::move(mapping)} {
        detail::require(mapping_.size() == partitions_.size(), ErrorKind::InvalidPermutation,
                        "permutation must map all " + std::to_string(partitions_.size()) +
                            " partitionings");
        std::vector<bool> hit(mapping_.size(), false);
        for (std::size_t target : mapping_) {
            detail::require(target < mapping_.size() && !hit[target], ErrorKind::InvalidPermutation,
                            "index map is not a bijection");
            hit[target] = true;
        }
    }

    static PartitionPermutation identity(std::size_t n, std::size_t k) {
        const std::size_t count = enumerate_partitionings(n, k).size();
        std::vector<std::size_t> mapping(count);
        for (std::size_t i = 0; i < count; ++i) {
            mapping[i] = i;
        }
        return PartitionPermutation(n, k, std::move(mapping));
    }

    /// Swaps enumeration indices i and j.
    static PartitionPermutation transposition(std::size_t n, std::size_t k, std::size_t i, std::size_t j) {
        PartitionPermutation sigma = identity(n, k);
        detail::require(i < sigma.mapping_.size() && j < sigma.mapping_.size(),
                        ErrorKind::InvalidPermutation, "transposition index out of range");
        std::swap(sigma.mapping_[i], sigma.mapping_[j]);
        return sigma;
    }

    Domain domain() const noexcept { return domain_; }
    const std::vector<std::size_t>& mapping() const noexcept { return mapping_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < mapping_.size(); ++i) {
            if (mapping_[i] != i) {
                return false;
            }
        }
        return true;
    }

    /// Image of p; partitionings of any other (n, k) pass through unchanged.
    Partitioning operator()(const Partitioning& p) const {
        if (p.n() != domain_.n || p.k() != domain_.k) {
            return p;
        }
        const auto it = std::lower_bound(partitions_.begin(), partitions_.end(), p);
        return partitions_[mapping_[static_cast<std::size_t>(it - partitions_.begin())]];
    }

  private:
    Domain domain_;
    std::vector<Partitioning> partitions_;
    std::vector<std::size_t> mapping_;
};

inline PartitioningFunction single_linkage_function() {
    return PartitioningFunction{"sl", single_linkage, std::nullopt, false};
}

inline PartitioningFunction max_sum_function() {
    return PartitioningFunction{"maxsum", max_sum_approx, std::nullopt, false};
}

inline PartitioningFunction max_sum_exact_function() {
    return PartitioningFunction{"maxsum-exact", max_sum_exact, std::nullopt, false};
}

namespace detail {
inline PartitioningFunction permuted(std::string name, PartitionPermutation sigma,
                                     Partitioning (*base)(const SimilarityInstance&, std::size_t)) {
    const Domain domain = sigma.domain();
    const bool identity = sigma.is_identity();
    return PartitioningFunction{
        std::move(name),
        [sigma = std::move(sigma), base](const SimilarityInstance& s, std::size_t k) {
            return sigma(base(s, k));
        },
        identity ? std::nullopt : std::optional<Domain>(domain), false};
}
}  // namespace detail

/// Member of the minimum-cut-tree cuts family: Max-Sum followed by sigma.
inline PartitioningFunction mct_cuts_member(PartitionPermutation sigma) {
    return detail::permuted("mct-cuts", std::move(sigma), max_sum_approx);
}

/// Member of the maximum-spanning-tree cuts family: Single-Linkage followed by sigma.
inline PartitioningFunction mst_cuts_member(PartitionPermutation sigma) {
    return detail::permuted("mst-cuts", std::move(sigma), single_linkage);
}

/// {{0..n-k}, {n-k+1}, ..., {n-1}} regardless of s.
inline PartitioningFunction constant_partitioner() {
    return PartitioningFunction{"constant",
                                [](const SimilarityInstance& s, std::size_t k) {
                                    detail::require_k(s.n(), k);
                                    std::vector<std::size_t> labels(s.n());
                                    const std::size_t head = s.n() - k + 1;
                                    for (Point p = 0; p < s.n(); ++p) {
                                        labels[p] = p < head ? 0 : p - head + 1;
                                    }
                                    return Partitioning::from_labels(labels);
                                },
                                std::nullopt, true};
}

/// Scale-sensitive negative control: Single-Linkage when the heaviest pair
/// reaches `threshold`, the constant partitioning otherwise.
inline PartitioningFunction threshold_partitioner(double threshold = 0.5) {
    return PartitioningFunction{"threshold",
                                [threshold](const SimilarityInstance& s, std::size_t k) {
                                    if (s.max_weight() >= threshold) {
                                        return single_linkage(s, k);
                                    }
                                    return constant_partitioner().apply(s, k);
                                },
                                std::nullopt, false};
}

}  // namespace qcluster
