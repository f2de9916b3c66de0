#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qcluster/error.hpp"
#include "qcluster/similarity.hpp"

namespace qcluster {

/// k non-empty disjoint blocks covering {0..n-1}, kept in canonical form:
/// members ascending inside each block, blocks ordered by smallest member.
class Partitioning {
  public:
    Partitioning(std::size_t n, std::vector<std::vector<Point>> blocks)
      : n_{n}
      , blocks_{std::move(blocks)} {
        std::vector<bool> seen(n_, false);
        for (auto& block : blocks_) {
            detail::require(!block.empty(), ErrorKind::Shape, "partitioning has an empty block");
            std::sort(block.begin(), block.end());
            for (Point p : block) {
                detail::require(p < n_, ErrorKind::InvalidPoint,
                                "block member " + std::to_string(p) + " out of range");
                detail::require(!seen[p], ErrorKind::Shape,
                                "point " + std::to_string(p) + " appears in two blocks");
                seen[p] = true;
            }
        }
        detail::require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }),
                        ErrorKind::Shape, "blocks do not cover every point");
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        labels_.assign(n_, 0);
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            for (Point p : blocks_[b]) {
                labels_[p] = b;
            }
        }
    }

    /// Builds from arbitrary per-point labels; label values only need to be
    /// equal within a block.
    static Partitioning from_labels(const std::vector<std::size_t>& labels) {
        std::vector<std::vector<Point>> blocks;
        std::vector<std::size_t> seen_labels;
        for (Point p = 0; p < labels.size(); ++p) {
            auto it = std::find(seen_labels.begin(), seen_labels.end(), labels[p]);
            if (it == seen_labels.end()) {
                seen_labels.push_back(labels[p]);
                blocks.push_back({p});
            } else {
                blocks[static_cast<std::size_t>(it - seen_labels.begin())].push_back(p);
            }
        }
        return Partitioning(labels.size(), std::move(blocks));
    }

    static Partitioning single_block(std::size_t n) {
        return from_labels(std::vector<std::size_t>(n, 0));
    }

    static Partitioning singletons(std::size_t n) {
        std::vector<std::size_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = i;
        }
        return from_labels(labels);
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return blocks_.size(); }
    const std::vector<std::vector<Point>>& blocks() const noexcept { return blocks_; }
    const std::vector<Point>& block(std::size_t b) const { return blocks_.at(b); }

    /// Canonical block index of p.
    std::size_t label(Point p) const {
        detail::require(p < n_, ErrorKind::InvalidPoint, "point out of range");
        return labels_[p];
    }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }

    bool same_block(Point a, Point b) const { return label(a) == label(b); }

    friend bool operator==(const Partitioning& a, const Partitioning& b) {
        return a.n_ == b.n_ && a.labels_ == b.labels_;
    }

    /// Orders partitionings by their canonical label strings, which is the
    /// enumeration order of enumerate_partitionings.
    friend std::strong_ordering operator<=>(const Partitioning& a, const Partitioning& b) {
        if (a.n_ != b.n_) {
            return a.n_ <=> b.n_;
        }
        return a.labels_ <=> b.labels_;
    }

    /// e.g. "{{0,1},{2}}" (0-based).
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            out += b ? ",{" : "{";
            for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
                out += (i ? "," : "") + std::to_string(blocks_[b][i]);
            }
            out += "}";
        }
        return out + "}";
    }

  private:
    std::size_t n_;
    std::vector<std::vector<Point>> blocks_;
    std::vector<std::size_t> labels_;
};

enum class EdgeClass { Inner, Outer };

inline EdgeClass classify_edge(Point u, Point v, const Partitioning& gamma) {
    detail::require(u < gamma.n() && v < gamma.n(), ErrorKind::InvalidPoint,
                    "edge endpoint out of range");
    return gamma.same_block(u, v) ? EdgeClass::Inner : EdgeClass::Outer;
}

inline EdgeClass classify_edge(const Edge& e, const Partitioning& gamma) {
    return classify_edge(e.u, e.v, gamma);
}

namespace detail {
inline void require_same_n(const SimilarityInstance& s, const Partitioning& gamma) {
    require(s.n() == gamma.n(), ErrorKind::Shape, "partitioning and instance differ in n");
}
}  // namespace detail

/// Total weight of pairs whose endpoints lie in different blocks.
inline double crossing_weight(const SimilarityInstance& s, const Partitioning& gamma) {
    detail::require_same_n(s, gamma);
    double total = 0.0;
    for (const Edge& e : s.edges()) {
        if (!gamma.same_block(e.u, e.v)) {
            total += e.weight;
        }
    }
    return total;
}

/// Max-Sum objective: total weight of pairs inside blocks.
inline double in_block_weight(const SimilarityInstance& s, const Partitioning& gamma) {
    detail::require_same_n(s, gamma);
    double total = 0.0;
    for (const Edge& e : s.edges()) {
        if (gamma.same_block(e.u, e.v)) {
            total += e.weight;
        }
    }
    return total;
}

inline constexpr std::size_t kMaxEnumerationPoints = 14;

/// Visits every k-partitioning of {0..n-1} once, in lexicographic order of
/// restricted growth strings. Each partition is handed over as labels (the
/// canonical block index per point).
template <typename Visitor>
void for_each_partition_labels(std::size_t n, std::size_t k, Visitor&& visit) {
    detail::require(k >= 1 && k <= n, ErrorKind::InvalidK,
                    "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    detail::require(n <= kMaxEnumerationPoints, ErrorKind::OracleSize,
                    "partition enumeration is limited to n <= 14");
    std::vector<std::size_t> labels(n, 0);
    // `used` = number of distinct labels among labels[0..pos-1]
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t pos, std::size_t used) {
        if (pos == n) {
            if (used == k) {
                visit(static_cast<const std::vector<std::size_t>&>(labels));
            }
            return;
        }
        const std::size_t remaining = n - pos;
        for (std::size_t label = 0; label <= used && label < k; ++label) {
            const std::size_t now_used = label == used ? used + 1 : used;
            if (now_used + (remaining - 1) < k) {
                continue;
            }
            labels[pos] = label;
            extend(pos + 1, now_used);
        }
    };
    extend(0, 0);
}

template <typename Visitor>
void for_each_partitioning(std::size_t n, std::size_t k, Visitor&& visit) {
    for_each_partition_labels(n, k, [&](const std::vector<std::size_t>& labels) {
        visit(Partitioning::from_labels(labels));
    });
}

inline std::vector<Partitioning> enumerate_partitionings(std::size_t n, std::size_t k) {
    std::vector<Partitioning> out;
    for_each_partitioning(n, k, [&](Partitioning p) { out.push_back(std::move(p)); });
    return out;
}

}  // namespace qcluster
