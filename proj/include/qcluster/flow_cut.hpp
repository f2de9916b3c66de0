#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/error.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/similarity.hpp"

namespace qcluster {

/// Dense undirected graph with non-negative weights; zero means "no edge".
/// Used for contracted graphs and trees, where absent pairs are legal.
class Graph {
  public:
    explicit Graph(std::size_t n)
      : n_{n}
      , w_(n * n, 0.0) {}

    explicit Graph(const SimilarityInstance& s)
      : Graph(s.n()) {
        for (const Edge& e : s.edges()) {
            set(e.u, e.v, e.weight);
        }
    }

    std::size_t n() const noexcept { return n_; }
    double at(Point i, Point j) const { return w_[i * n_ + j]; }

    void set(Point i, Point j, double w) {
        w_[i * n_ + j] = w;
        w_[j * n_ + i] = w;
    }
    void add(Point i, Point j, double w) {
        if (i != j) {
            set(i, j, at(i, j) + w);
        }
    }

  private:
    std::size_t n_;
    std::vector<double> w_;
};

struct CutResult {
    double value = 0.0;
    /// Sorted members of one side: the side holding the source for s-t cuts.
    std::vector<Point> side;
};

/// Sum of weights crossing (in_side, complement).
inline double cut_value(const Graph& g, const std::vector<bool>& in_side) {
    double total = 0.0;
    for (Point i = 0; i < g.n(); ++i) {
        for (Point j = i + 1; j < g.n(); ++j) {
            if (in_side[i] != in_side[j]) {
                total += g.at(i, j);
            }
        }
    }
    return total;
}

inline double cut_value(const Graph& g, const std::vector<Point>& side) {
    std::vector<bool> mask(g.n(), false);
    for (Point p : side) {
        mask[p] = true;
    }
    return cut_value(g, mask);
}

inline double cut_value(const SimilarityInstance& s, const std::vector<Point>& side) {
    return cut_value(Graph(s), side);
}

namespace detail {

struct MaxFlow {
    double flow = 0.0;
    /// Points reachable from the source in the final residual graph.
    std::vector<bool> source_side;
};

/// Shortest augmenting path max flow. Neighbours are scanned in ascending id
/// so the returned source side is reproducible. Residual capacities are
/// updated by subtracting the bottleneck, which drives the bottleneck arc to
/// exactly zero and guarantees termination in floating point.
inline MaxFlow shortest_augmenting_path(const Graph& g, Point source, Point sink) {
    const std::size_t n = g.n();
    std::vector<double> residual(n * n);
    for (Point i = 0; i < n; ++i) {
        for (Point j = 0; j < n; ++j) {
            residual[i * n + j] = i == j ? 0.0 : g.at(i, j);
        }
    }
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(n);
    MaxFlow result;
    for (;;) {
        std::fill(parent.begin(), parent.end(), kNone);
        parent[source] = source;
        std::deque<Point> queue{source};
        while (!queue.empty() && parent[sink] == kNone) {
            const Point u = queue.front();
            queue.pop_front();
            for (Point v = 0; v < n; ++v) {
                if (parent[v] == kNone && residual[u * n + v] > 0.0) {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if (parent[sink] == kNone) {
            break;
        }
        double bottleneck = std::numeric_limits<double>::infinity();
        for (Point v = sink; v != source; v = parent[v]) {
            bottleneck = std::min(bottleneck, residual[parent[v] * n + v]);
        }
        for (Point v = sink; v != source; v = parent[v]) {
            const Point u = parent[v];
            residual[u * n + v] -= bottleneck;
            residual[v * n + u] += bottleneck;
        }
        result.flow += bottleneck;
    }
    result.source_side.assign(n, false);
    for (Point v = 0; v < n; ++v) {
        result.source_side[v] = parent[v] != kNone;
    }
    return result;
}

inline std::vector<Point> members(const std::vector<bool>& mask) {
    std::vector<Point> out;
    for (Point p = 0; p < mask.size(); ++p) {
        if (mask[p]) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace detail

/// Minimum a-b cut; `side` is the residual-reachable set of a and the value is
/// the recomputed crossing weight of that side.
inline CutResult st_min_cut(const Graph& g, Point a, Point b) {
    detail::require(a < g.n() && b < g.n(), ErrorKind::InvalidPoint, "cut terminal out of range");
    detail::require(a != b, ErrorKind::InvalidPair, "s-t cut needs two distinct terminals");
    const detail::MaxFlow flow = detail::shortest_augmenting_path(g, a, b);
    return CutResult{cut_value(g, flow.source_side), detail::members(flow.source_side)};
}

inline CutResult st_min_cut(const SimilarityInstance& s, Point a, Point b) {
    return st_min_cut(Graph(s), a, b);
}

/// Minimum non-trivial cut as the cheapest of the n-1 cuts separating point 0
/// from t = 1..n-1; the first minimum in that scan wins ties.
inline CutResult global_min_cut(const Graph& g) {
    detail::require(g.n() >= 2, ErrorKind::InvalidInstance, "global min cut needs n >= 2");
    CutResult best = st_min_cut(g, 0, 1);
    for (Point t = 2; t < g.n(); ++t) {
        CutResult candidate = st_min_cut(g, 0, t);
        if (candidate.value < best.value) {
            best = std::move(candidate);
        }
    }
    return best;
}

inline CutResult global_min_cut(const SimilarityInstance& s) { return global_min_cut(Graph(s)); }

inline constexpr std::size_t kMaxBruteForcePoints = 12;

/// Exhaustive a-b minimum cut over every subset containing a but not b.
inline CutResult brute_force_st_min_cut(const Graph& g, Point a, Point b) {
    detail::require(g.n() <= kMaxBruteForcePoints, ErrorKind::OracleSize,
                    "exhaustive cut oracle is limited to n <= 12");
    detail::require(a < g.n() && b < g.n(), ErrorKind::InvalidPoint, "cut terminal out of range");
    detail::require(a != b, ErrorKind::InvalidPair, "s-t cut needs two distinct terminals");
    const std::size_t n = g.n();
    std::optional<CutResult> best;
    std::vector<bool> mask(n);
    for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
        if (!(bits >> a & 1U) || (bits >> b & 1U)) {
            continue;
        }
        for (Point p = 0; p < n; ++p) {
            mask[p] = bits >> p & 1U;
        }
        const double value = cut_value(g, mask);
        if (!best || value < best->value) {
            best = CutResult{value, detail::members(mask)};
        }
    }
    return *best;
}

struct KCutResult {
    double value = 0.0;
    Partitioning partition;
};

/// Minimum total crossing weight over all k-partitionings, scanned in
/// canonical enumeration order (first minimum wins).
inline KCutResult brute_force_min_kcut(const Graph& g, std::size_t k) {
    detail::require(g.n() <= kMaxBruteForcePoints, ErrorKind::OracleSize,
                    "exhaustive k-cut oracle is limited to n <= 12");
    std::optional<KCutResult> best;
    for_each_partition_labels(g.n(), k, [&](const std::vector<std::size_t>& labels) {
        double value = 0.0;
        for (Point i = 0; i < g.n(); ++i) {
            for (Point j = i + 1; j < g.n(); ++j) {
                if (labels[i] != labels[j]) {
                    value += g.at(i, j);
                }
            }
        }
        if (!best || value < best->value) {
            best = KCutResult{value, Partitioning::from_labels(labels)};
        }
    });
    return *best;
}

inline KCutResult brute_force_min_kcut(const SimilarityInstance& s, std::size_t k) {
    return brute_force_min_kcut(Graph(s), k);
}

}  // namespace qcluster
