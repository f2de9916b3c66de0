#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qcluster/error.hpp"

namespace qcluster {

/// Points are identified with 0, 1, ..., n-1 inside the library. The CLI and
/// its file formats use 1-based ids.
using Point = std::size_t;

/// Weighted unordered pair with u < v.
struct Edge {
    Point u = 0;
    Point v = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Number of unordered pairs on n points.
constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Positive symmetric similarity on every pair of n >= 2 points.
///
/// Weights are stored once per unordered pair, row-major over i < j, so
/// symmetry holds structurally. Construction rejects non-positive or
/// non-finite weights; every instance in circulation is therefore valid.
class SimilarityInstance {
  public:
    SimilarityInstance(std::size_t n, std::vector<double> upper)
      : n_{n}
      , weights_{std::move(upper)} {
        detail::require(n_ >= 2, ErrorKind::InvalidInstance, "similarity instance needs n >= 2");
        detail::require(weights_.size() == pair_count(n_), ErrorKind::Shape,
                        "expected " + std::to_string(pair_count(n_)) + " pair weights, got " +
                            std::to_string(weights_.size()));
        for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
            const double w = weights_[idx];
            detail::require(std::isfinite(w) && w > 0.0, ErrorKind::InvalidInstance,
                            "weight #" + std::to_string(idx) + " is not a positive finite number");
        }
    }

    /// Builds from a callable `weight(i, j)` evaluated for every i < j.
    template <typename WeightFn>
    static SimilarityInstance from_function(std::size_t n, WeightFn&& weight) {
        std::vector<double> upper;
        upper.reserve(n >= 2 ? pair_count(n) : 0);
        for (Point i = 0; i < n; ++i) {
            for (Point j = i + 1; j < n; ++j) {
                upper.push_back(static_cast<double>(weight(i, j)));
            }
        }
        return SimilarityInstance(n, std::move(upper));
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t num_pairs() const noexcept { return weights_.size(); }
    const std::vector<double>& upper_weights() const noexcept { return weights_; }

    std::size_t pair_index(Point i, Point j) const {
        detail::require(i < n_ && j < n_, ErrorKind::InvalidPoint, "point out of range");
        detail::require(i != j, ErrorKind::InvalidPair, "pair endpoints must differ");
        if (i > j) {
            std::swap(i, j);
        }
        // rows 0..i-1 contribute (n-1) + (n-2) + ... + (n-i) entries
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    double weight(Point i, Point j) const { return weights_[pair_index(i, j)]; }

    /// Copy with one pair's weight replaced.
    SimilarityInstance with_weight(Point i, Point j, double w) const {
        std::vector<double> upper = weights_;
        upper[pair_index(i, j)] = w;
        return SimilarityInstance(n_, std::move(upper));
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(weights_.size());
        std::size_t idx = 0;
        for (Point i = 0; i < n_; ++i) {
            for (Point j = i + 1; j < n_; ++j) {
                out.push_back(Edge{i, j, weights_[idx++]});
            }
        }
        return out;
    }

    double total_weight() const {
        double total = 0.0;
        for (double w : weights_) {
            total += w;
        }
        return total;
    }

    double min_weight() const { return *std::min_element(weights_.begin(), weights_.end()); }
    double max_weight() const { return *std::max_element(weights_.begin(), weights_.end()); }

    friend bool operator==(const SimilarityInstance&, const SimilarityInstance&) = default;

  private:
    std::size_t n_;
    std::vector<double> weights_;
};

/// Strict weak order of the canonical edge list: heavier first, then (u, v)
/// ascending.
inline bool canonical_before(const Edge& a, const Edge& b) {
    if (a.weight != b.weight) {
        return a.weight > b.weight;
    }
    if (a.u != b.u) {
        return a.u < b.u;
    }
    return a.v < b.v;
}

/// All pairs sorted by decreasing similarity, lexicographic on ties.
inline std::vector<Edge> canonical_order(const SimilarityInstance& s) {
    std::vector<Edge> edges = s.edges();
    std::sort(edges.begin(), edges.end(), canonical_before);
    return edges;
}

inline SimilarityInstance scale(const SimilarityInstance& s, double alpha) {
    detail::require(std::isfinite(alpha) && alpha > 0.0, ErrorKind::InvalidScalar,
                    "scale factor must be a positive finite number");
    std::vector<double> upper = s.upper_weights();
    for (double& w : upper) {
        w *= alpha;
    }
    return SimilarityInstance(s.n(), std::move(upper));
}

/// Applies `map` to every weight. The result must stay positive.
template <typename Map>
SimilarityInstance transform_weights(const SimilarityInstance& s, Map&& map) {
    std::vector<double> upper = s.upper_weights();
    for (double& w : upper) {
        w = map(w);
    }
    return SimilarityInstance(s.n(), std::move(upper));
}

/// Restriction of s to `points` (relabelled 0..m-1 in the given order).
inline SimilarityInstance induced(const SimilarityInstance& s, const std::vector<Point>& points) {
    return SimilarityInstance::from_function(
        points.size(), [&](Point a, Point b) { return s.weight(points[a], points[b]); });
}

}  // namespace qcluster
