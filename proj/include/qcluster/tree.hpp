#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/error.hpp"
#include "qcluster/flow_cut.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/similarity.hpp"
#include "qcluster/submodular.hpp"

namespace qcluster {

namespace detail {

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n)
      : parent_(n)
      , size_(n, 1)
      , count_{n} {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns false when a and b were already joined.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        --count_;
        return true;
    }

    std::size_t count() const noexcept { return count_; }

    Partitioning partition() {
        std::vector<std::size_t> labels(parent_.size());
        for (std::size_t p = 0; p < parent_.size(); ++p) {
            labels[p] = find(p);
        }
        return Partitioning::from_labels(labels);
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t count_;
};

}  // namespace detail

/// Tree edge order: lighter first, then (u, v) ascending.
inline bool tree_order_before(const Edge& a, const Edge& b) {
    if (a.weight != b.weight) {
        return a.weight < b.weight;
    }
    if (a.u != b.u) {
        return a.u < b.u;
    }
    return a.v < b.v;
}

/// Spanning tree on {0..n-1} with edges held in ascending tree order.
class WeightedTree {
  public:
    WeightedTree(std::size_t n, std::vector<Edge> edges)
      : n_{n}
      , edges_{std::move(edges)} {
        detail::require(n_ >= 1, ErrorKind::Shape, "tree needs at least one node");
        detail::require(edges_.size() == n_ - 1, ErrorKind::Shape,
                        "tree on " + std::to_string(n_) + " nodes needs " + std::to_string(n_ - 1) +
                            " edges");
        detail::DisjointSets components(n_);
        for (Edge& e : edges_) {
            detail::require(e.u < n_ && e.v < n_, ErrorKind::InvalidPoint, "tree edge endpoint out of range");
            detail::require(e.u != e.v, ErrorKind::Shape, "tree edge is a self-loop");
            detail::require(std::isfinite(e.weight), ErrorKind::Shape, "tree edge weight is not finite");
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
            detail::require(components.unite(e.u, e.v), ErrorKind::Shape, "tree edges contain a cycle");
        }
        std::sort(edges_.begin(), edges_.end(), tree_order_before);
    }

    std::size_t n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    double total_weight() const {
        double total = 0.0;
        for (const Edge& e : edges_) {
            total += e.weight;
        }
        return total;
    }

    /// Tree edges on the unique u-v path.
    std::vector<Edge> path(Point u, Point v) const {
        detail::require(u < n_ && v < n_, ErrorKind::InvalidPoint, "path endpoint out of range");
        constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
        std::vector<std::vector<std::size_t>> incident(n_);
        for (std::size_t idx = 0; idx < edges_.size(); ++idx) {
            incident[edges_[idx].u].push_back(idx);
            incident[edges_[idx].v].push_back(idx);
        }
        std::vector<std::size_t> via(n_, kNone);
        std::vector<bool> seen(n_, false);
        std::vector<Point> stack{u};
        seen[u] = true;
        while (!stack.empty()) {
            const Point x = stack.back();
            stack.pop_back();
            for (std::size_t idx : incident[x]) {
                const Point y = edges_[idx].u == x ? edges_[idx].v : edges_[idx].u;
                if (!seen[y]) {
                    seen[y] = true;
                    via[y] = idx;
                    stack.push_back(y);
                }
            }
        }
        std::vector<Edge> out;
        for (Point x = v; x != u;) {
            const Edge& e = edges_[via[x]];
            out.push_back(e);
            x = e.u == x ? e.v : e.u;
        }
        return out;
    }

    /// Lightest edge (in tree order) on the u-v path; u != v.
    Edge path_minimum(Point u, Point v) const {
        detail::require(u != v, ErrorKind::InvalidPair, "path minimum needs distinct endpoints");
        const std::vector<Edge> edges = path(u, v);
        return *std::min_element(edges.begin(), edges.end(), tree_order_before);
    }

    /// Side containing `edge.u` after deleting `edge` from the tree.
    std::vector<bool> side_of_removed(const Edge& edge) const {
        detail::DisjointSets components(n_);
        for (const Edge& e : edges_) {
            if (!(e == edge)) {
                components.unite(e.u, e.v);
            }
        }
        std::vector<bool> side(n_);
        const std::size_t root = components.find(edge.u);
        for (Point p = 0; p < n_; ++p) {
            side[p] = components.find(p) == root;
        }
        return side;
    }

  private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

/// Canonical maximum spanning tree: Kruskal over the canonical edge order.
inline WeightedTree mst(const SimilarityInstance& s) {
    detail::DisjointSets components(s.n());
    std::vector<Edge> chosen;
    for (const Edge& e : canonical_order(s)) {
        if (components.unite(e.u, e.v)) {
            chosen.push_back(e);
            if (chosen.size() + 1 == s.n()) {
                break;
            }
        }
    }
    return WeightedTree(s.n(), std::move(chosen));
}

namespace detail {

/// A-side membership over contracted nodes plus the separating value.
struct Separation {
    double value = 0.0;
    std::vector<bool> a_side;
};

/// Gomory-Hu supernode iteration.
///
/// Keeps a partition of the points into supernodes and a tree over them whose
/// every edge realizes a minimum separation between some pair of points in
/// its two ends. Each step takes the supernode with the smallest
/// representative among those holding two or more points, and separates its
/// two smallest members a and b in the graph where every component of the
/// tree minus that supernode is contracted to one node. Contracted node
/// layout handed to `separate`: the supernode's points in ascending order
/// (so a is node 0, b is node 1), followed by one node per component.
template <typename Separate>
WeightedTree gomory_hu_supernodes(std::size_t n, Separate&& separate) {
    struct TreeEdge {
        std::size_t x;
        std::size_t y;
        double weight;
    };
    std::vector<std::vector<Point>> supernodes(1);
    for (Point p = 0; p < n; ++p) {
        supernodes[0].push_back(p);
    }
    std::vector<TreeEdge> tree;

    for (;;) {
        std::optional<std::size_t> pick;
        for (std::size_t idx = 0; idx < supernodes.size(); ++idx) {
            if (supernodes[idx].size() >= 2 &&
                (!pick || supernodes[idx].front() < supernodes[*pick].front())) {
                pick = idx;
            }
        }
        if (!pick) {
            break;
        }
        const std::size_t current = *pick;
        const std::vector<Point> members = supernodes[current];

        // Components of the supernode tree with `current` removed, one per
        // incident tree edge.
        std::vector<std::size_t> incident;
        for (std::size_t e = 0; e < tree.size(); ++e) {
            if (tree[e].x == current || tree[e].y == current) {
                incident.push_back(e);
            }
        }
        std::vector<std::vector<Point>> groups;
        for (Point p : members) {
            groups.push_back({p});
        }
        for (std::size_t e : incident) {
            const std::size_t start = tree[e].x == current ? tree[e].y : tree[e].x;
            std::vector<bool> seen(supernodes.size(), false);
            seen[current] = true;
            seen[start] = true;
            std::vector<std::size_t> stack{start};
            std::vector<Point> points;
            while (!stack.empty()) {
                const std::size_t node = stack.back();
                stack.pop_back();
                points.insert(points.end(), supernodes[node].begin(), supernodes[node].end());
                for (const TreeEdge& te : tree) {
                    const std::size_t other = te.x == node ? te.y : (te.y == node ? te.x : node);
                    if (other != node && !seen[other]) {
                        seen[other] = true;
                        stack.push_back(other);
                    }
                }
            }
            groups.push_back(std::move(points));
        }

        const Separation cut = separate(static_cast<const std::vector<std::vector<Point>>&>(groups));

        std::vector<Point> a_part;
        std::vector<Point> b_part;
        for (std::size_t i = 0; i < members.size(); ++i) {
            (cut.a_side[i] ? a_part : b_part).push_back(members[i]);
        }
        supernodes[current] = std::move(a_part);
        const std::size_t fresh = supernodes.size();
        supernodes.push_back(std::move(b_part));
        for (std::size_t c = 0; c < incident.size(); ++c) {
            if (!cut.a_side[members.size() + c]) {
                TreeEdge& te = tree[incident[c]];
                (te.x == current ? te.x : te.y) = fresh;
            }
        }
        tree.push_back(TreeEdge{current, fresh, cut.value});
    }

    std::vector<Edge> edges;
    for (const TreeEdge& te : tree) {
        edges.push_back(Edge{supernodes[te.x].front(), supernodes[te.y].front(), te.weight});
    }
    return WeightedTree(n, std::move(edges));
}

}  // namespace detail

/// Canonical minimum cut tree of s (Gomory-Hu with explicit contraction).
inline WeightedTree gomory_hu_cut_tree(const SimilarityInstance& s) {
    return detail::gomory_hu_supernodes(s.n(), [&](const std::vector<std::vector<Point>>& groups) {
        std::vector<std::size_t> node_of(s.n());
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (Point p : groups[g]) {
                node_of[p] = g;
            }
        }
        Graph contracted(groups.size());
        for (const Edge& e : s.edges()) {
            contracted.add(node_of[e.u], node_of[e.v], e.weight);
        }
        const detail::MaxFlow flow = detail::shortest_augmenting_path(contracted, 0, 1);
        return detail::Separation{cut_value(contracted, flow.source_side), flow.source_side};
    });
}

inline constexpr std::size_t kMaxGeneralTreePoints = 16;

/// Gomory-Hu tree of an arbitrary symmetric submodular set function. The
/// a-b separator at each step is found by exhaustive search over the
/// contracted node sets containing a and excluding b.
inline WeightedTree gomory_hu_general(const SetFunctionOracle& f, std::size_t n) {
    detail::require(n >= 1, ErrorKind::InvalidInstance, "tree needs at least one point");
    detail::require(n <= kMaxGeneralTreePoints, ErrorKind::OracleSize,
                    "general Gomory-Hu trees are limited to n <= 16");
    detail::require(f.n == n, ErrorKind::Shape, "oracle ground set differs from n");
    return detail::gomory_hu_supernodes(n, [&](const std::vector<std::vector<Point>>& groups) {
        const std::size_t m = groups.size();
        std::vector<Subset> group_sets;
        for (const auto& g : groups) {
            group_sets.push_back(subset_of(g));
        }
        std::optional<std::pair<double, std::uint32_t>> best;
        // node 0 (holding a) always in, node 1 (holding b) always out
        for (std::uint32_t rest = 0; rest < (1U << (m - 2)); ++rest) {
            const std::uint32_t nodes = 1U | (rest << 2);
            Subset set = 0;
            for (std::size_t g = 0; g < m; ++g) {
                if (nodes >> g & 1U) {
                    set |= group_sets[g];
                }
            }
            const double value = f(set);
            if (!best || value < best->first) {
                best = std::make_pair(value, nodes);
            }
        }
        detail::Separation out{best->first, std::vector<bool>(m)};
        for (std::size_t g = 0; g < m; ++g) {
            out.a_side[g] = best->second >> g & 1U;
        }
        return out;
    });
}

inline constexpr double kCutTolerance = 1e-9;

/// Checks that t is a minimum cut tree of s: for every pair, the lightest edge
/// on the tree path weighs the minimum cut value, and deleting it induces a cut
/// of s of that value. Exhaustive, so n <= 12.
inline bool verify_mct(const WeightedTree& t, const SimilarityInstance& s) {
    detail::require(t.n() == s.n(), ErrorKind::Shape, "tree and instance differ in n");
    detail::require(s.n() <= kMaxBruteForcePoints, ErrorKind::OracleSize,
                    "verify_mct is limited to n <= 12");
    const std::size_t n = s.n();
    const Graph g(s);
    std::vector<double> table(std::size_t{1} << n);
    std::vector<bool> mask(n);
    for (std::uint32_t bits = 0; bits < table.size(); ++bits) {
        for (Point p = 0; p < n; ++p) {
            mask[p] = bits >> p & 1U;
        }
        table[bits] = cut_value(g, mask);
    }
    for (Point u = 0; u < n; ++u) {
        for (Point v = u + 1; v < n; ++v) {
            double brute = std::numeric_limits<double>::infinity();
            for (std::uint32_t bits = 0; bits < table.size(); ++bits) {
                if ((bits >> u & 1U) && !(bits >> v & 1U)) {
                    brute = std::min(brute, table[bits]);
                }
            }
            const Edge lightest = t.path_minimum(u, v);
            if (std::abs(lightest.weight - brute) > kCutTolerance) {
                return false;
            }
            if (std::abs(cut_value(g, t.side_of_removed(lightest)) - brute) > kCutTolerance) {
                return false;
            }
        }
    }
    return true;
}

struct TreeKCut {
    std::vector<Edge> removed_edges;
    Partitioning partition;
};

/// Deletes the k-1 lightest tree edges; the remaining forest's components
/// are the k blocks.
inline TreeKCut tree_min_kcut(const WeightedTree& t, std::size_t k) {
    detail::require(k >= 1 && k <= t.n(), ErrorKind::InvalidK,
                    "k=" + std::to_string(k) + " outside [1, " + std::to_string(t.n()) + "]");
    const auto& edges = t.edges();
    std::vector<Edge> removed(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(k - 1));
    detail::DisjointSets components(t.n());
    for (std::size_t idx = k - 1; idx < edges.size(); ++idx) {
        components.unite(edges[idx].u, edges[idx].v);
    }
    return TreeKCut{std::move(removed), components.partition()};
}

}  // namespace qcluster
