#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/clusterers.hpp"
#include "qcluster/error.hpp"
#include "qcluster/instances.hpp"
#include "qcluster/partitioning.hpp"
#include "qcluster/random.hpp"
#include "qcluster/similarity.hpp"
#include "qcluster/tree.hpp"

namespace qcluster {

enum class Property { ScaleInvariance, KRichness, Consistency, MSTConsistency, MCTConsistency };

inline const char* to_string(Property p) {
    switch (p) {
        case Property::ScaleInvariance: return "ScaleInvariance";
        case Property::KRichness: return "kRichness";
        case Property::Consistency: return "Consistency";
        case Property::MSTConsistency: return "MSTConsistency";
        case Property::MCTConsistency: return "MCTConsistency";
    }
    return "unknown";
}

/// Satisfied is bounded evidence (no violation in the trials run), never a
/// proof. Violated always comes with a re-checkable counterexample.
enum class Verdict { SatisfiedOnTrials, Violated };

inline const char* to_string(Verdict v) {
    return v == Verdict::SatisfiedOnTrials ? "Satisfied-on-trials" : "Violated";
}

/// Witness of a violation. For kRichness, `expected` is the unattained target
/// and `actual` is F on `instance` (the richness witness of the target). For
/// the other properties, `expected` = F(instance, k) and `actual` =
/// F(transformed, k).
struct Counterexample {
    SimilarityInstance instance;
    std::optional<SimilarityInstance> transformed;
    std::size_t k = 0;
    Partitioning expected;
    Partitioning actual;
    std::optional<double> alpha;
    std::string note;
};

struct PropertyReport {
    std::string function_name;
    Property property = Property::Consistency;
    Verdict verdict = Verdict::SatisfiedOnTrials;
    std::size_t trials = 0;
    /// Generated pairs whose premise did not hold (tree-consistency checks).
    std::size_t discarded = 0;
    std::optional<Counterexample> counterexample;
    std::string evidence;
};

inline constexpr std::size_t kDefaultAxiomTrials = 1000;
inline constexpr std::size_t kDefaultTreeTrials = 200;
inline constexpr std::size_t kRichnessSearchBudget = 200;
inline constexpr std::size_t kMinTrialPoints = 4;
inline constexpr std::size_t kMaxTrialPoints = 9;
inline constexpr std::size_t kMaxRichnessPoints = 8;

enum class TreeKind { MST, MCT };

inline const char* to_string(TreeKind kind) { return kind == TreeKind::MST ? "MST" : "MCT"; }

inline WeightedTree build_tree(const SimilarityInstance& s, TreeKind kind) {
    return kind == TreeKind::MST ? mst(s) : gomory_hu_cut_tree(s);
}

/// Partition induced by cutting the k-1 lightest edges of the MST or MCT.
inline Partitioning tree_cut(const SimilarityInstance& s, std::size_t k, TreeKind kind) {
    return tree_min_kcut(build_tree(s, kind), k).partition;
}

// ---------------------------------------------------------------------------
// Swap lemma
// ---------------------------------------------------------------------------

/// Exchanges canonical positions p and p+1 (0-based) when both edges have
/// the same class w.r.t. gamma, using only a gamma-transformation: an outer
/// pair is swapped by lowering the heavier edge just below the lighter one,
/// an inner pair by raising the lighter edge just above the heavier one. The
/// moved weight lands strictly between its new neighbours so no other edge
/// changes position; if ties leave no room the move is refused.
inline SimilarityInstance swap_lemma_apply(const SimilarityInstance& s, std::size_t p,
                                           const Partitioning& gamma) {
    detail::require_same_n(s, gamma);
    const std::vector<Edge> order = canonical_order(s);
    detail::require(p + 1 < order.size(), ErrorKind::Precondition, "swap position out of range");
    const Edge& upper = order[p];
    const Edge& lower = order[p + 1];
    const EdgeClass cls = classify_edge(upper, gamma);
    detail::require(cls == classify_edge(lower, gamma), ErrorKind::Precondition,
                    "swap needs two inner or two outer edges");
    if (cls == EdgeClass::Outer) {
        const double floor = p + 2 < order.size() ? order[p + 2].weight : 0.0;
        const double moved = floor > 0.0 ? 0.5 * (lower.weight + floor) : 0.5 * lower.weight;
        detail::require(moved < lower.weight && moved > floor, ErrorKind::Precondition,
                        "no room below the lighter outer edge (tied neighbours)");
        return s.with_weight(upper.u, upper.v, moved);
    }
    const double ceiling = p > 0 ? order[p - 1].weight : std::numeric_limits<double>::infinity();
    const double moved = std::isinf(ceiling) ? 2.0 * upper.weight : 0.5 * (upper.weight + ceiling);
    detail::require(moved > upper.weight && moved < ceiling, ErrorKind::Precondition,
                    "no room above the heavier inner edge (tied neighbours)");
    return s.with_weight(lower.u, lower.v, moved);
}

// ---------------------------------------------------------------------------
// Uniqueness chains
// ---------------------------------------------------------------------------

struct ChainStep {
    std::string label;
    SimilarityInstance instance;
    Partitioning output;
};

/// Replay of the uniqueness argument on one concrete (s, k).
struct ChainTrace {
    TreeKind mode = TreeKind::MCT;
    std::size_t k = 0;
    Partitioning gamma;
    /// F(s, k) for the target instance itself.
    Partitioning target_output;
    std::vector<ChainStep> steps;
    bool witness_attained = false;
    bool s3_is_gamma_transform = false;
    bool s4_is_gamma_transform = false;
    bool s5_is_gamma_transform = false;
    bool reorder_matches_target = false;
    bool tree_cut_matches = false;
    std::vector<std::string> issues;

    bool outputs_preserved() const {
        return std::all_of(steps.begin(), steps.end(), [&](const ChainStep& st) { return st.output == gamma; });
    }
    bool complete() const {
        return witness_attained && s3_is_gamma_transform && s4_is_gamma_transform && s5_is_gamma_transform &&
               reorder_matches_target && tree_cut_matches && outputs_preserved() && issues.empty();
    }
};

namespace detail {

struct ChainInstances {
    std::vector<SimilarityInstance> stages;  // s1..s5
    bool s3_is_gamma_transform = false;
    bool s4_is_gamma_transform = false;
    bool s5_is_gamma_transform = false;
    bool reorder_matches_target = false;
    std::vector<std::string> issues;
};

/// Pairs of `cls` in the order they appear in canonical_order(s).
inline std::vector<std::pair<Point, Point>> class_sequence(const SimilarityInstance& s, const Partitioning& gamma,
                                                           EdgeClass cls) {
    std::vector<std::pair<Point, Point>> out;
    for (const Edge& e : canonical_order(s)) {
        if (classify_edge(e, gamma) == cls) {
            out.emplace_back(e.u, e.v);
        }
    }
    return out;
}

/// Separates tied weights within one class while keeping the canonical order:
/// outer edges are only lowered, inner edges only raised.
inline SimilarityInstance break_ties(const SimilarityInstance& s, const Partitioning& gamma, EdgeClass cls) {
    std::vector<Edge> members;
    for (const Edge& e : canonical_order(s)) {
        if (classify_edge(e, gamma) == cls) {
            members.push_back(e);
        }
    }
    bool tied = false;
    for (std::size_t i = 1; i < members.size(); ++i) {
        tied = tied || members[i].weight == members[i - 1].weight;
    }
    if (!tied) {
        return s;
    }
    const double m = static_cast<double>(members.size());
    std::vector<double> upper = s.upper_weights();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double rank = static_cast<double>(i);
        const double factor = cls == EdgeClass::Outer ? 1.0 - 0.25 * rank / m : 1.0 + 0.25 * (m - rank) / m;
        upper[s.pair_index(members[i].u, members[i].v)] = members[i].weight * factor;
    }
    return SimilarityInstance(s.n(), std::move(upper));
}

/// Bubble-sorts the edges of `cls` into the relative order they have in
/// `target`, one adjacent swap_lemma_apply at a time.
inline SimilarityInstance reorder_class(SimilarityInstance current, const SimilarityInstance& target,
                                        const Partitioning& gamma, EdgeClass cls) {
    const auto wanted = class_sequence(target, gamma, cls);
    std::vector<std::size_t> rank(target.num_pairs());
    for (std::size_t r = 0; r < wanted.size(); ++r) {
        rank[target.pair_index(wanted[r].first, wanted[r].second)] = r;
    }
    for (bool swapped = true; swapped;) {
        swapped = false;
        const std::vector<Edge> order = canonical_order(current);
        for (std::size_t p = 0; p + 1 < order.size(); ++p) {
            if (classify_edge(order[p], gamma) != cls || classify_edge(order[p + 1], gamma) != cls) {
                continue;
            }
            if (rank[current.pair_index(order[p].u, order[p].v)] >
                rank[current.pair_index(order[p + 1].u, order[p + 1].v)]) {
                current = swap_lemma_apply(current, p, gamma);
                swapped = true;
                break;
            }
        }
    }
    return current;
}

inline ChainInstances build_chain(const SimilarityInstance& s, const Partitioning& gamma, TreeKind mode) {
    require_same_n(s, gamma);
    ChainInstances out;
    const std::size_t n = s.n();

    // s1: k-richness witness of gamma
    SimilarityInstance s1 = richness_witness(gamma);
    // s2: scaled until its heaviest edge is below half the lightest edge of s
    SimilarityInstance s2 = scale(s1, s.min_weight() / (4.0 * s1.max_weight()));
    // s3: inner edges raised to their weights in s
    SimilarityInstance s3 = SimilarityInstance::from_function(
        n, [&](Point i, Point j) { return gamma.same_block(i, j) ? s.weight(i, j) : s2.weight(i, j); });
    out.s3_is_gamma_transform = is_gamma_transform(s2, s3, gamma);
    // s4: outer edges shrunk uniformly until their sum is below the lightest inner edge
    double min_inner = std::numeric_limits<double>::infinity();
    double outer_sum = 0.0;
    for (const Edge& e : s3.edges()) {
        if (gamma.same_block(e.u, e.v)) {
            min_inner = std::min(min_inner, e.weight);
        } else {
            outer_sum += e.weight;
        }
    }
    const double shrink = outer_sum >= min_inner ? 0.5 * min_inner / outer_sum : 1.0;
    SimilarityInstance s4 = SimilarityInstance::from_function(
        n, [&](Point i, Point j) { return gamma.same_block(i, j) ? s3.weight(i, j) : s3.weight(i, j) * shrink; });
    out.s4_is_gamma_transform = is_gamma_transform(s3, s4, gamma);
    // s5: outer (and for MST also inner) edges reordered to their order in s
    SimilarityInstance s5 = s4;
    try {
        s5 = reorder_class(break_ties(s5, gamma, EdgeClass::Outer), s, gamma, EdgeClass::Outer);
        if (mode == TreeKind::MST) {
            s5 = reorder_class(break_ties(s5, gamma, EdgeClass::Inner), s, gamma, EdgeClass::Inner);
        }
    } catch (const Error& err) {
        out.issues.push_back(std::string("step s5: ") + err.what());
    }
    out.s5_is_gamma_transform = is_gamma_transform(s4, s5, gamma);
    out.reorder_matches_target =
        class_sequence(s5, gamma, EdgeClass::Outer) == class_sequence(s, gamma, EdgeClass::Outer) &&
        (mode == TreeKind::MCT ||
         class_sequence(s5, gamma, EdgeClass::Inner) == class_sequence(s, gamma, EdgeClass::Inner));
    out.stages = {std::move(s1), std::move(s2), std::move(s3), std::move(s4), std::move(s5)};
    return out;
}

}  // namespace detail

/// Replays the uniqueness transformation chain s1 -> ... -> s5 toward s and
/// records F's output at every step. gamma is the reference output: Max-Sum in
/// MCT mode, Single-Linkage in MST mode. Precondition failures are recorded,
/// not thrown.
inline ChainTrace uniqueness_chain(const PartitioningFunction& f, const SimilarityInstance& s, std::size_t k,
                                   TreeKind mode) {
    detail::require(s.n() <= 10, ErrorKind::OracleSize, "uniqueness chains are limited to n <= 10");
    Partitioning gamma = mode == TreeKind::MCT ? max_sum_approx(s, k) : single_linkage(s, k);
    detail::ChainInstances chain = detail::build_chain(s, gamma, mode);
    ChainTrace trace{mode, k, gamma, f(s, k), {}, false, chain.s3_is_gamma_transform,
                     chain.s4_is_gamma_transform, chain.s5_is_gamma_transform, chain.reorder_matches_target,
                     false, chain.issues};
    for (std::size_t i = 0; i < chain.stages.size(); ++i) {
        Partitioning out = f(chain.stages[i], k);
        trace.steps.push_back(ChainStep{"s" + std::to_string(i + 1), chain.stages[i], std::move(out)});
    }
    trace.witness_attained = trace.steps.front().output == gamma;
    if (!trace.witness_attained) {
        trace.issues.push_back("step s1: F does not return gamma on the richness witness");
    }
    trace.tree_cut_matches = tree_cut(chain.stages.back(), k, mode) == tree_cut(s, k, mode);
    if (!trace.tree_cut_matches) {
        trace.issues.push_back(std::string("steps s6-s7: ") + to_string(mode) +
                               " min k-cut of s5 differs from that of s");
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Property checkers
// ---------------------------------------------------------------------------

namespace detail {

inline Rng trial_stream(std::uint64_t seed, Property property, std::size_t trial) {
    return Rng::stream(Rng::mix(seed + 0x100 * (static_cast<std::uint64_t>(property) + 1)), trial);
}

inline Domain draw_domain(const PartitioningFunction& f, Rng& rng) {
    if (f.focus) {
        return *f.focus;
    }
    const std::size_t n = rng.between(kMinTrialPoints, kMaxTrialPoints);
    return Domain{n, static_cast<std::size_t>(rng.between(1, n))};
}

inline PropertyReport satisfied(const PartitioningFunction& f, Property property, std::size_t trials,
                                std::size_t discarded = 0) {
    return PropertyReport{f.name, property, Verdict::SatisfiedOnTrials, trials, discarded, std::nullopt,
                          "no violation in " + std::to_string(trials) + " trials (bounded evidence, not a proof)"};
}

inline PropertyReport violated(const PartitioningFunction& f, Property property, std::size_t trials,
                               std::size_t discarded, Counterexample witness) {
    return PropertyReport{f.name, property, Verdict::Violated, trials, discarded, std::move(witness),
                          "violation found at trial " + std::to_string(trials)};
}

/// Random strictly increasing map applied to every weight.
inline SimilarityInstance monotone_transform(const SimilarityInstance& s, Rng& rng) {
    const std::uint64_t family = rng.below(4);
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    switch (family) {
        case 0: {
            const double power = 0.25 + 3.75 * a;
            return transform_weights(s, [&](double w) { return std::pow(w, power); });
        }
        case 1: {
            const double rate = 0.5 + 5.5 * a;
            return transform_weights(s, [&](double w) { return std::exp(rate * w); });
        }
        case 2: {
            const double rate = 0.5 + 19.5 * a;
            return transform_weights(s, [&](double w) { return std::log1p(rate * w); });
        }
        default: {
            const double slope = 0.1 + 9.9 * a;
            const double offset = 2.0 * b;
            return transform_weights(s, [&](double w) { return slope * w + offset; });
        }
    }
}

inline std::vector<std::pair<Point, Point>> tree_pairs(const WeightedTree& t) {
    std::vector<std::pair<Point, Point>> out;
    for (const Edge& e : t.edges()) {
        out.emplace_back(e.u, e.v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// F(s, k) = F(alpha * s, k) for alpha in {0.25, 1, 7.5} and one random
/// alpha in (0, 10] per trial.
inline PropertyReport check_scale_invariance(const PartitioningFunction& f, std::size_t trials = kDefaultAxiomTrials,
                                             std::uint64_t seed = kDefaultSeed) {
    detail::require(trials >= 1, ErrorKind::Precondition, "need at least one trial");
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = detail::trial_stream(seed, Property::ScaleInvariance, t);
        const Domain d = detail::draw_domain(f, rng);
        const SimilarityInstance s = random_instance(d.n, rng);
        const Partitioning base = f(s, d.k);
        const std::array<double, 4> alphas{0.25, 1.0, 7.5, 10.0 * rng.uniform_open_closed()};
        for (double alpha : alphas) {
            SimilarityInstance scaled = scale(s, alpha);
            Partitioning out = f(scaled, d.k);
            if (!(out == base)) {
                return detail::violated(f, Property::ScaleInvariance, t + 1, 0,
                                        Counterexample{s, std::move(scaled), d.k, base, std::move(out), alpha,
                                                       "output changes under scaling"});
            }
        }
    }
    return detail::satisfied(f, Property::ScaleInvariance, trials);
}

/// Tries to reach every k-partitioning of n points: first with its richness
/// witness, then with a bounded random search (random instances and
/// gamma-transformed witnesses of random targets). A Violated verdict means
/// "not attained within budget"; it is structural only when F ignores s.
inline PropertyReport check_k_richness(const PartitioningFunction& f, std::size_t n, std::size_t k,
                                       std::uint64_t seed = kDefaultSeed,
                                       std::size_t budget = kRichnessSearchBudget) {
    detail::require(n <= kMaxRichnessPoints, ErrorKind::OracleSize, "k-richness checks are limited to n <= 8");
    const std::vector<Partitioning> targets = enumerate_partitionings(n, k);
    std::vector<bool> attained(targets.size(), false);
    const auto index_of = [&](const Partitioning& p) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(targets.begin(), targets.end(), p);
        if (it != targets.end() && *it == p) {
            return static_cast<std::size_t>(it - targets.begin());
        }
        return std::nullopt;
    };
    const auto record = [&](const SimilarityInstance& s) {
        if (auto idx = index_of(f(s, k))) {
            attained[*idx] = true;
        }
    };
    for (const Partitioning& target : targets) {
        record(richness_witness(target));
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
        Rng rng = detail::trial_stream(seed, Property::KRichness, t);
        for (std::size_t attempt = 0; attempt < budget && !attained[t]; ++attempt) {
            if (rng.below(2) == 0) {
                record(random_instance(n, rng));
            } else {
                const Partitioning& other = targets[rng.below(targets.size())];
                record(gamma_transform_sample(richness_witness(other), other, rng));
            }
        }
    }
    // report the first unattained target, preferring one without singletons
    std::optional<std::size_t> missing;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (attained[t]) {
            continue;
        }
        const auto& blocks = targets[t].blocks();
        const bool singleton_free =
            std::none_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; });
        if (!missing) {
            missing = t;
        }
        if (singleton_free) {
            missing = t;
            break;
        }
    }
    if (!missing) {
        return PropertyReport{f.name, Property::KRichness, Verdict::SatisfiedOnTrials, targets.size(), 0,
                              std::nullopt,
                              "all " + std::to_string(targets.size()) + " " + std::to_string(k) +
                                  "-partitionings of " + std::to_string(n) + " points attained"};
    }
    const Partitioning& target = targets[*missing];
    SimilarityInstance witness = richness_witness(target);
    Partitioning actual = f(witness, k);
    std::string note = f.ignores_input ? "structural: output never depends on s, so " + target.to_string() +
                                             " is unreachable"
                                       : "not attained within a search budget of " + std::to_string(budget);
    return PropertyReport{f.name,
                          Property::KRichness,
                          Verdict::Violated,
                          targets.size(),
                          0,
                          Counterexample{std::move(witness), std::nullopt, k, target, std::move(actual),
                                         std::nullopt, note},
                          note};
}

/// F(s', k) = F(s, k) for a random F(s, k)-transformation s' of s.
inline PropertyReport check_consistency(const PartitioningFunction& f, std::size_t trials = kDefaultAxiomTrials,
                                        std::uint64_t seed = kDefaultSeed) {
    detail::require(trials >= 1, ErrorKind::Precondition, "need at least one trial");
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = detail::trial_stream(seed, Property::Consistency, t);
        const Domain d = detail::draw_domain(f, rng);
        const SimilarityInstance s = random_instance(d.n, rng);
        const Partitioning gamma = f(s, d.k);
        SimilarityInstance moved = gamma_transform_sample(s, gamma, rng);
        if (!is_gamma_transform(s, moved, gamma)) {
            detail::fail(ErrorKind::Precondition, "gamma-transformation sampler produced an invalid sample");
        }
        Partitioning out = f(moved, d.k);
        if (!(out == gamma)) {
            return detail::violated(f, Property::Consistency, t + 1, 0,
                                    Counterexample{s, std::move(moved), d.k, gamma, std::move(out), std::nullopt,
                                                   "output changes under a transformation of its own output"});
        }
    }
    return detail::satisfied(f, Property::Consistency, trials);
}

/// Pairs (s, s') with the same MST min k-cut, generated by strictly
/// increasing weight maps; Violated when F(s, k) != F(s', k).
inline PropertyReport check_mst_consistency(const PartitioningFunction& f, std::size_t trials = kDefaultTreeTrials,
                                            std::uint64_t seed = kDefaultSeed) {
    detail::require(trials >= 1, ErrorKind::Precondition, "need at least one trial");
    std::size_t evaluated = 0;
    std::size_t discarded = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = detail::trial_stream(seed, Property::MSTConsistency, t);
        const Domain d = detail::draw_domain(f, rng);
        const SimilarityInstance s = random_instance(d.n, rng);
        SimilarityInstance moved = detail::monotone_transform(s, rng);
        const bool same_tree = detail::tree_pairs(mst(s)) == detail::tree_pairs(mst(moved));
        if (!same_tree || !(tree_cut(s, d.k, TreeKind::MST) == tree_cut(moved, d.k, TreeKind::MST))) {
            ++discarded;
            continue;
        }
        ++evaluated;
        Partitioning before = f(s, d.k);
        Partitioning after = f(moved, d.k);
        if (!(before == after)) {
            return detail::violated(f, Property::MSTConsistency, evaluated, discarded,
                                    Counterexample{s, std::move(moved), d.k, std::move(before), std::move(after),
                                                   std::nullopt, "same MST min k-cut, different output"});
        }
    }
    return detail::satisfied(f, Property::MSTConsistency, evaluated, discarded);
}

/// Pairs (s, s') with the same MCT min k-cut: s' is the chain instance s5 built
/// toward s from the MCT k-cut of s, or an independently drawn instance that
/// happens to share the premise. Violated when F(s, k) != F(s', k).
inline PropertyReport check_mct_consistency(const PartitioningFunction& f, std::size_t trials = kDefaultTreeTrials,
                                            std::uint64_t seed = kDefaultSeed) {
    detail::require(trials >= 1, ErrorKind::Precondition, "need at least one trial");
    std::size_t evaluated = 0;
    std::size_t discarded = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = detail::trial_stream(seed, Property::MCTConsistency, t);
        const Domain d = detail::draw_domain(f, rng);
        const SimilarityInstance s = random_instance(d.n, rng);
        const Partitioning premise = tree_cut(s, d.k, TreeKind::MCT);
        std::vector<SimilarityInstance> partners;
        partners.push_back(detail::build_chain(s, premise, TreeKind::MCT).stages.back());
        partners.push_back(random_instance(d.n, rng));
        for (SimilarityInstance& moved : partners) {
            if (!(tree_cut(moved, d.k, TreeKind::MCT) == premise)) {
                ++discarded;
                continue;
            }
            ++evaluated;
            Partitioning before = f(s, d.k);
            Partitioning after = f(moved, d.k);
            if (!(before == after)) {
                return detail::violated(f, Property::MCTConsistency, evaluated, discarded,
                                        Counterexample{s, std::move(moved), d.k, std::move(before), std::move(after),
                                                       std::nullopt, "same MCT min k-cut, different output"});
            }
        }
    }
    return detail::satisfied(f, Property::MCTConsistency, evaluated, discarded);
}

/// Re-runs F on a report's stored witness. True when a Violated report's
/// discrepancy (and its premise) reproduces, or when a Satisfied report
/// carries no witness.
inline bool revalidate(const PartitioningFunction& f, const PropertyReport& report) {
    if (report.verdict == Verdict::SatisfiedOnTrials) {
        return !report.counterexample.has_value();
    }
    if (!report.counterexample) {
        return false;
    }
    const Counterexample& c = *report.counterexample;
    if (report.property == Property::KRichness) {
        return f(c.instance, c.k) == c.actual && !(c.actual == c.expected);
    }
    if (!c.transformed || !(f(c.instance, c.k) == c.expected) || !(f(*c.transformed, c.k) == c.actual) ||
        c.expected == c.actual) {
        return false;
    }
    switch (report.property) {
        case Property::ScaleInvariance: return c.alpha && *c.transformed == scale(c.instance, *c.alpha);
        case Property::Consistency: return is_gamma_transform(c.instance, *c.transformed, c.expected);
        case Property::MSTConsistency:
            return tree_cut(c.instance, c.k, TreeKind::MST) == tree_cut(*c.transformed, c.k, TreeKind::MST);
        case Property::MCTConsistency:
            return tree_cut(c.instance, c.k, TreeKind::MCT) == tree_cut(*c.transformed, c.k, TreeKind::MCT);
        case Property::KRichness: break;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Verdict grid
// ---------------------------------------------------------------------------

inline constexpr std::array<Property, 4> kGridProperties{Property::Consistency, Property::KRichness,
                                                         Property::MSTConsistency, Property::MCTConsistency};

struct GridRow {
    PartitioningFunction function;
    std::array<Verdict, 4> expected;
};

/// The transposition used for both cuts families: swaps the first two
/// 2-partitionings of 4 points, {{0,1,2},{3}} and {{0,1,3},{2}}.
inline PartitionPermutation family_permutation() { return PartitionPermutation::transposition(4, 2, 0, 1); }

/// Functions of the verdict grid with their expected pattern, columns
/// (Consistency, kRichness, MSTConsistency, MCTConsistency).
inline std::vector<GridRow> table1_rows() {
    constexpr auto Y = Verdict::SatisfiedOnTrials;
    constexpr auto N = Verdict::Violated;
    return {
        {single_linkage_function(), {Y, Y, Y, N}},
        {max_sum_function(), {Y, Y, N, Y}},
        {mst_cuts_member(family_permutation()), {N, Y, Y, N}},
        {mct_cuts_member(family_permutation()), {N, Y, N, Y}},
        {constant_partitioner(), {Y, N, Y, Y}},
    };
}

struct GridConfig {
    std::size_t axiom_trials = kDefaultAxiomTrials;
    std::size_t tree_trials = kDefaultTreeTrials;
    std::uint64_t seed = kDefaultSeed;
    /// k-richness domain for functions without a focus.
    Domain richness{5, 2};
};

struct GridCell {
    PropertyReport report;
    Verdict expected = Verdict::SatisfiedOnTrials;
    bool revalidated = false;

    bool matches() const { return report.verdict == expected && revalidated; }
};

inline PropertyReport run_property(const PartitioningFunction& f, Property property, const GridConfig& config) {
    switch (property) {
        case Property::ScaleInvariance: return check_scale_invariance(f, config.axiom_trials, config.seed);
        case Property::KRichness: {
            const Domain d = f.focus ? *f.focus : config.richness;
            return check_k_richness(f, d.n, d.k, config.seed);
        }
        case Property::Consistency: return check_consistency(f, config.axiom_trials, config.seed);
        case Property::MSTConsistency: return check_mst_consistency(f, config.tree_trials, config.seed);
        case Property::MCTConsistency: return check_mct_consistency(f, config.tree_trials, config.seed);
    }
    detail::fail(ErrorKind::Precondition, "unknown property");
}

/// Evaluates the 5 x 4 verdict grid. A cell matches when its verdict equals
/// the expected one and its witness (if any) re-validates.
inline std::vector<GridCell> table1_grid(const GridConfig& config = {}) {
    std::vector<GridCell> cells;
    for (const GridRow& row : table1_rows()) {
        for (std::size_t c = 0; c < kGridProperties.size(); ++c) {
            PropertyReport report = run_property(row.function, kGridProperties[c], config);
            const bool ok = revalidate(row.function, report);
            cells.push_back(GridCell{std::move(report), row.expected[c], ok});
        }
    }
    return cells;
}

}  // namespace qcluster
