#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace qcluster;

namespace {

constexpr std::size_t kTrials = 300;

PartitioningFunction restricted(PartitioningFunction f, Domain domain) {
    f.focus = domain;
    return f;
}

void expect_witness(const PartitioningFunction& f, const PropertyReport& report) {
    ASSERT_EQ(report.verdict, Verdict::Violated);
    ASSERT_TRUE(report.counterexample.has_value());
    EXPECT_TRUE(revalidate(f, report));
}

}  // namespace

TEST(ScaleInvariance, ClusteringFunctionsPass) {
    for (const PartitioningFunction& f : {single_linkage_function(), max_sum_function()}) {
        const PropertyReport report = check_scale_invariance(f, kTrials);
        EXPECT_EQ(report.verdict, Verdict::SatisfiedOnTrials) << f.name;
        EXPECT_EQ(report.trials, kTrials);
        EXPECT_NE(report.evidence.find("not a proof"), std::string::npos);
        EXPECT_TRUE(revalidate(f, report));
    }
}

TEST(ScaleInvariance, ThresholdControlFails) {
    const PartitioningFunction f = threshold_partitioner();
    const PropertyReport report = check_scale_invariance(f, kTrials);
    expect_witness(f, report);
    EXPECT_TRUE(report.counterexample->alpha.has_value());
}

TEST(ScaleInvariance, RejectsZeroTrials) { EXPECT_THROW(check_scale_invariance(single_linkage_function(), 0), Error); }

TEST(KRichness, SingleLinkageAndMaxSumReachEveryTarget) {
    const PropertyReport sl = check_k_richness(single_linkage_function(), 5, 2);
    EXPECT_EQ(sl.verdict, Verdict::SatisfiedOnTrials);
    EXPECT_EQ(sl.trials, 15u);
    const PropertyReport ms = check_k_richness(max_sum_function(), 5, 3);
    EXPECT_EQ(ms.verdict, Verdict::SatisfiedOnTrials);
    EXPECT_EQ(ms.trials, 25u);
}

TEST(KRichness, ConstantMissesSingletonFreeTargets) {
    const PartitioningFunction f = constant_partitioner();
    const PropertyReport report = check_k_richness(f, 5, 2);
    expect_witness(f, report);
    const Counterexample& c = *report.counterexample;
    EXPECT_EQ(c.actual.to_string(), "{{0,1,2,3},{4}}");
    for (const auto& block : c.expected.blocks()) {
        EXPECT_GT(block.size(), 1u);
    }
    EXPECT_NE(c.note.find("structural"), std::string::npos);
}

TEST(KRichness, LimitsSize) {
    try {
        check_k_richness(single_linkage_function(), 9, 2);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::OracleSize);
    }
}

TEST(Consistency, ClusteringFunctionsPass) {
    EXPECT_EQ(check_consistency(single_linkage_function(), kTrials).verdict, Verdict::SatisfiedOnTrials);
    EXPECT_EQ(check_consistency(restricted(max_sum_function(), Domain{8, 2}), kTrials).verdict,
              Verdict::SatisfiedOnTrials);
    EXPECT_EQ(check_consistency(constant_partitioner(), kTrials).verdict, Verdict::SatisfiedOnTrials);
}

TEST(Consistency, PermutedFamiliesFail) {
    for (const PartitioningFunction& f :
         {mct_cuts_member(family_permutation()), mst_cuts_member(family_permutation())}) {
        const PropertyReport report = check_consistency(f, kTrials);
        expect_witness(f, report);
        EXPECT_TRUE(is_gamma_transform(report.counterexample->instance, *report.counterexample->transformed,
                                       report.counterexample->expected));
    }
}

TEST(MstConsistency, SingleLinkagePassesAndMaxSumFails) {
    const PropertyReport sl = check_mst_consistency(single_linkage_function());
    EXPECT_EQ(sl.verdict, Verdict::SatisfiedOnTrials);
    EXPECT_GT(sl.trials, 0u);
    const PartitioningFunction ms = max_sum_function();
    expect_witness(ms, check_mst_consistency(ms));
}

TEST(MctConsistency, MaxSumPassesForTwoClusters) {
    const PartitioningFunction f = restricted(max_sum_function(), Domain{7, 2});
    const PropertyReport report = check_mct_consistency(f);
    EXPECT_EQ(report.verdict, Verdict::SatisfiedOnTrials);
    EXPECT_GT(report.trials, 100u);
}

TEST(MctConsistency, SingleLinkageFails) {
    const PartitioningFunction f = single_linkage_function();
    expect_witness(f, check_mct_consistency(f));
}

TEST(MctConsistency, GreedyMaxSumFailsBeyondTwoClusters) {
    // the greedy peeling and the cut-tree k-cut part ways once k >= 3
    const PartitioningFunction f = max_sum_function();
    const PropertyReport report = check_mct_consistency(f);
    expect_witness(f, report);
    EXPECT_GE(report.counterexample->k, 3u);
}

TEST(Reports, DeterministicForFixedSeed) {
    const auto a = check_consistency(mct_cuts_member(family_permutation()), 100, 99);
    const auto b = check_consistency(mct_cuts_member(family_permutation()), 100, 99);
    EXPECT_EQ(dump_json(to_json(a)), dump_json(to_json(b)));
}

TEST(Revalidate, RejectsTamperedWitness) {
    const PartitioningFunction f = mct_cuts_member(family_permutation());
    PropertyReport report = check_consistency(f, kTrials);
    ASSERT_TRUE(revalidate(f, report));
    report.counterexample->actual = report.counterexample->expected;
    EXPECT_FALSE(revalidate(f, report));
    report.counterexample.reset();
    EXPECT_FALSE(revalidate(f, report));
}

TEST(SwapLemma, OuterPairOfSmallTriangle) {
    const Partitioning gamma = fixtures::parts(3, {{0, 1}, {2}});
    const SimilarityInstance s = fixtures::t3();
    const SimilarityInstance swapped = swap_lemma_apply(s, 1, gamma);
    const auto order = canonical_order(swapped);
    EXPECT_EQ(order[0].u, 0u);
    EXPECT_EQ(order[0].v, 1u);
    EXPECT_EQ(order[1].u, 1u);
    EXPECT_EQ(order[1].v, 2u);
    EXPECT_EQ(order[2].u, 0u);
    EXPECT_EQ(order[2].v, 2u);
    EXPECT_DOUBLE_EQ(swapped.weight(0, 2), 0.5);
    EXPECT_TRUE(is_gamma_transform(s, swapped, gamma));
    EXPECT_TRUE(single_linkage(swapped, 2) == single_linkage(s, 2));
}

TEST(SwapLemma, InnerPairIsRaised) {
    const Partitioning gamma = Partitioning::single_block(3);
    const SimilarityInstance swapped = swap_lemma_apply(fixtures::t3(), 0, gamma);
    EXPECT_DOUBLE_EQ(swapped.weight(0, 2), 6.0);
    EXPECT_EQ(canonical_order(swapped)[0].v, 2u);
    EXPECT_TRUE(is_gamma_transform(fixtures::t3(), swapped, gamma));
}

TEST(SwapLemma, TwiceRestoresPairSequence) {
    for (std::uint64_t t = 0; t < 50; ++t) {
        Rng rng = Rng::stream(61, t);
        const SimilarityInstance s = random_instance(6, rng);
        const Partitioning gamma = single_linkage(s, 3);
        const auto order = canonical_order(s);
        for (std::size_t p = 0; p + 1 < order.size(); ++p) {
            if (classify_edge(order[p], gamma) != classify_edge(order[p + 1], gamma)) continue;
            const auto back = canonical_order(swap_lemma_apply(swap_lemma_apply(s, p, gamma), p, gamma));
            for (std::size_t i = 0; i < order.size(); ++i) {
                EXPECT_EQ(back[i].u, order[i].u);
                EXPECT_EQ(back[i].v, order[i].v);
            }
        }
    }
}

TEST(SwapLemma, Preconditions) {
    const Partitioning gamma = fixtures::parts(3, {{0, 1}, {2}});
    try {
        swap_lemma_apply(fixtures::t3(), 0, gamma);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Precondition);
    }
    EXPECT_THROW(swap_lemma_apply(fixtures::t3(), 2, gamma), Error);
    // (1,2) cannot rise above (0,2) without also passing the tied (0,1)
    const SimilarityInstance tied(3, {2.0, 2.0, 1.0});
    EXPECT_THROW(swap_lemma_apply(tied, 1, Partitioning::single_block(3)), Error);
}

TEST(UniquenessChain, MaxSumOnSmallTriangle) {
    const ChainTrace trace = uniqueness_chain(max_sum_function(), fixtures::t3(), 2, TreeKind::MCT);
    ASSERT_EQ(trace.steps.size(), 5u);
    for (const ChainStep& step : trace.steps) {
        EXPECT_EQ(step.output.to_string(), "{{0,1},{2}}") << step.label;
    }
    EXPECT_TRUE(trace.complete());
}

TEST(UniquenessChain, SingleLinkageOnPath) {
    const ChainTrace trace = uniqueness_chain(single_linkage_function(), fixtures::p4(), 2, TreeKind::MST);
    for (const ChainStep& step : trace.steps) {
        EXPECT_EQ(step.output.to_string(), "{{0,1,2},{3}}") << step.label;
    }
    EXPECT_TRUE(trace.complete());
}

TEST(UniquenessChain, IntermediateStepsAreTransformations) {
    for (std::uint64_t t = 0; t < 40; ++t) {
        const SimilarityInstance s = fixtures::random(7, 62, t);
        for (TreeKind mode : {TreeKind::MST, TreeKind::MCT}) {
            const ChainTrace trace = uniqueness_chain(single_linkage_function(), s, 2, mode);
            EXPECT_TRUE(trace.s3_is_gamma_transform);
            EXPECT_TRUE(trace.s4_is_gamma_transform);
            EXPECT_TRUE(trace.s5_is_gamma_transform);
            EXPECT_TRUE(trace.reorder_matches_target);
            EXPECT_LT(trace.steps[1].instance.max_weight(), s.min_weight() / 2.0);
        }
    }
}

TEST(UniquenessChain, ConstantFailsTheWitnessStep) {
    const ChainTrace trace =
        uniqueness_chain(constant_partitioner(), fixtures::random(6, 63, 0), 2, TreeKind::MCT);
    EXPECT_FALSE(trace.witness_attained);
    EXPECT_FALSE(trace.complete());
    EXPECT_FALSE(trace.issues.empty());
}

TEST(VerdictGrid, PatternAndWitnesses) {
    const std::vector<GridCell> cells = table1_grid();
    ASSERT_EQ(cells.size(), 20u);
    for (const GridCell& cell : cells) {
        EXPECT_TRUE(cell.revalidated) << cell.report.function_name << " " << to_string(cell.report.property);
        EXPECT_EQ(cell.report.verdict, cell.expected)
            << cell.report.function_name << " " << to_string(cell.report.property);
    }
}
