#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace qcluster;

TEST(SingleLinkage, ExampleInstances) {
    EXPECT_EQ(single_linkage(fixtures::t3(), 2).to_string(), "{{0,1},{2}}");
    EXPECT_EQ(single_linkage(fixtures::p4(), 3).to_string(), "{{0,1},{2},{3}}");
    EXPECT_EQ(single_linkage(fixtures::p4(), 2).to_string(), "{{0,1,2},{3}}");
    EXPECT_TRUE(single_linkage(fixtures::p4(), 1) == Partitioning::single_block(4));
    EXPECT_TRUE(single_linkage(fixtures::p4(), 4) == Partitioning::singletons(4));
}

TEST(SingleLinkage, RejectsOutOfRangeK) {
    for (std::size_t k : {std::size_t{0}, std::size_t{5}}) {
        try {
            single_linkage(fixtures::p4(), k);
            FAIL();
        } catch (const Error& err) {
            EXPECT_EQ(err.kind(), ErrorKind::InvalidK);
        }
    }
    EXPECT_THROW(max_sum_approx(fixtures::p4(), 0), Error);
    EXPECT_THROW(max_sum_exact(fixtures::p4(), 5), Error);
}

TEST(SingleLinkage, BothFormsAgreeWithThresholdComponents) {
    for (std::uint64_t t = 0; t < 100; ++t) {
        const std::size_t n = 2 + t % 10;
        const SimilarityInstance s = fixtures::random(n, 51, t);
        for (std::size_t k = 1; k <= n; ++k) {
            const Partitioning agglomerative = single_linkage(s, k);
            EXPECT_TRUE(agglomerative == single_linkage_via_mst(s, k));
            EXPECT_TRUE(oracle::same_partition(agglomerative.labels(), oracle::threshold_components(s, k)));
            EXPECT_EQ(agglomerative.k(), k);
        }
    }
}

TEST(SingleLinkage, InvariantUnderMonotoneMaps) {
    for (std::uint64_t t = 0; t < 50; ++t) {
        const SimilarityInstance s = fixtures::random(8, 52, t);
        const SimilarityInstance mapped = transform_weights(s, [](double w) { return std::log1p(5.0 * w); });
        for (std::size_t k = 1; k <= 8; ++k) {
            EXPECT_TRUE(single_linkage(s, k) == single_linkage(mapped, k));
        }
    }
}

TEST(MaxSumApprox, ExampleInstances) {
    EXPECT_EQ(max_sum_approx(fixtures::t3(), 2).to_string(), "{{0,1},{2}}");
    EXPECT_EQ(max_sum_approx(fixtures::p4(), 2).to_string(), "{{0,1,2},{3}}");
    EXPECT_TRUE(max_sum_approx(fixtures::p4(), 1) == Partitioning::single_block(4));
    EXPECT_TRUE(max_sum_approx(fixtures::p4(), 4) == Partitioning::singletons(4));
}

TEST(MaxSumApprox, TwoClustersIsTheGlobalMinimumCut) {
    for (std::uint64_t t = 0; t < 100; ++t) {
        const std::size_t n = 2 + t % 9;
        const SimilarityInstance s = fixtures::random(n, 53, t);
        const Partitioning two = max_sum_approx(s, 2);
        EXPECT_NEAR(crossing_weight(s, two), oracle::global_min_cut(s), 1e-9);
        EXPECT_TRUE(two == tree_min_kcut(gomory_hu_cut_tree(s), 2).partition);
        EXPECT_TRUE(two == max_sum_exact(s, 2));
    }
}

TEST(MaxSumApprox, WithinApproximationFactor) {
    for (std::uint64_t t = 0; t < 80; ++t) {
        const std::size_t n = 4 + t % 5;
        const SimilarityInstance s = fixtures::random(n, 54, t);
        for (std::size_t k = 2; k <= std::min<std::size_t>(4, n); ++k) {
            const double optimum = oracle::min_kcut(s, k);
            const double removed = crossing_weight(s, max_sum_approx(s, k));
            EXPECT_LE(removed, (2.0 - 2.0 / static_cast<double>(k)) * optimum + 1e-9);
            EXPECT_GE(removed, optimum - 1e-9);
        }
    }
}

TEST(MaxSumApprox, ConsistencyCanFailForFourClusters) {
    // s' below only raises the inner pair (1,4) and lowers outer pairs, yet the
    // greedy peeling changes its answer. The exact objective keeps it.
    const SimilarityInstance s(5, {0.366, 0.579, 0.860, 0.854, 0.500, 0.310, 0.958, 0.789, 0.832, 0.144});
    const SimilarityInstance moved(5, {0.244, 0.434, 0.749, 0.490, 0.278, 0.180, 1.021, 0.738, 0.560, 0.126});
    const Partitioning gamma = max_sum_approx(s, 4);
    EXPECT_EQ(gamma.to_string(), "{{0},{1,4},{2},{3}}");
    EXPECT_TRUE(is_gamma_transform(s, moved, gamma));
    EXPECT_EQ(max_sum_approx(moved, 4).to_string(), "{{0,3},{1},{2},{4}}");
    EXPECT_TRUE(max_sum_exact(s, 4) == gamma);
    EXPECT_TRUE(max_sum_exact(moved, 4) == gamma);
}

TEST(MaxSumExact, MaximizesInBlockWeight) {
    for (std::uint64_t t = 0; t < 30; ++t) {
        const std::size_t n = 3 + t % 5;
        const SimilarityInstance s = fixtures::random(n, 55, t);
        for (std::size_t k = 1; k <= n; ++k) {
            const Partitioning best = max_sum_exact(s, k);
            EXPECT_NEAR(s.total_weight() - in_block_weight(s, best), oracle::min_kcut(s, k), 1e-9);
        }
    }
    EXPECT_THROW(max_sum_exact(fixtures::random(13, 55, 0), 2), Error);
}

TEST(QCluster, CutObjectiveMatchesMaxSumForTwoClusters) {
    for (std::uint64_t t = 0; t < 30; ++t) {
        const std::size_t n = 3 + t % 6;
        const SimilarityInstance s = fixtures::random(n, 56, t);
        EXPECT_TRUE(q_cluster(cut_oracle(s), n, 2) == max_sum_approx(s, 2));
        for (std::size_t k = 1; k <= n; ++k) {
            EXPECT_EQ(q_cluster(cut_oracle(s), n, k).k(), k);
        }
    }
}

TEST(QCluster, GaussianBlocksAreRecovered) {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(6, 6);
    for (int a : {0, 2, 4}) {
        for (int b : {0, 2, 4}) {
            if (a != b) cov(a, b) = 0.7;
        }
    }
    cov(1, 3) = cov(3, 1) = 0.6;
    cov(1, 5) = cov(5, 1) = 0.05;
    const GaussianModel model(cov);
    EXPECT_EQ(q_cluster(gaussian_mi_oracle(model), 6, 3).to_string(), "{{0,2,4},{1,3},{5}}");
    EXPECT_THROW(q_cluster(gaussian_mi_oracle(model), 6, 7), Error);
}

TEST(PartitionPermutation, ValidatesBijection) {
    EXPECT_THROW(PartitionPermutation(4, 2, {0, 1, 2}), Error);
    EXPECT_THROW(PartitionPermutation(4, 2, {0, 1, 2, 3, 4, 5, 5}), Error);
    EXPECT_THROW(PartitionPermutation::transposition(4, 2, 0, 7), Error);
    try {
        PartitionPermutation(3, 2, {0, 0, 1});
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::InvalidPermutation);
    }
    EXPECT_TRUE(PartitionPermutation::identity(4, 2).is_identity());
    EXPECT_FALSE(PartitionPermutation::transposition(4, 2, 0, 1).is_identity());
}

TEST(PartitionPermutation, MapsOnlyItsOwnDomain) {
    const PartitionPermutation sigma = PartitionPermutation::transposition(3, 2, 0, 1);
    EXPECT_EQ(sigma(fixtures::parts(3, {{0, 1}, {2}})).to_string(), "{{0,2},{1}}");
    EXPECT_EQ(sigma(fixtures::parts(3, {{0, 2}, {1}})).to_string(), "{{0,1},{2}}");
    EXPECT_EQ(sigma(fixtures::parts(3, {{0}, {1, 2}})).to_string(), "{{0},{1,2}}");
    const Partitioning other = fixtures::parts(4, {{0, 1}, {2, 3}});
    EXPECT_TRUE(sigma(other) == other);
}

TEST(CutsFamilies, ComposeWithPermutation) {
    const PartitionPermutation sigma = PartitionPermutation::transposition(3, 2, 0, 1);
    const PartitioningFunction mct = mct_cuts_member(sigma);
    const PartitioningFunction mstc = mst_cuts_member(sigma);
    EXPECT_EQ(mct(fixtures::t3(), 2).to_string(), "{{0,2},{1}}");
    EXPECT_EQ(mstc(fixtures::t3(), 2).to_string(), "{{0,2},{1}}");
    EXPECT_TRUE(mct.focus.has_value());
    EXPECT_TRUE(*mct.focus == (Domain{3, 2}));
    EXPECT_TRUE(mct(fixtures::p4(), 2) == max_sum_approx(fixtures::p4(), 2));

    const PartitioningFunction plain = mct_cuts_member(PartitionPermutation::identity(3, 2));
    EXPECT_FALSE(plain.focus.has_value());
    EXPECT_TRUE(plain(fixtures::t3(), 2) == max_sum_approx(fixtures::t3(), 2));
}

TEST(ConstantPartitioner, IgnoresWeights) {
    const PartitioningFunction f = constant_partitioner();
    EXPECT_TRUE(f.ignores_input);
    EXPECT_EQ(f(fixtures::random(5, 57, 0), 2).to_string(), "{{0,1,2,3},{4}}");
    EXPECT_EQ(f(fixtures::random(5, 57, 1), 3).to_string(), "{{0,1,2},{3},{4}}");
    EXPECT_TRUE(f(fixtures::p4(), 1) == Partitioning::single_block(4));
    EXPECT_TRUE(f(fixtures::p4(), 4) == Partitioning::singletons(4));
}

TEST(ThresholdPartitioner, DependsOnScale) {
    const PartitioningFunction f = threshold_partitioner(0.5);
    const SimilarityInstance s = fixtures::p4();
    EXPECT_TRUE(f(s, 2) == single_linkage(s, 2));
    EXPECT_TRUE(f(scale(s, 0.01), 2) == constant_partitioner()(s, 2));
}

TEST(PartitioningFunction, RejectsWrongShape) {
    const PartitioningFunction broken{"broken", [](const SimilarityInstance& s, std::size_t) {
                                          return Partitioning::single_block(s.n());
                                      },
                                      std::nullopt, false};
    try {
        broken(fixtures::p4(), 2);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Shape);
    }
}
