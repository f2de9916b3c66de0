#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace qcluster;

namespace {

std::string input_error(const std::string& text, InputFormat format) {
    std::istringstream in(text);
    try {
        parse_instance(in, format);
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Input);
        return err.what();
    }
    ADD_FAILURE() << "accepted: " << text;
    return {};
}

}  // namespace

TEST(EdgesFormat, ParsesTriangle) {
    std::istringstream in("1 2 3\n1 3 2\n2 3 1\n");
    EXPECT_TRUE(parse_edges(in) == fixtures::t3());
}

TEST(EdgesFormat, OrderCommentsAndBlankLinesDoNotMatter) {
    std::istringstream in("# triangle\n2 3 1\n\n1 3 2.0\n  1\t2  3e0 \n");
    EXPECT_TRUE(parse_edges(in) == fixtures::t3());
}

TEST(EdgesFormat, ReportsErrorsWithLineNumbers) {
    EXPECT_EQ(input_error("1 2 0\n", InputFormat::Edges), "non-positive weight at line 1");
    EXPECT_EQ(input_error("1 2 3\n1 3 -2\n", InputFormat::Edges), "non-positive weight at line 2");
    EXPECT_EQ(input_error("1 2 3\n1 3 x\n", InputFormat::Edges), "parse failure at line 2");
    EXPECT_EQ(input_error("1 2\n", InputFormat::Edges), "parse failure (expected 'i j w') at line 1");
    EXPECT_EQ(input_error("2 1 3\n", InputFormat::Edges), "pair must satisfy 1 <= i < j at line 1");
    EXPECT_EQ(input_error("0 1 3\n", InputFormat::Edges), "pair must satisfy 1 <= i < j at line 1");
    EXPECT_EQ(input_error("1 2 3\n1 2 4\n", InputFormat::Edges), "duplicate pair at line 2");
    EXPECT_EQ(input_error("1 2 3\n2 3 1\n", InputFormat::Edges), "missing pair 1 3");
    EXPECT_EQ(input_error("", InputFormat::Edges), "input has no pairs");
    EXPECT_EQ(input_error("1 2 inf\n", InputFormat::Edges), "parse failure at line 1");
}

TEST(MatrixFormat, ParsesTriangle) {
    std::istringstream in("0,3,2\n3,0,1\n2,1,0\n");
    EXPECT_TRUE(parse_matrix(in) == fixtures::t3());
}

TEST(MatrixFormat, IgnoresDiagonalAndWhitespace) {
    std::istringstream in(" 9 , 3 , 2\n3,-4,1\n2, 1 ,0\n");
    EXPECT_TRUE(parse_matrix(in) == fixtures::t3());
}

TEST(MatrixFormat, ReportsErrorsWithLineNumbers) {
    EXPECT_EQ(input_error("0,3,2\n3,0,1\n2,1.5,0\n", InputFormat::Matrix), "asymmetric matrix (column 3) at line 2");
    EXPECT_EQ(input_error("0,0\n0,0\n", InputFormat::Matrix), "non-positive weight at line 1");
    EXPECT_EQ(input_error("0,3\n3\n", InputFormat::Matrix), "expected 2 columns, found 1 at line 2");
    EXPECT_EQ(input_error("0,a\n3,0\n", InputFormat::Matrix), "parse failure at line 1");
    EXPECT_EQ(input_error("0\n", InputFormat::Matrix), "matrix needs at least two rows");
}

TEST(Files, MissingFileIsAnInputError) {
    try {
        load_instance("/nonexistent/instance.txt", InputFormat::Edges);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Input);
    }
    EXPECT_THROW(parse_format("json"), Error);
    EXPECT_EQ(parse_format("matrix"), InputFormat::Matrix);
}

TEST(Covariance, ParsesGrid) {
    std::istringstream in("1,0.5\n0.5,1\n");
    const Eigen::MatrixXd cov = parse_covariance(in);
    EXPECT_EQ(cov.rows(), 2);
    EXPECT_DOUBLE_EQ(cov(0, 1), 0.5);
}

TEST(Json, SortedKeysAndFixedDecimals) {
    const Json doc{{"zeta", 1}, {"alpha", 0.1}, {"mid", Json::array({1.5, "x", nullptr, true})}};
    EXPECT_EQ(dump_json(doc), R"({"alpha":0.100000000,"mid":[1.500000000,"x",null,true],"zeta":1})");
}

TEST(Json, PartitionsAreOneBased) {
    EXPECT_EQ(dump_json(to_json(fixtures::parts(3, {{0, 1}, {2}}))), "[[1,2],[3]]");
    EXPECT_EQ(dump_json(to_json(mst(fixtures::t3()).edges())),
              R"([{"u":1,"v":3,"w":2.000000000},{"u":1,"v":2,"w":3.000000000}])");
}

TEST(Json, ReportShape) {
    const PropertyReport report = check_k_richness(constant_partitioner(), 4, 2);
    const std::string text = dump_json(to_json(report));
    EXPECT_EQ(text.rfind(R"({"counterexample":{"actual":[[1,2,3],[4]])", 0), 0u) << text;
    EXPECT_NE(text.find(R"("function":"constant","property":"kRichness","trials":7,"verdict":"Violated")"),
              std::string::npos);
}

TEST(Json, PartitionRoundTrip) {
    const Partitioning p = single_linkage(fixtures::random(9, 71, 0), 4);
    const Json parsed = Json::parse(dump_json(to_json(p)));
    std::vector<std::vector<Point>> blocks;
    for (const auto& block : parsed) {
        std::vector<Point> members;
        for (const auto& id : block) {
            members.push_back(id.get<Point>() - 1);
        }
        blocks.push_back(members);
    }
    EXPECT_TRUE(Partitioning(9, blocks) == p);
}
