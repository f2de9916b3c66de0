#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcluster/qcluster.hpp"

namespace {

using namespace qcluster;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;

struct RunConfig {
    std::string algo = "sl";
    std::string kind = "mst";
    std::string function;
    std::string which;
    std::size_t k = 0;
    std::string input;
    std::string format = "edges";
    std::string output;
    std::string seed;
    std::size_t trials = kDefaultAxiomTrials;
    std::size_t tree_trials = kDefaultTreeTrials;
    bool grid = false;
};

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
    try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(text, &used, 0);
        if (used == text.size()) {
            return value;
        }
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Input, "invalid seed '" + text + "' in " + origin);
}

std::uint64_t resolve_seed(const RunConfig& config) {
    if (!config.seed.empty()) {
        return parse_seed(config.seed, "--seed");
    }
    if (const char* env = std::getenv("QCLUSTER_SEED"); env != nullptr && *env != '\0') {
        return parse_seed(env, "QCLUSTER_SEED");
    }
    return kDefaultSeed;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            detail::require(file_.good(), ErrorKind::Input, "cannot write '" + path + "'");
        }
    }
    void line(const std::string& text) { (file_.is_open() ? file_ : std::cout) << text << '\n'; }

  private:
    std::ofstream file_;
};

int run_cluster(const RunConfig& config, Output& out) {
    Partitioning result = Partitioning::single_block(1);
    std::size_t n = 0;
    if (config.algo == "qcluster-mdl") {
        const GaussianModel model(load_covariance(config.input));
        n = model.n();
        detail::require(n <= kMaxGeneralTreePoints, ErrorKind::OracleSize,
                        "qcluster-mdl is limited to n <= " + std::to_string(kMaxGeneralTreePoints));
        result = q_cluster(gaussian_mi_oracle(model), n, config.k);
    } else {
        const SimilarityInstance s = load_instance(config.input, parse_format(config.format));
        n = s.n();
        if (config.algo == "sl") {
            result = single_linkage(s, config.k);
        } else if (config.algo == "maxsum") {
            result = max_sum_approx(s, config.k);
        } else {
            result = max_sum_exact(s, config.k);
        }
    }
    out.line(dump_json(Json{{"algorithm", config.algo}, {"clusters", to_json(result)}, {"k", config.k}, {"n", n}}));
    return kExitOk;
}

int run_tree(const RunConfig& config, Output& out) {
    const SimilarityInstance s = load_instance(config.input, parse_format(config.format));
    const WeightedTree tree = config.kind == "mst" ? mst(s) : gomory_hu_cut_tree(s);
    out.line(dump_json(Json{{"edges", to_json(tree.edges())}, {"kind", config.kind}}));
    return kExitOk;
}

const std::vector<std::string> kFunctionNames{"sl",       "maxsum",   "maxsum-exact", "mst-cuts",
                                              "mct-cuts", "constant", "threshold"};

PartitioningFunction function_by_name(const std::string& name) {
    if (name == "sl") return single_linkage_function();
    if (name == "maxsum") return max_sum_function();
    if (name == "maxsum-exact") return max_sum_exact_function();
    if (name == "mst-cuts") return mst_cuts_member(family_permutation());
    if (name == "mct-cuts") return mct_cuts_member(family_permutation());
    if (name == "constant") return constant_partitioner();
    return threshold_partitioner();
}

/// Expected verdicts for the named function; properties without a known
/// expectation are reported but never counted as mismatches.
std::map<Property, Verdict> expected_verdicts(const std::string& name) {
    std::map<Property, Verdict> expected;
    expected[Property::ScaleInvariance] = name == "threshold" ? Verdict::Violated : Verdict::SatisfiedOnTrials;
    for (const GridRow& row : table1_rows()) {
        if (row.function.name == name) {
            for (std::size_t c = 0; c < kGridProperties.size(); ++c) {
                expected[kGridProperties[c]] = row.expected[c];
            }
        }
    }
    return expected;
}

int run_axioms(const RunConfig& config, Output& out) {
    GridConfig grid{config.trials, config.tree_trials, resolve_seed(config), Domain{5, 2}};
    if (config.grid) {
        std::size_t matches = 0;
        const std::vector<GridCell> cells = table1_grid(grid);
        for (const GridCell& cell : cells) {
            out.line(dump_json(to_json(cell.report)));
            matches += cell.matches() ? 1 : 0;
        }
        out.line("grid matches Table 1: " + std::to_string(matches) + "/" + std::to_string(cells.size()));
        return matches == cells.size() ? kExitOk : kExitMismatch;
    }
    const PartitioningFunction f = function_by_name(config.function);
    const auto expected = expected_verdicts(config.function);
    bool mismatch = false;
    for (Property property : {Property::ScaleInvariance, Property::KRichness, Property::Consistency,
                              Property::MSTConsistency, Property::MCTConsistency}) {
        const PropertyReport report = run_property(f, property, grid);
        out.line(dump_json(to_json(report)));
        const auto it = expected.find(property);
        if ((it != expected.end() && it->second != report.verdict) || !revalidate(f, report)) {
            mismatch = true;
        }
    }
    return mismatch ? kExitMismatch : kExitOk;
}

int run_oracle(const RunConfig& config, Output& out) {
    const SimilarityInstance s = load_instance(config.input, parse_format(config.format));
    if (config.which == "minkcut") {
        const KCutResult cut = brute_force_min_kcut(s, config.k);
        out.line(dump_json(Json{{"clusters", to_json(cut.partition)}, {"k", config.k}, {"value", cut.value}}));
    } else if (config.which == "maxsum") {
        const Partitioning best = max_sum_exact(s, config.k);
        out.line(dump_json(Json{{"clusters", to_json(best)}, {"k", config.k}, {"value", in_block_weight(s, best)}}));
    } else if (config.which == "pairwise-cuts") {
        const Graph g(s);
        std::vector<Edge> cuts;
        for (Point a = 0; a < s.n(); ++a) {
            for (Point b = a + 1; b < s.n(); ++b) {
                cuts.push_back(Edge{a, b, brute_force_st_min_cut(g, a, b).value});
            }
        }
        out.line(dump_json(Json{{"cuts", to_json(cuts)}, {"n", s.n()}}));
    } else {
        const SetMinimum best = queyranne_minimize(cut_oracle(s), s.n());
        Json members = Json::array();
        for (Point p : subset_members(best.set)) {
            members.push_back(p + 1);
        }
        out.line(dump_json(Json{{"set", members}, {"value", best.value}}));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-clustering toolkit: clusterers, cut trees and axiom checks"};
    app.require_subcommand(1);
    RunConfig config;

    const auto add_input = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--input", config.input, "instance file")->required();
        if (with_format) {
            cmd->add_option("--format", config.format, "edges (\"i j w\" lines) or matrix (CSV)")
                ->check(CLI::IsMember({"edges", "matrix"}));
        }
        cmd->add_option("--output", config.output, "write to a file instead of standard output");
    };

    CLI::App* cluster = app.add_subcommand("cluster", "partition an instance into k clusters");
    cluster->add_option("--algo", config.algo, "clustering algorithm")
        ->check(CLI::IsMember({"sl", "maxsum", "maxsum-exact", "qcluster-mdl"}));
    cluster->add_option("--k", config.k, "number of clusters")->required();
    add_input(cluster, true);

    CLI::App* tree = app.add_subcommand("tree", "print the maximum spanning tree or minimum cut tree");
    tree->add_option("--kind", config.kind, "tree kind")->check(CLI::IsMember({"mst", "mct"}));
    add_input(tree, true);

    CLI::App* axioms = app.add_subcommand("axioms", "check clustering properties");
    axioms->add_option("--function", config.function, "partitioning function")
        ->check(CLI::IsMember(kFunctionNames));
    axioms->add_flag("--grid", config.grid, "evaluate the full verdict grid");
    axioms->add_option("--trials", config.trials, "trials per axiom check")->check(CLI::PositiveNumber);
    axioms->add_option("--tree-trials", config.tree_trials, "trials per tree-consistency check")
        ->check(CLI::PositiveNumber);
    axioms->add_option("--seed", config.seed, "master seed (default 0x5EED or QCLUSTER_SEED)");
    axioms->add_option("--output", config.output, "write to a file instead of standard output");

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive reference computations");
    oracle->add_option("--which", config.which, "oracle")
        ->required()
        ->check(CLI::IsMember({"minkcut", "maxsum", "pairwise-cuts", "queyranne"}));
    oracle->add_option("--k", config.k, "number of clusters (minkcut, maxsum)");
    add_input(oracle, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (axioms->parsed() && !config.grid && config.function.empty()) {
            throw Error(ErrorKind::Input, "axioms needs --function or --grid");
        }
        if (oracle->parsed() && (config.which == "minkcut" || config.which == "maxsum") && config.k == 0) {
            throw Error(ErrorKind::Input, "--which " + config.which + " needs --k");
        }
        Output out(config.output);
        if (cluster->parsed()) return run_cluster(config, out);
        if (tree->parsed()) return run_tree(config, out);
        if (axioms->parsed()) return run_axioms(config, out);
        return run_oracle(config, out);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInput;
    }
}
