#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lacr/graph.hpp"
#include "lacr/graph_io.hpp"
#include "lacr/ground_truth.hpp"
#include "support/oracles.hpp"

using namespace lacr;

namespace {

const char* kGroundTruthDir = LACR_REPO_ROOT "/data/ground_truth";

CausalGraph collider_graph() {
    // B -> A <- C
    return CausalGraph::from_named_edges({"A", "B", "C"}, {{"B", "A"}, {"C", "A"}});
}

CausalGraph chain_graph() {
    // B -> A -> C
    return CausalGraph::from_named_edges({"A", "B", "C"}, {{"B", "A"}, {"A", "C"}});
}

CausalGraph fork_graph() {
    // B <- A -> C
    return CausalGraph::from_named_edges({"A", "B", "C"}, {{"A", "B"}, {"A", "C"}});
}

}  // namespace

TEST_CASE("graph construction validates") {
    CHECK_THROWS_AS(CausalGraph({"A", "A"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(CausalGraph({"A", "B"}, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(CausalGraph({"A", "B"}, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(CausalGraph({"A", "B", "C"}, {{0, 1}, {1, 2}, {2, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CausalGraph({"A", "B"}, {{0, 5}}), std::out_of_range);

    const CausalGraph g = chain_graph();
    CHECK(g.has_directed_edge(1, 0));
    CHECK_FALSE(g.has_directed_edge(0, 1));
    CHECK(g.adjacent(0, 1));
    CHECK(g.index_of("C") == 2);
    CHECK_THROWS_AS(g.index_of("missing"), std::out_of_range);
}

TEST_CASE("acyclicity holds under random edge insertion") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const CausalGraph g = testing::random_dag(6, 0.4, seed);
        // Any descendant -> ancestor insertion is a cycle and must throw.
        for (int v = 0; v < 6; ++v) {
            for (int d : g.descendants(v)) {
                CHECK_THROWS_AS(g.with_edge(d, v), std::invalid_argument);
            }
        }
        // Edges between unrelated nodes extend the DAG.
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                if (a == b || g.adjacent(a, b)) continue;
                if (g.descendants(a).count(b) || g.descendants(b).count(a)) continue;
                CHECK_NOTHROW(g.with_edge(a, b));
            }
        }
    }
}

TEST_CASE("collider detection on the three-node motifs") {
    const CausalGraph collider = collider_graph();
    const Path path(collider, {collider.index_of("B"), collider.index_of("A"),
                               collider.index_of("C")});
    CHECK(is_collider(collider, path, 1));

    const CausalGraph chain = chain_graph();
    const Path chain_path(chain, {chain.index_of("B"), chain.index_of("A"), chain.index_of("C")});
    CHECK_FALSE(is_collider(chain, chain_path, 1));

    const CausalGraph fork = fork_graph();
    const Path fork_path(fork, {fork.index_of("B"), fork.index_of("A"), fork.index_of("C")});
    CHECK_FALSE(is_collider(fork, fork_path, 1));

    CHECK_THROWS_AS(is_collider(collider, path, 0), std::invalid_argument);
    CHECK_THROWS_AS(is_collider(collider, path, 2), std::invalid_argument);
}

TEST_CASE("blocking per the d-separation definition") {
    const CausalGraph collider = collider_graph();
    const int a = collider.index_of("A");
    const Path path(collider, {collider.index_of("B"), a, collider.index_of("C")});
    CHECK(blocks(collider, path, {}));            // unconditioned collider blocks
    CHECK_FALSE(blocks(collider, path, {{a}}));   // conditioning the collider unblocks

    const CausalGraph chain = chain_graph();
    const int mid = chain.index_of("A");
    const Path chain_path(chain, {chain.index_of("B"), mid, chain.index_of("C")});
    CHECK(blocks(chain, chain_path, {{mid}}));    // conditioned chain blocks
    CHECK_FALSE(blocks(chain, chain_path, {}));
}

TEST_CASE("collider descendants in z unblock the path") {
    // B -> A <- C, A -> D: conditioning on D opens the collider path.
    const CausalGraph g = CausalGraph::from_named_edges(
        {"A", "B", "C", "D"}, {{"B", "A"}, {"C", "A"}, {"A", "D"}});
    const Path path(g, {g.index_of("B"), g.index_of("A"), g.index_of("C")});
    CHECK(blocks(g, path, {}));
    CHECK_FALSE(blocks(g, path, {{g.index_of("D")}}));
}

TEST_CASE("d-separation on ASIA: smoking vs tuberculosis") {
    GroundTruthRegistry registry(kGroundTruthDir);
    const CausalGraph asia = registry.load("ASIA", "original").dag();
    const int smoking = asia.index_of("Smoking");
    const int tb = asia.index_of("TB");
    // Both connecting paths hold a collider, so the empty set separates.
    CHECK(simple_paths(asia, smoking, tb).size() == 2);
    CHECK(d_separates(asia, smoking, tb, {}));
    // Conditioning on the common effect opens them.
    CHECK_FALSE(d_separates(asia, smoking, tb, {{asia.index_of("Either")}}));
}

TEST_CASE("no path means d-separated for every conditioning set") {
    const CausalGraph g = CausalGraph::from_named_edges({"A", "B", "C"}, {{"A", "B"}});
    const int a = g.index_of("A");
    const int c = g.index_of("C");
    for (const auto& z : testing::conditioning_sets(3, a, c, 1)) {
        CHECK(d_separates(g, a, c, ConditioningSet(z)));
    }
}

TEST_CASE("d-separation agrees with the moral-graph oracle on random DAGs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const CausalGraph g = testing::random_dag(6, 0.4, seed + 1000);
        for (int i = 0; i < 6; ++i) {
            for (int j = i + 1; j < 6; ++j) {
                for (const auto& z : testing::conditioning_sets(6, i, j, 4)) {
                    const bool expected = testing::moral_graph_d_separates(g, i, j, z);
                    INFO("seed ", seed, " pair (", i, ", ", j, ")");
                    CHECK(d_separates(g, i, j, ConditioningSet(z)) == expected);
                }
            }
        }
    }
}

TEST_CASE("d-separation is symmetric in its endpoints") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const CausalGraph g = testing::random_dag(6, 0.5, seed + 7);
        Rng rng(seed);
        for (int draw = 0; draw < 30; ++draw) {
            const int i = rng.next_index(6);
            int j = rng.next_index(6);
            if (i == j) continue;
            std::set<int> z;
            for (int v = 0; v < 6; ++v)
                if (v != i && v != j && rng.next_double() < 0.3) z.insert(v);
            CHECK(d_separates(g, i, j, ConditioningSet(z)) ==
                  d_separates(g, j, i, ConditioningSet(z)));
        }
    }
}

TEST_CASE("d-separation rejects malformed queries") {
    const CausalGraph g = chain_graph();
    CHECK_THROWS_AS(d_separates(g, 0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(d_separates(g, 0, 1, {{0}}), std::invalid_argument);
    CHECK_THROWS_AS(d_separates(g, 0, 1, {{9}}), std::out_of_range);
}

TEST_CASE("path enumeration matches the subset-DP count") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const CausalGraph g = testing::random_dag(7, 0.45, seed + 99);
        for (int i = 0; i < 7; ++i) {
            for (int j = i + 1; j < 7; ++j) {
                CHECK(static_cast<long long>(simple_paths(g, i, j).size()) ==
                      testing::count_simple_paths_dp(g, i, j));
            }
        }
    }
}

TEST_CASE("complete skeleton sizes") {
    CHECK(Skeleton::complete({"A", "B", "C"}).edge_count() == 3);
    std::vector<std::string> eight;
    for (int v = 1; v <= 8; ++v) eight.push_back("V" + std::to_string(v));
    CHECK(Skeleton::complete(eight).edge_count() == 28);
    std::vector<std::string> eleven;
    for (int v = 1; v <= 11; ++v) eleven.push_back("V" + std::to_string(v));
    CHECK(Skeleton::complete(eleven).edge_count() == 55);
    CHECK_THROWS_AS(Skeleton::complete({"A"}), std::invalid_argument);
    CHECK_THROWS_AS(Skeleton::complete({"A", "A"}), std::invalid_argument);
}

TEST_CASE("ground truth registry ships the drawn graphs") {
    GroundTruthRegistry registry(kGroundTruthDir);

    const GroundTruthEntry asia = registry.load("ASIA", "original");
    CHECK(asia.variables.size() == 8);
    CHECK(asia.arrows.size() == 8);
    CHECK(asia.has_dag());
    const CausalGraph asia_dag = asia.dag();
    CHECK(asia_dag.has_directed_edge(asia_dag.index_of("Smoking"),
                                     asia_dag.index_of("Lung Cancer")));
    CHECK(asia.domain_string() == "medical, biology, and social science");

    const GroundTruthEntry refined = registry.load("ASIA", "refined");
    CHECK(refined.arrows.size() == 10);
    const CausalGraph refined_dag = refined.dag();
    CHECK(refined_dag.has_directed_edge(refined_dag.index_of("Smoking"),
                                        refined_dag.index_of("TB")));
    CHECK(refined_dag.has_directed_edge(refined_dag.index_of("Bronchitis"),
                                        refined_dag.index_of("X-ray")));
    for (const auto& arrow : asia.arrows) {
        CHECK(refined_dag.has_directed_edge(arrow.first, arrow.second));
    }

    const GroundTruthEntry coronary = registry.load("CORONARY", "original");
    CHECK_FALSE(coronary.directed);
    CHECK(coronary.variables.size() == 6);
    CHECK(coronary.skeleton.edge_count() == 9);
    CHECK_THROWS_AS(coronary.dag(), std::logic_error);
    CHECK(coronary.domain_string() == "medical and biological");

    const GroundTruthEntry coronary_refined = registry.load("CORONARY", "refined");
    CHECK(coronary_refined.skeleton.edge_count() == 9);
    CHECK(coronary_refined.skeleton.has_edge(coronary_refined.index_of("Pressure"),
                                             coronary_refined.index_of("Family")));
    CHECK_FALSE(coronary_refined.skeleton.has_edge(coronary_refined.index_of("P. work"),
                                                   coronary_refined.index_of("Family")));

    const GroundTruthEntry sachs = registry.load("SACHS", "original");
    CHECK(sachs.variables.size() == 11);
    CHECK(sachs.arrows.size() == 17);          // drawn arrows, reciprocal pair included
    CHECK(sachs.skeleton.edge_count() == 16);  // collapsed undirected form
    CHECK(sachs.cyclic_pairs.size() == 1);
    CHECK(sachs.cyclic_pairs.count(
              make_edge(sachs.index_of("PIP2"), sachs.index_of("PIP3"))) == 1);
    CHECK_FALSE(sachs.has_dag());

    CHECK_THROWS_AS(registry.load("ASIA", "futuristic"), std::out_of_range);
    CHECK_THROWS_AS(registry.load("NOPE", "original"), std::out_of_range);
}

TEST_CASE("DOT export shapes") {
    const Skeleton empty({"A", "B"});
    const std::string dot = to_dot(empty);
    CHECK(dot.find("\"A\";") != std::string::npos);
    CHECK(dot.find("--") == std::string::npos);

    const std::string collider_dot = to_dot(collider_graph());
    CHECK(collider_dot.find("\"B\" -> \"A\";") != std::string::npos);
    CHECK(collider_dot.find("\"C\" -> \"A\";") != std::string::npos);
}

TEST_CASE("JSON round-trips a directed graph and a skeleton") {
    GroundTruthRegistry registry(kGroundTruthDir);
    const CausalGraph asia = registry.load("ASIA", "original").dag();
    const auto imported = import_graph(export_graph(asia, ExportFormat::kJson));
    CHECK(std::get<CausalGraph>(imported) == asia);

    const Skeleton coronary = registry.load("CORONARY", "original").skeleton;
    const auto imported_skeleton = import_graph(export_graph(coronary, ExportFormat::kJson));
    CHECK(std::get<Skeleton>(imported_skeleton) == coronary);
}

TEST_CASE("skeleton canonical storage") {
    Skeleton s({"X", "Y", "Z"});
    s = s.with_edge(2, 0);
    CHECK(s.has_edge(0, 2));
    CHECK(s.edges().count({0, 2}) == 1);
    CHECK(s.neighbors(0) == std::vector<int>{2});
    CHECK_THROWS_AS(s.with_edge(1, 1), std::invalid_argument);
}
