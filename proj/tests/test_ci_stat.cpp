#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "lacr/ci_test.hpp"
#include "lacr/dataset.hpp"
#include "lacr/pc.hpp"
#include "support/oracles.hpp"

using namespace lacr;

namespace {

const char* kSelectionBiasCpt = LACR_REPO_ROOT "/data/cpt/selection_bias.json";

// Dataset realizing a fixed contingency table (order-0 use).
CategoricalDataset from_table(const std::vector<std::vector<int>>& counts) {
    std::vector<std::vector<int>> rows;
    for (std::size_t a = 0; a < counts.size(); ++a)
        for (std::size_t b = 0; b < counts[a].size(); ++b)
            for (int k = 0; k < counts[a][b]; ++k)
                rows.push_back({static_cast<int>(a), static_cast<int>(b)});
    return CategoricalDataset({"X", "Y"},
                              {static_cast<int>(counts.size()),
                               static_cast<int>(counts[0].size())},
                              rows);
}

// B -> A <- C with A = B xor C: the conditional dependence is maximal.
// With fair coins every PAIR is marginally independent (xor against a fair
// coin is uniform), so the skeleton-recovery test biases the coins to keep
// the A-B and A-C margins dependent while B and C stay independent.
CategoricalDataset xor_collider(std::size_t rows, std::uint64_t seed, double bias = 0.5) {
    Rng rng(seed);
    std::vector<std::vector<int>> data;
    data.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const int b = rng.next_double() < bias ? 1 : 0;
        const int c = rng.next_double() < bias ? 1 : 0;
        data.push_back({b ^ c, b, c});
    }
    return CategoricalDataset({"A", "B", "C"}, {2, 2, 2}, std::move(data));
}

}  // namespace

TEST_CASE("order-0 G^2 equals the classical two-way test") {
    // Frozen against an independent implementation of the same table.
    const CategoricalDataset data = from_table({{10, 20}, {30, 40}});
    const CiResult result = ci_test(data, 0, 1, {}, 0.05);
    CHECK(result.statistic == doctest::Approx(0.8043486461).epsilon(1e-9));
    CHECK(result.degrees_of_freedom == 1);
    CHECK(result.p_value == doctest::Approx(0.3697963679).epsilon(1e-8));
    CHECK(result.independent);

    const CiResult pearson = pearson_ci_test(data, 0, 1, {}, 0.05);
    CHECK(pearson.statistic == doctest::Approx(0.7936507937).epsilon(1e-9));
    CHECK(pearson.p_value == doctest::Approx(0.3729984836).epsilon(1e-8));
}

TEST_CASE("stratified G^2 sums statistics and dof over non-empty strata") {
    // Z = 0 carries table [[12,5],[3,9]], Z = 1 carries [[7,2],[6,11]].
    std::vector<std::vector<int>> rows;
    const int s0[2][2] = {{12, 5}, {3, 9}};
    const int s1[2][2] = {{7, 2}, {6, 11}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            for (int k = 0; k < s0[a][b]; ++k) rows.push_back({a, b, 0});
            for (int k = 0; k < s1[a][b]; ++k) rows.push_back({a, b, 1});
        }
    const CategoricalDataset data({"X", "Y", "Z"}, {2, 2, 2}, rows);
    const CiResult result = ci_test(data, 0, 1, {2}, 0.05);
    CHECK(result.statistic == doctest::Approx(10.5093861679).epsilon(1e-9));
    CHECK(result.degrees_of_freedom == 2);
    CHECK(result.p_value == doctest::Approx(0.0052229491).epsilon(1e-7));
    CHECK_FALSE(result.independent);
}

TEST_CASE("identical columns are maximally dependent") {
    std::vector<std::vector<int>> rows;
    Rng rng(3);
    for (int r = 0; r < 400; ++r) {
        const int v = rng.next_index(2);
        rows.push_back({v, v});
    }
    const CategoricalDataset data({"X", "Y"}, {2, 2}, rows);
    CHECK_FALSE(ci_test(data, 0, 1, {}, 0.05).independent);
}

TEST_CASE("ci_test validates its query") {
    const CategoricalDataset data = from_table({{5, 5}, {5, 5}});
    CHECK_THROWS_AS(ci_test(data, 0, 0, {}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(ci_test(data, 0, 1, {0}, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(ci_test(data, 0, 1, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ci_test(data, 0, 1, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ci_test(data, 0, 9, {}, 0.05), std::out_of_range);
    CHECK_THROWS_AS(CategoricalDataset({"X"}, {2}, {}), std::invalid_argument);
}

TEST_CASE("constant column degenerates to an independent flag") {
    CategoricalDataset data({"X", "Y"}, {1, 2}, {{0, 0}, {0, 1}, {0, 0}});
    const CiResult result = ci_test(data, 0, 1, {}, 0.05);
    CHECK(result.degenerate);
    CHECK(result.independent);
    CHECK(result.degrees_of_freedom == 0);
}

TEST_CASE("small strata are pooled but flagged") {
    // Stratum z=1 holds 3 rows only.
    CategoricalDataset data({"X", "Y", "Z"}, {2, 2, 2},
                            {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}, {0, 0, 0},
                             {1, 1, 0}, {0, 0, 1}, {1, 1, 1}, {0, 1, 1}});
    const CiResult result = ci_test(data, 0, 1, {2}, 0.05);
    CHECK(result.small_strata);
}

TEST_CASE("false-rejection rate under true independence stays near alpha") {
    // Monte-Carlo calibration: fair independent coins, 10k rows, 200 resamples.
    int rejections = 0;
    const int resamples = 200;
    for (int rep = 0; rep < resamples; ++rep) {
        Rng rng(9000 + rep);
        std::vector<std::vector<int>> rows;
        rows.reserve(10000);
        for (int r = 0; r < 10000; ++r)
            rows.push_back({rng.next_index(2), rng.next_index(2)});
        const CategoricalDataset data({"X", "Y"}, {2, 2}, rows);
        if (!ci_test(data, 0, 1, {}, 0.05).independent) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / resamples;
    CHECK(rate > 0.01);
    CHECK(rate < 0.10);
}

TEST_CASE("G^2 and Pearson p-values agree asymptotically") {
    const CategoricalDataset data = xor_collider(10000, 77);
    const int b = data.index_of("B");
    const int c = data.index_of("C");
    const CiResult g = ci_test(data, b, c, {}, 0.05);
    const CiResult pearson = pearson_ci_test(data, b, c, {}, 0.05);
    CHECK(std::abs(g.p_value - pearson.p_value) < 0.02);

    const int a = data.index_of("A");
    const CiResult g_cond = ci_test(data, b, c, {a}, 0.05);
    const CiResult pearson_cond = pearson_ci_test(data, b, c, {a}, 0.05);
    CHECK(std::abs(g_cond.p_value - pearson_cond.p_value) < 0.02);
}

TEST_CASE("XOR collider: marginal independence, conditional dependence") {
    const CategoricalDataset data = xor_collider(10000, 41);
    const int a = data.index_of("A");
    const int b = data.index_of("B");
    const int c = data.index_of("C");
    CHECK(ci_test(data, b, c, {}, 0.05).independent);
    CHECK_FALSE(ci_test(data, b, c, {a}, 0.05).independent);
}

TEST_CASE("PC reproduces the scripted two-distribution walkthrough") {
    // First distribution: zero-order tests alone resolve the triangle —
    // alpha(AB)=1, alpha(AC)=1, alpha(BC)=0.
    testing::ScriptedCiOracle first({"A", "B", "C"});
    first.set_independent(1, 2, {});
    PcResult p1 = pc_skeleton(first, 3);
    CHECK(p1.skeleton.edge_count() == 2);
    CHECK(p1.skeleton.has_edge(0, 1));
    CHECK(p1.skeleton.has_edge(0, 2));
    CHECK_FALSE(p1.skeleton.has_edge(1, 2));
    CHECK(p1.sepsets.get(1, 2).empty());

    ColliderOrientation o1 = pc_orient_colliders(p1);
    REQUIRE(o1.directed.size() == 2);
    CHECK(o1.has_arrow(1, 0));  // B -> A
    CHECK(o1.has_arrow(2, 0));  // C -> A
    CHECK(o1.undecided.empty());
    CHECK(o1.conflicts.empty());

    // Second distribution: all zero-order associated; only alpha(BC|A)=0.
    testing::ScriptedCiOracle second({"A", "B", "C"});
    second.set_independent(1, 2, {0});
    PcResult p2 = pc_skeleton(second, 3);
    CHECK(p2.skeleton.edge_count() == 2);
    CHECK(p2.skeleton.has_edge(0, 1));
    CHECK(p2.skeleton.has_edge(0, 2));
    CHECK(p2.sepsets.get(1, 2) == std::vector<int>{0});

    // A sits in the separating set: no collider, every orientation left open.
    ColliderOrientation o2 = pc_orient_colliders(p2);
    CHECK(o2.directed.empty());
    CHECK(o2.undecided.size() == 2);
}

TEST_CASE("PC on sampled XOR collider data") {
    const CategoricalDataset data = xor_collider(10000, 6, 0.8);
    DataCiOracle oracle(data, 0.05);
    PcResult result = pc_skeleton(oracle, 3);
    CHECK(result.skeleton.edge_count() == 2);
    CHECK(result.skeleton.has_edge(0, 1));
    CHECK(result.skeleton.has_edge(0, 2));

    ColliderOrientation orientation = pc_orient_colliders(result);
    CHECK(orientation.has_arrow(1, 0));
    CHECK(orientation.has_arrow(2, 0));
}

TEST_CASE("chain data leaves the collider rule silent") {
    // X -> Y -> Z with noisy copies; sepset(X, Z) = {Y}.
    Rng rng(21);
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < 8000; ++r) {
        const int x = rng.next_index(2);
        const int y = rng.next_double() < 0.9 ? x : 1 - x;
        const int z = rng.next_double() < 0.9 ? y : 1 - y;
        rows.push_back({x, y, z});
    }
    const CategoricalDataset data({"X", "Y", "Z"}, {2, 2, 2}, rows);
    DataCiOracle oracle(data, 0.05);
    PcResult result = pc_skeleton(oracle, 3);
    CHECK(result.skeleton.has_edge(0, 1));
    CHECK(result.skeleton.has_edge(1, 2));
    CHECK_FALSE(result.skeleton.has_edge(0, 2));
    CHECK(result.sepsets.get(0, 2) == std::vector<int>{1});
    CHECK(pc_orient_colliders(result).directed.empty());
}

TEST_CASE("pc_vote follows skeleton membership") {
    testing::ScriptedCiOracle oracle({"A", "B", "C"});
    oracle.set_independent(1, 2, {});
    PcResult result = pc_skeleton(oracle, 3);
    CHECK(pc_vote(result, 0, 1) == 1);
    CHECK(pc_vote(result, 1, 2) == -1);

    testing::ScriptedCiOracle all_dependent({"A", "B", "C"});
    PcResult complete = pc_skeleton(all_dependent, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) CHECK(pc_vote(complete, a, b) == 1);
}

TEST_CASE("PC is monotone and deterministic") {
    const CategoricalDataset data = xor_collider(4000, 99, 0.8);
    DataCiOracle oracle(data, 0.05);
    const PcResult first = pc_skeleton(oracle, 3);
    const PcResult second = pc_skeleton(oracle, 3);
    CHECK(first.skeleton == second.skeleton);
    CHECK(first.sepsets.all() == second.sepsets.all());

    const Skeleton complete = Skeleton::complete(data.variable_names());
    for (const auto& edge : first.skeleton.edges()) CHECK(complete.edges().count(edge) == 1);
}

TEST_CASE("selection bias drops the gender-age adjacency") {
    const CptModel model = CptModel::from_file(kSelectionBiasCpt);
    const CategoricalDataset data = model.sample(20000, 424242);
    const int age = data.index_of("Age");
    const int gender = data.index_of("Gender");
    const int old_code = 2;

    // Unfiltered data keeps the true Gender-Age edge.
    DataCiOracle oracle(data, 0.05);
    PcResult unfiltered = pc_skeleton(oracle, 3);
    CHECK(unfiltered.skeleton.has_edge(gender, age));

    // Restricting to age < 60 hides the association and PC drops the edge.
    std::vector<bool> keep(data.row_count());
    for (std::size_t r = 0; r < data.row_count(); ++r) keep[r] = data.cell(r, age) != old_code;
    const CategoricalDataset biased = data.filtered(keep);
    DataCiOracle biased_oracle(biased, 0.05);
    PcResult filtered = pc_skeleton(biased_oracle, 3);
    CHECK_FALSE(filtered.skeleton.has_edge(gender, age));
    // The biased recovery keeps exactly the two disease edges.
    CHECK(filtered.skeleton.edge_count() == 2);
    CHECK(filtered.skeleton.has_edge(gender, data.index_of("Disease")));
    CHECK(filtered.skeleton.has_edge(age, data.index_of("Disease")));
}

TEST_CASE("CSV round trip with labels and sidecar") {
    std::istringstream csv("A,B\nyes,0\nno,1\nyes,2\n");
    const CategoricalDataset data = CategoricalDataset::from_csv(csv);
    CHECK(data.variable_count() == 2);
    CHECK(data.arity(0) == 2);  // labels sorted: no=0, yes=1
    CHECK(data.arity(1) == 3);
    CHECK(data.cell(0, 0) == 1);
    CHECK(data.cell(1, 0) == 0);

    std::istringstream with_sidecar("A\n0\n1\n");
    nlohmann::json sidecar = {{"arities", {{"A", 4}}}};
    const CategoricalDataset declared = CategoricalDataset::from_csv(with_sidecar, sidecar);
    CHECK(declared.arity(0) == 4);

    std::ostringstream out;
    data.write_csv(out);
    CHECK(out.str() == "A,B\n1,0\n0,1\n1,2\n");
}

TEST_CASE("CPT sampler is seed-deterministic and respects its marginals") {
    const CptModel model = CptModel::from_file(kSelectionBiasCpt);
    const CategoricalDataset a = model.sample(5000, 7);
    const CategoricalDataset b = model.sample(5000, 7);
    CHECK(a.rows() == b.rows());

    int old_count = 0;
    for (std::size_t r = 0; r < a.row_count(); ++r)
        if (a.cell(r, 0) == 2) ++old_count;
    CHECK(static_cast<double>(old_count) / a.row_count() == doctest::Approx(0.40).epsilon(0.05));
}
