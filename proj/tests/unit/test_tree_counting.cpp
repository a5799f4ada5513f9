#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/tree_counting.hpp"

using namespace posetlab;

namespace {

// Injective maps sending every cover pair of the tree to an edge, over |Aut|.
std::uint64_t brute_tree_copies(const Digraph& g, const Poset& tree) {
    std::set<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    const auto covers = hasse(tree).cover_edges;
    const int k = tree.size();
    std::uint64_t maps = 0;
    std::vector<int> image(k);
    auto place = [&](auto&& self, int i, std::uint64_t used) -> void {
        if (i == k) {
            for (auto [a, b] : covers) {
                if (!edges.count({image[a], image[b]})) return;
            }
            ++maps;
            return;
        }
        for (int v = 0; v < g.vertices; ++v) {
            if ((used >> v) & 1U) continue;
            image[i] = v;
            self(self, i + 1, used | (std::uint64_t{1} << v));
        }
    };
    place(place, 0, 0);
    return maps / automorphism_count(tree);
}

Digraph random_digraph(int vertices, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(density);
    std::bernoulli_distribution flip(0.5);
    Digraph g;
    g.vertices = vertices;
    for (int u = 0; u < vertices; ++u) {
        for (int v = u + 1; v < vertices; ++v) {
            if (!keep(rng)) continue;
            if (flip(rng)) {
                g.edges.emplace_back(v, u);
            } else {
                g.edges.emplace_back(u, v);
            }
        }
    }
    return g;
}

std::vector<Poset> height_two_trees() {
    return {named::chain(2), named::vee(2), named::wedge(2), named::vee(3),
            Poset::from_relations(4, {{0, 2}, {1, 2}, {1, 3}}),
            Poset::from_relations(5, {{0, 3}, {1, 3}, {1, 4}, {2, 4}})};
}

SetFamily random_subfamily(const SetFamily& f, double keep, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(keep);
    SetFamily out(f.ground_n());
    f.for_each([&](Code c) {
        if (coin(rng)) out.insert(c);
    });
    return out;
}

}  // namespace

TEST_CASE("digraph validation and comparability graphs") {
    CHECK_THROWS_AS(validate_digraph(Digraph{2, {{0, 0}}}), Error);
    CHECK_THROWS_AS(validate_digraph(Digraph{2, {{0, 1}, {0, 1}}}), Error);
    CHECK_THROWS_AS(validate_digraph(Digraph{2, {{0, 2}}}), Error);
    const auto g = comparability_graph(SetFamily::full(2));
    CHECK(g.vertices == 4);
    CHECK(g.edges.size() == 5);
}

TEST_CASE("single edge in a complete bipartite orientation") {
    Digraph g;
    g.vertices = 16;
    for (int a = 0; a < 8; ++a) {
        for (int b = 8; b < 16; ++b) g.edges.emplace_back(a, b);
    }
    const auto run = run_tree_counting(g, named::chain(2));
    CHECK(run.certified >= 32);
    REQUIRE(run.exact.has_value());
    CHECK(*run.exact == 64);
    CHECK(run.certified <= *run.exact);
}

TEST_CASE("two disjoint edges hold no out-star") {
    const Digraph g{4, {{0, 1}, {2, 3}}};
    const auto run = run_tree_counting(g, named::vee(2));
    REQUIRE(run.exact.has_value());
    CHECK(*run.exact == 0);
    CHECK(run.certified == 0);
}

TEST_CASE("out-stars in a random tournament") {
    std::mt19937_64 rng(11);
    const Digraph g = random_digraph(64, 1.0, rng);
    std::vector<int> out_degree(64, 0);
    for (auto [u, v] : g.edges) ++out_degree[u];
    // triples {u, v, w} with u -> v and u -> w
    std::uint64_t expect = 0;
    for (int d : out_degree) expect += static_cast<std::uint64_t>(d) * (d - 1) / 2;
    const auto run = run_tree_counting(g, named::vee(2));
    REQUIRE(run.exact.has_value());
    CHECK(*run.exact == expect);
    CHECK(run.certified <= *run.exact);
}

TEST_CASE("bad trees are refused") {
    const Digraph g{3, {{0, 1}, {1, 2}}};
    CHECK_THROWS_AS(run_tree_counting(g, named::chain(3)), Error);
    CHECK_THROWS_AS(run_tree_counting(g, named::diamond(2)), Error);
    CHECK_THROWS_AS(run_tree_counting(g, named::antichain(2)), Error);
}

TEST_CASE("certified bound and exact count on random small digraphs") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 60; ++round) {
        const int vertices = 4 + round % 6;
        const Digraph g = random_digraph(vertices, 0.3 + 0.1 * (round % 5), rng);
        for (const auto& tree : height_two_trees()) {
            if (tree.size() > vertices) continue;
            const auto run = run_tree_counting(g, tree);
            const auto expect = brute_tree_copies(g, tree);
            REQUIRE(run.exact.has_value());
            CHECK(*run.exact == expect);
            CHECK(count_tree_copies(g, tree) == expect);
            CHECK(run.certified <= *run.exact);
            CHECK(run.step_choices.size() == run.edge_order.size());
            // every pruned graph sits inside the previous one
            for (std::size_t i = 1; i < run.pruned.size(); ++i) {
                for (const auto& e : run.pruned[i]) {
                    CHECK(std::find(run.pruned[i - 1].begin(), run.pruned[i - 1].end(), e) != run.pruned[i - 1].end());
                }
            }
        }
    }
}

TEST_CASE("comparability graphs count tree copies in families") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 20; ++round) {
        const SetFamily f = oracle::random_family(3, rng, 0.6);
        const auto g = comparability_graph(f);
        for (const auto& tree : {named::chain(2), named::vee(2), named::wedge(2)}) {
            // as subgraphs of the comparability graph these are exactly the non-induced copies
            CHECK(count_tree_copies(g, tree) == oracle::count_copies(tree, f, false).copies);
        }
    }
}

TEST_CASE("layered witnesses: conditions") {
    const int n = 6;
    const LayeredWitness ok{{level_family(n, {2, 3, 4}), level_family(n, {2, 3}), level_family(n, {2})},
                            ExactRational(1, 2), ExactRational(1, 3), ExactRational(1, 12)};
    const auto check = layered_witness_check(ok, named::chain(3));
    CHECK(check.embeddings > 0);
    CHECK(check.lower_bound <= count_copies(named::chain(3), ok.layers[0], false).copies);

    LayeredWitness empty_top = ok;
    empty_top.layers[2] = SetFamily(n);
    try {
        layered_witness_check(empty_top, named::chain(3));
        FAIL("expected condition i to fail");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::condition_failed);
        CHECK(std::string(e.what()).find("condition i ") != std::string::npos);
    }

    LayeredWitness thin = ok;
    thin.delta2 = ExactRational(1);
    try {
        layered_witness_check(thin, named::chain(3));
        FAIL("expected condition ii to fail");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("condition ii ") != std::string::npos);
    }

    LayeredWitness sparse = ok;
    sparse.delta3 = ExactRational(1);
    try {
        layered_witness_check(sparse, named::chain(3));
        FAIL("expected condition iii to fail");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("condition iii") != std::string::npos);
    }

    CHECK_THROWS_AS(layered_witness_check(ok, named::chain(2)), Error);  // height mismatch
    CHECK_THROWS_AS(layered_witness_check(ok, named::butterfly()), Error);
    LayeredWitness unnested = ok;
    std::swap(unnested.layers[0], unnested.layers[2]);
    CHECK_THROWS_AS(layered_witness_check(unnested, named::chain(3)), Error);
}

TEST_CASE("layered lower bounds never exceed the true copy count") {
    std::mt19937_64 rng(17);
    const std::vector<Poset> upward = {named::chain(2), named::vee(2), named::vee(3), named::chain(3),
                                       Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}})};
    int tested = 0;
    for (int round = 0; round < 40; ++round) {
        const int n = 4 + round % 2;
        for (const auto& up : upward) {
            for (bool downward : {false, true}) {
                const Poset tree = downward ? up.dual() : up;
                const int h = height(tree);
                std::vector<SetFamily> layers{oracle::random_family(n, rng, 0.7)};
                for (int i = 1; i < h; ++i) layers.push_back(random_subfamily(layers.back(), 0.6, rng));
                const LayeredWitness w{layers, 0, 0, 0};
                const auto check = layered_witness_check(w, tree);
                CHECK(check.lower_bound == check.embeddings / factorial(tree.size()));
                CHECK(check.lower_bound <= oracle::count_copies(tree, layers[0], false).copies);
                ++tested;
            }
        }
    }
    CHECK(tested == 400);
}
