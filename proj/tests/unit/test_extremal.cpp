#include "doctest.h"

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "poset_enum.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/extremal.hpp"
#include "posetlab/rng.hpp"

using namespace posetlab;

namespace {

bool strict_sub(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Independent check of a returned copy: relations, window and span.
void check_embedding(const Poset& p, const LevelEmbedding& emb, bool induced) {
    REQUIRE(static_cast<int>(emb.sets.size()) == p.size());
    std::size_t lo = emb.sets[0].size();
    std::size_t hi = lo;
    std::set<int> uni;
    std::set<int> inter(emb.sets[0].begin(), emb.sets[0].end());
    for (int i = 0; i < p.size(); ++i) {
        lo = std::min(lo, emb.sets[i].size());
        hi = std::max(hi, emb.sets[i].size());
        uni.insert(emb.sets[i].begin(), emb.sets[i].end());
        std::set<int> keep;
        for (int x : emb.sets[i]) {
            if (inter.count(x)) keep.insert(x);
        }
        inter = keep;
        for (int j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            CHECK(emb.sets[i] != emb.sets[j]);
            if (p.less(i, j)) CHECK(strict_sub(emb.sets[i], emb.sets[j]));
            if (induced && !p.less(i, j)) CHECK_FALSE(strict_sub(emb.sets[i], emb.sets[j]));
        }
    }
    CHECK(static_cast<int>(hi - lo) <= emb.levels - 1);
    CHECK(emb.span == static_cast<int>(uni.size() - inter.size()));
}

}  // namespace

TEST_CASE("e of chains, diamonds and vees") {
    for (int k = 1; k <= 4; ++k) CHECK(e_param(named::chain(k + 1), false) == k);
    for (int s = 2; s <= 10; ++s) CHECK(e_param(named::diamond(s), false) == m_values(s).m_s);
    for (int s = 2; s <= 8; ++s) CHECK(e_param(named::diamond(s), true) == m_values(s).m_star_s);
    CHECK(e_param(named::vee(2), false) == 1);
    CHECK(e_param(named::antichain(3), false) == 0);
    // disconnected: the worst component decides
    CHECK(e_param(Poset::from_relations(5, {{0, 1}, {2, 3}, {3, 4}}), false) == 2);
}

TEST_CASE("x of K_{s,1,t} and diamonds") {
    for (int s = 1; s <= 3; ++s) {
        for (int t = 1; t <= 3; ++t) {
            const Poset k = named::complete_multipartite({s, 1, t});
            CHECK(x_param(k, false) == s + t);
            CHECK(x_param(k, true) == s + t);
        }
    }
    CHECK(x_param(named::diamond(2), false) == 2);
    CHECK(x_param(named::diamond(4), false) == 3);
    CHECK(x_param(named::diamond(4), true) == 4);
}

TEST_CASE("x of small trees") {
    const auto trees = testing_util::trees_up_to(6);
    int height_two = 0;
    int monotone = 0;
    for (const auto& t : trees) {
        const auto cls = classify_tree(t);
        if (height(t) == 2 && t.size() <= 5) {
            ++height_two;
            CHECK(x_param(t, false) == t.size() - 1);
        }
        if (cls == TreeClass::upward_monotone_tree || cls == TreeClass::downward_monotone_tree) {
            ++monotone;
            CHECK(x_param(t, false) == x_monotone_formula(t));
        }
    }
    CHECK(height_two > 5);
    CHECK(monotone > 10);
}

TEST_CASE("widest embeddings are genuine copies") {
    const std::vector<Poset> patterns = {named::chain(3), named::vee(3), named::diamond(3), named::butterfly(),
                                         named::complete_multipartite({2, 1, 2}),
                                         Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}})};
    for (bool induced : {false, true}) {
        for (const auto& p : patterns) {
            const int e = e_param(p, induced);
            CHECK_FALSE(embed_in_levels(p, e, induced).has_value());
            const auto some = embed_in_levels(p, e + 1, induced);
            REQUIRE(some.has_value());
            check_embedding(p, *some, induced);
            const auto wide = widest_embedding(p, e + 1, induced);
            check_embedding(p, wide, induced);
            CHECK(wide.span == x_param(p, induced));
            CHECK(wide.span <= e * p.size());
        }
    }
    CHECK_THROWS_AS(widest_embedding(named::chain(3), 2, false), Error);
}

TEST_CASE("copy-free windows agree with brute force in small cubes") {
    // m consecutive middle levels of 2^[6] are P-free exactly when m <= e(P)
    for (const auto& p : {named::chain(3), named::vee(2), named::diamond(2), named::butterfly()}) {
        for (bool induced : {false, true}) {
            const int e = e_param(p, induced);
            CHECK(oracle::is_free(p, middle_levels(6, e), induced));
            CHECK_FALSE(oracle::is_free(p, middle_levels(6, e + 1), induced));
        }
    }
}

TEST_CASE("d values") {
    CHECK(d_param(named::chain(2), false) == 1);
    CHECK(d_param(named::vee(2), true) == 1);
    CHECK(d_param(named::chain(3), false) == 1);
    // never above the poset's own ratio
    for (const auto& p : {named::diamond(2), named::butterfly(), named::vee(3)}) {
        for (bool induced : {false, true}) {
            CHECK(d_param(p, induced) <= ExactRational(x_param(p, induced), p.size() - 1));
        }
    }
    const auto params = poset_params(named::diamond(4), true);
    CHECK(params.e == 3);
    CHECK(params.e_star == 4);
    CHECK(params.x == 3);
    CHECK(params.x_star == 4);
    CHECK(params.d.has_value());
    CHECK_FALSE(poset_params(named::antichain(2), true).x.has_value());
}

TEST_CASE("middle-level copy counts") {
    CHECK(m_count(2, named::chain(2), false) == 2);
    CHECK(m_count(3, named::chain(2), false) == 6);
    for (const auto& p : {named::vee(2), named::chain(3), named::diamond(2)}) {
        for (int n = 2; n <= 4; ++n) {
            const int e = e_param(p, false);
            const auto expect = oracle::count_copies(p, middle_levels(n, std::min(e + 1, n + 1)), false).copies;
            CHECK(m_count(n, p, false) == expect);
        }
    }
    CHECK_THROWS_AS(m_count(21, named::chain(2), false), Error);
}

TEST_CASE("La against exhaustive search") {
    CHECK(la_exact(4, named::chain(2), false).size == 6);
    CHECK(la_exact(4, named::chain(3), false).size == 10);
    for (int n = 1; n <= 10; ++n) {
        CHECK(la_exact(n, named::chain(2), false).size == binomial(n, n / 2));
    }
    for (const auto& p : {named::vee(2), named::wedge(2), named::diamond(2), named::butterfly(), named::chain(3)}) {
        for (bool induced : {false, true}) {
            for (int n = 1; n <= 3; ++n) {
                const auto got = la_exact(n, p, induced);
                CHECK(got.size == oracle::la(n, p, induced));
                CHECK(got.witness.size() == got.size);
                CHECK(oracle::is_free(p, got.witness, induced));
            }
        }
    }
    CHECK_THROWS_AS(la_exact(6, named::vee(2), false), Error);
}

TEST_CASE("fewest copies: centered families for chains, brute force otherwise") {
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t m = 0; m <= (1U << n); ++m) {
            const auto centered = oracle::count_copies(named::chain(2), centered_family(n, m), false).copies;
            CHECK(min_copies(n, named::chain(2), m, false) == centered);
        }
    }
    CHECK(min_copies(2, named::chain(3), 4, false) == 2);
    // vee(2) on 2^[3], every m, against all C(8, m) families
    for (std::size_t m = 0; m <= 8; ++m) {
        std::uint64_t best = ~std::uint64_t{0};
        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
            best = std::min(best, oracle::count_copies(named::vee(2), oracle::family_from_mask(3, mask), true).copies);
        }
        CHECK(min_copies(3, named::vee(2), m, true) == best);
    }
}

TEST_CASE("counting free families") {
    for (const auto& p : {named::chain(2), named::vee(2), named::diamond(2), named::butterfly()}) {
        for (bool induced : {false, true}) {
            for (int n = 1; n <= 3; ++n) {
                std::uint64_t expect = 0;
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (1U << n)); ++mask) {
                    if (oracle::is_free(p, oracle::family_from_mask(n, mask), induced)) ++expect;
                }
                const BigInt got = count_free_families(n, p, induced);
                CHECK(got == expect);
                CHECK(got >= BigInt(1) << la_exact(n, p, induced).size);
            }
        }
    }
    // antichains of 2^[2]: the empty family, 4 singletons and {{1},{2}}
    CHECK(count_free_families(2, named::chain(2), false) == 6);
    CHECK(count_free_families(5, named::chain(2), false) == 7581);
    CHECK_THROWS_AS(count_free_families(5, named::diamond(2), false), Error);
}

TEST_CASE("supersaturation probes") {
    CHECK(parse_probe_generator("middle-random") == ProbeGenerator::middle_random);
    CHECK(std::string(to_string(ProbeGenerator::level_shifted)) == "level-shifted");
    CHECK_THROWS_AS(parse_probe_generator("nope"), Error);

    const auto report = supersat_probe(8, named::chain(2), ExactRational(1, 2), 3,
                                       {ProbeGenerator::centered, ProbeGenerator::middle_random,
                                        ProbeGenerator::level_shifted},
                                       false, 7);
    CHECK(report.e == 1);
    CHECK(report.x == 1);
    REQUIRE(report.rows.size() == 5);
    const std::size_t size = 70 * 3 / 2;
    for (const auto& row : report.rows) {
        CHECK(row.size == size);
        const auto family = probe_family(8, 1, size, row.generator, mix64(7, row.trial));
        CHECK(family.size() == size);
        CHECK(row.copies == count_copies(named::chain(2), family, false).copies);
        CHECK(row.ratio == ExactRational(row.copies, BigInt(8) * 70));
        CHECK(row.copies > 0);
    }
    // the centered family has the fewest comparable pairs among same-size families
    for (const auto& row : report.rows) CHECK(report.rows[0].copies <= row.copies);
}
