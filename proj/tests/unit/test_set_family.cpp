#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/set_family.hpp"

using namespace posetlab;

TEST_CASE("levels and middle levels") {
    CHECK(level_family(4, {2}).size() == 6);
    CHECK(level_family(3, {1, 2}).size() == 6);
    CHECK(level_family(2, {}).empty());
    CHECK(middle_levels(4, 1) == level_family(4, {2}));
    CHECK(middle_levels(3, 2) == level_family(3, {1, 2}));
    CHECK(middle_levels(4, 2) == level_family(4, {1, 2}));
    CHECK(middle_levels(4, 5) == SetFamily::full(4));
    CHECK_THROWS_AS(middle_levels(4, 6), Error);
    CHECK_THROWS_AS(level_family(3, {4}), Error);
    CHECK_THROWS_AS(SetFamily(21), Error);
}

TEST_CASE("centered families pick the sets closest to the middle") {
    CHECK(centered_family(4, 6) == level_family(4, {2}));
    auto seven = centered_family(4, 7);
    CHECK(seven.size() == 7);
    CHECK(seven.contains(0b0001));
    CHECK(centered_family(2, 4) == SetFamily::full(2));

    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t m = 0; m <= (1U << n); ++m) {
            auto f = centered_family(n, m);
            REQUIRE(f.size() == m);
            // No outside set is strictly closer to n/2 than some member.
            int worst_in = -1;
            int best_out = 1 << 20;
            for (Code c = 0; c < f.code_count(); ++c) {
                const int d = std::abs(2 * set_size(c) - n);
                if (f.contains(c)) {
                    worst_in = std::max(worst_in, d);
                } else {
                    best_out = std::min(best_out, d);
                }
            }
            CHECK(worst_in <= best_out);
        }
    }
}

TEST_CASE("lubell function") {
    for (int n = 1; n <= 20; ++n) {
        for (int j = 0; j <= n; j += (n > 12 ? n / 3 + 1 : 1)) CHECK(lubell(level_family(n, {j})) == 1);
    }
    for (int n = 1; n <= 6; ++n) {
        std::vector<Code> ends{0, (Code{1} << n) - 1};
        if (n >= 1) CHECK(lubell(SetFamily::from_codes(n, ends)) == 2);
    }
    auto f = SetFamily::from_sets(3, {{1}, {1, 2}});
    CHECK(lubell(f) == ExactRational(2, 3));
}

TEST_CASE("comparability digraph and chain counts") {
    CHECK(comparability_digraph(SetFamily::full(2)).size() == 5);
    CHECK(comparability_digraph(level_family(5, {2})).empty());
    CHECK(comparability_digraph(SetFamily::from_sets(2, {{}, {1}, {1, 2}})).size() == 3);

    CHECK(count_k_chains(SetFamily::full(2), 2) == 5);
    CHECK(count_k_chains(SetFamily::full(2), 3) == 2);
    CHECK(count_k_chains(level_family(6, {3}), 2) == 0);
    CHECK(count_k_chains(SetFamily::full(4), 5) == 24);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = oracle::random_family(4, rng);
        auto g = f;
        g.insert(static_cast<Code>(rng() % 16));
        for (int k = 1; k <= 4; ++k) {
            // Brute force: k-subsets that form a chain.
            auto sets = oracle::members(f);
            std::uint64_t brute = 0;
            for (std::uint32_t pick = 0; pick < (1U << sets.size()); ++pick) {
                if (std::popcount(pick) != k) continue;
                bool chain = true;
                for (std::size_t i = 0; i < sets.size() && chain; ++i) {
                    for (std::size_t j = i + 1; j < sets.size() && chain; ++j) {
                        if (((pick >> i) & 1U) && ((pick >> j) & 1U)) chain = oracle::comparable(sets[i], sets[j]);
                    }
                }
                if (chain) ++brute;
            }
            CHECK(count_k_chains(f, k) == brute);
            CHECK(count_k_chains(f, k) <= count_k_chains(g, k));
        }
        // The comparability digraph is transitively closed.
        auto edges = comparability_digraph(f);
        for (auto [a, b] : edges) {
            for (auto [c, d] : edges) {
                if (b == c) CHECK(std::binary_search(edges.begin(), edges.end(), std::make_pair(a, d)));
            }
        }
    }
}

TEST_CASE("set operations and binary round trip") {
    auto a = level_family(4, {1, 2});
    auto b = level_family(4, {2, 3});
    CHECK((a & b) == level_family(4, {2}));
    CHECK((a | b).size() == 14);
    CHECK((a - b) == level_family(4, {1}));
    CHECK_THROWS_AS(a.insert(16), Error);

    std::mt19937_64 rng(5);
    for (int n : {1, 2, 3, 7, 12}) {
        auto f = oracle::random_family(n, rng);
        auto bytes = f.to_binary();
        CHECK(bytes.size() == 1 + ((std::size_t{1} << n) + 7) / 8);
        CHECK(SetFamily::from_binary(bytes) == f);
    }
    auto sets = SetFamily::from_sets(3, {{1, 3}, {2}}).member_sets();
    CHECK(sets == std::vector<std::vector<int>>{{2}, {1, 3}});
}

TEST_CASE("binomial tail bound holds exactly for n up to 200") {
    // sum_{i<l} C(n,i) <= 2 sqrt(n) C(n,l), squared to stay in integers.
    for (unsigned n = 2; n <= 200; ++n) {
        BigInt tail = 0;
        for (unsigned l = 1; 2 * l <= n; ++l) {
            tail += binomial(n, l - 1);
            const BigInt rhs = binomial(n, l);
            CHECK(tail * tail <= 4 * BigInt(n) * rhs * rhs);
        }
    }
}
