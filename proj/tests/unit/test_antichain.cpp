#include "doctest.h"

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "posetlab/antichain.hpp"

using namespace posetlab;

TEST_CASE("maximum antichain sizes") {
    CHECK(max_antichain_size(SetFamily::full(4)) == 6);
    CHECK(max_antichain_size(SetFamily::from_sets(4, {{}, {1}, {1, 2}, {1, 2, 4}})) == 1);
    CHECK(max_antichain_size(level_family(3, {1, 2})) == 3);
    CHECK(max_antichain_size(SetFamily(3)) == 0);
    for (int n = 1; n <= 12; ++n) {
        CHECK(max_antichain_size(SetFamily::full(n)) == binomial_u64(n, n / 2));
    }
}

TEST_CASE("every family over 2^[3] matches exhaustive search") {
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        auto f = oracle::family_from_mask(3, mask);
        auto sets = oracle::members(f);
        REQUIRE(max_antichain_size(sets) == oracle::max_antichain(sets));
    }
}

TEST_CASE("random families over 2^[4]") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        auto f = oracle::random_family(4, rng, 0.2 + 0.6 * (trial % 5) / 4.0);
        auto sets = oracle::members(f);
        CHECK(max_antichain_size(sets) == oracle::max_antichain(sets));
    }
}

TEST_CASE("lowest maximum antichain has the least total size and is unique") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        auto f = oracle::random_family(4, rng, 0.3 + 0.1 * (trial % 5));
        auto sets = oracle::members(f);
        if (sets.empty()) continue;
        auto all = oracle::all_max_antichains(sets);
        auto weight = [](const std::vector<Code>& a) {
            int total = 0;
            for (Code c : a) total += set_size(c);
            return total;
        };
        int least = 1 << 20;
        int attaining = 0;
        for (const auto& a : all) least = std::min(least, weight(a));
        for (const auto& a : all) attaining += weight(a) == least;
        auto lowest = lowest_max_antichain(sets);
        CHECK(attaining == 1);
        CHECK(weight(lowest) == least);
        CHECK(std::find(all.begin(), all.end(), lowest) != all.end());

        auto lex = lex_min_max_antichain(sets);
        CHECK(lex == *std::min_element(all.begin(), all.end()));
    }
}

TEST_CASE("chain cover is a partition into chains of the right count") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = oracle::random_family(5, rng);
        auto sets = oracle::members(f);
        AntichainSolver solver(sets);
        auto chains = solver.chain_cover();
        CHECK(chains.size() == solver.size());
        std::size_t covered = 0;
        for (const auto& chain : chains) {
            covered += chain.size();
            for (std::size_t i = 1; i < chain.size(); ++i) CHECK(is_strict_subset(chain[i - 1], chain[i]));
        }
        CHECK(covered == sets.size());
    }
}
