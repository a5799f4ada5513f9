#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "posetlab/antichain.hpp"
#include "posetlab/chains.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"

using namespace posetlab;

TEST_CASE("chain pair counts") {
    CHECK(chain_pair_count(SetFamily::from_codes(2, std::vector<Code>{0})) == 2);
    CHECK(chain_pair_count(SetFamily::full(2)) == 6);
    CHECK(chain_pair_count(SetFamily::full(3)) == 24);
    for (std::uint64_t mask = 0; mask < 65536; mask += 97) {
        auto f = oracle::family_from_mask(4, mask);
        CHECK(ExactRational(chain_pair_count(f)) == lubell(f) * 24);
    }
}

TEST_CASE("min-max statistics agree with the permutation walk") {
    auto ends = minmax_stats(SetFamily::from_codes(5, std::vector<Code>{0, 31}));
    REQUIRE(ends.pairs.size() == 1);
    CHECK(ends.pairs[0].mass == 120);
    CHECK(ends.pairs[0].between == 0);
    CHECK(ends.empty_mass == 0);

    auto full2 = minmax_stats(SetFamily::full(2));
    REQUIRE(full2.pairs.size() == 1);
    CHECK(full2.pairs[0].low == 0);
    CHECK(full2.pairs[0].high == 3);
    CHECK(full2.pairs[0].mass == 2);
    CHECK(full2.pairs[0].between == 2);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 5;
        auto f = oracle::random_family(n, rng, 0.1 + 0.15 * (trial % 4));
        auto stats = minmax_stats(f);
        auto walk = oracle::minmax_walk(f);
        CHECK(stats.empty_mass == walk.empty);
        REQUIRE(stats.pairs.size() == walk.mass.size());
        BigInt total = stats.empty_mass;
        for (const auto& pair : stats.pairs) {
            CHECK(pair.mass == walk.mass.at({pair.low, pair.high}));
            total += pair.mass;
            CHECK(pair.mass <= factorial(set_size(pair.low)) * factorial(set_size(pair.high) - set_size(pair.low)) *
                                   factorial(n - set_size(pair.high)));
            // Interval antichain bounds.
            CHECK(pair.interval_antichain >= 1);
            CHECK(pair.interval_antichain <= pair.between + 2);
            std::vector<Code> interval;
            for (Code c = 0; c < f.code_count(); ++c) {
                if (f.contains(c) && oracle::sub(pair.low, c) && oracle::sub(c, pair.high)) interval.push_back(c);
            }
            if (interval.size() <= 16) CHECK(pair.interval_antichain == oracle::max_antichain(interval));
        }
        CHECK(total == factorial(n));
    }

    auto six = minmax_stats(middle_levels(6, 3));
    BigInt total = six.empty_mass;
    for (const auto& pair : six.pairs) total += pair.mass;
    CHECK(total == 720);
    CHECK_THROWS_AS(minmax_stats(SetFamily(11)), Error);
}

TEST_CASE("sampled statistics are flagged and roughly right") {
    auto f = middle_levels(8, 2);
    auto est = minmax_stats_sampled(f, 20000, 5);
    CHECK_FALSE(est.exact);
    CHECK(est.samples == 20000);
    BigInt total = est.empty_mass;
    for (const auto& pair : est.pairs) total += pair.mass;
    // Rounding can move each term by at most one half.
    CHECK(abs(total - factorial(8)) <= BigInt(est.pairs.size() + 1));
    CHECK(est.empty_mass == 0);
}

TEST_CASE("diamond bound equals the diamond copy count") {
    CHECK(diamond_lb(SetFamily::full(2), 2) == 1);
    CHECK(diamond_lb(middle_levels(6, 2), 2) == 0);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        auto f = oracle::random_family(4, rng, 0.3 + 0.1 * (trial % 6));
        for (int s : {2, 3}) CHECK(diamond_lb(f, s) == count_copies(named::diamond(s), f, false).copies);
    }
}

TEST_CASE("antichain cap check") {
    std::vector<Code> chain{0, 1, 3, 7, 15};
    auto c = antichain_cap_check(SetFamily::from_codes(4, chain), 3);
    CHECK(c.ok);
    CHECK(c.antichain == 1);
    CHECK(c.pairs <= 4 * 24);
    auto full3 = antichain_cap_check(SetFamily::full(3), 3);
    CHECK(full3.ok);
    CHECK(full3.pairs == 24);
    auto two = antichain_cap_check(middle_levels(4, 2), 3);
    CHECK_FALSE(two.ok);
    CHECK(two.antichain == 6);
}
