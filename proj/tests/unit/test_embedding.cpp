#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "posetlab/antichain.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"

using namespace posetlab;

namespace {

std::vector<Poset> small_patterns() {
    return {named::chain(2),
            named::chain(3),
            named::vee(2),
            named::wedge(2),
            named::diamond(2),
            named::butterfly(),
            named::antichain(2),
            named::complete_multipartite({1, 2, 1}),
            Poset::from_relations(3, {{0, 1}}),
            Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}})};
}

}  // namespace

TEST_CASE("copy counts on the documented examples") {
    auto c = count_copies(named::vee(2), SetFamily::from_sets(2, {{}, {1}, {2}}), false);
    CHECK(c.copies == 1);
    CHECK(c.embeddings == 2);
    c = count_copies(named::chain(2), SetFamily::full(2), false);
    CHECK(c.copies == 5);
    CHECK(c.embeddings == 5);
    c = count_copies(named::diamond(2), SetFamily::full(2), false);
    CHECK(c.copies == 1);
    CHECK(c.embeddings == 2);
}

TEST_CASE("copy and embedding counts match brute force") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 3 + trial % 2;
        auto f = oracle::random_family(n, rng, n == 3 ? 0.6 : 0.45);
        for (const auto& p : small_patterns()) {
            for (bool induced : {false, true}) {
                auto fast = count_copies(p, f, induced);
                auto slow = oracle::count_copies(p, f, induced);
                REQUIRE(fast.copies == slow.copies);
                REQUIRE(fast.embeddings == slow.embeddings);
                CHECK(is_p_free(p, f, induced) == (slow.copies == 0));
                // Each copy has between 1 and |P|! witnesses.
                CHECK(fast.embeddings >= fast.copies);
                CHECK(fast.embeddings <= fast.copies * oracle::factorial(p.size()));
                if (!induced) CHECK(count_copies(p, f, true).copies <= fast.copies);
            }
        }
    }
}

TEST_CASE("copies through a set") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        auto f = oracle::random_family(4, rng, 0.5);
        for (const auto& p : small_patterns()) {
            auto total = count_copies(p, f, false).copies;
            for (Code c = 0; c < 16; ++c) {
                auto without = f;
                without.erase(c);
                auto through = count_copies_through(p, f, false, c).copies;
                CHECK(through == total - count_copies(p, without, false).copies);
            }
        }
    }
}

TEST_CASE("freeness") {
    CHECK(is_p_free(named::chain(2), level_family(6, {3}), false));
    CHECK(is_p_free(named::diamond(2), middle_levels(4, 2), false));
    CHECK_FALSE(is_p_free(named::diamond(2), SetFamily::full(3), false));
    auto copy = find_copy(named::diamond(2), SetFamily::full(3), false);
    REQUIRE(copy.has_value());
    CHECK(oracle::witnesses(named::diamond(2), copy->assignment, false));
}

TEST_CASE("up-sets and weights") {
    CHECK(up_set(SetFamily::full(2), 0b01) == SetFamily::from_codes(2, std::vector<Code>{0b01, 0b11}));
    CHECK(up_set(level_family(4, {2}), 0) == level_family(4, {2}));
    CHECK(up_set(SetFamily(3), 0).empty());
    CHECK(g_weight(SetFamily::full(3), 0b001) == 2);
    CHECK(g_weight(SetFamily::from_sets(3, {{1}, {1, 2}, {1, 2, 3}}), 0b001) == 1);
    CHECK(g_weight(SetFamily::from_sets(3, {{2}}), 0b001) == 0);

    auto w = max_up_weight(SetFamily::full(2));
    CHECK(w.witness == 0);
    CHECK(w.weight == 2);
    w = max_up_weight(level_family(5, {2}));
    CHECK(w.witness == 0b00011);
    CHECK(w.weight == 0);
    w = max_up_weight(middle_levels(4, 3));
    CHECK(set_size(w.witness) == 1);
    {
        std::vector<Code> above;
        for (Code c = 0; c < 16; ++c) {
            if (c != w.witness && is_subset(w.witness, c) && set_size(c) <= 3) above.push_back(c);
        }
        CHECK(w.weight == oracle::max_antichain(above));
    }
    CHECK_THROWS_AS(max_up_weight(SetFamily(3)), Error);
}

TEST_CASE("induced vee freeness is characterized by strict up weights") {
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        auto f = oracle::family_from_mask(3, mask);
        std::size_t worst = 0;
        f.for_each([&](Code c) { worst = std::max(worst, strict_up_weight(f, c)); });
        for (int r = 1; r <= 3; ++r) {
            const bool free = oracle::is_free(named::vee(r + 1), f, true);
            CHECK(free == (worst <= static_cast<std::size_t>(r)));
            auto vee = find_induced_vee(f, r + 1);
            CHECK(vee.has_value() == !free);
            if (vee) {
                std::vector<Code> image{vee->bottom};
                image.insert(image.end(), vee->tops.begin(), vee->tops.end());
                CHECK(oracle::witnesses(named::vee(r + 1), image, true));
            }
        }
    }
}

TEST_CASE("down/up decomposition") {
    auto two = du_decomposition(middle_levels(4, 2), 1, 1);
    CHECK(two.down == level_family(4, {1}));
    CHECK(two.up == level_family(4, {2}));
    CHECK(two.rest.empty());

    // Direct definition check over 2^[3].
    auto full = SetFamily::full(3);
    auto du = du_decomposition(full, 2, 2);
    for (Code c = 0; c < 8; ++c) {
        std::vector<Code> below;
        std::vector<Code> above;
        for (Code d = 0; d < 8; ++d) {
            if (d != c && oracle::sub(d, c)) below.push_back(d);
            if (d != c && oracle::sub(c, d)) above.push_back(d);
        }
        const bool down = oracle::max_antichain(below) < 2;
        const bool up = oracle::max_antichain(above) < 2;
        CHECK(du.down.contains(c) == down);
        CHECK(du.up.contains(c) == up);
        CHECK(du.rest.contains(c) == (!down && !up));
    }
    CHECK(du.rest.contains(0b001) == false);

    // Induced K_{s,1,t}-free families leave nothing in the rest.
    std::mt19937_64 rng(8);
    const auto k212 = named::complete_multipartite({2, 1, 2});
    for (int trial = 0; trial < 200; ++trial) {
        auto f = oracle::random_family(4, rng, 0.35);
        if (!is_p_free(k212, f, true)) continue;
        CHECK(du_decomposition(f, 2, 2).rest.empty());
    }
}
