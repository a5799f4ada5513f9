#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/random_model.hpp"

using namespace posetlab;

namespace {

// Largest free subfamily of a small sample by trying every subfamily.
std::size_t brute_largest_free(const SetFamily& sample, const Poset& p, bool induced) {
    const auto sets = oracle::members(sample);
    std::size_t best = 0;
    for (std::uint32_t pick = 0; pick < (1U << sets.size()); ++pick) {
        const auto size = static_cast<std::size_t>(std::popcount(pick));
        if (size <= best) continue;
        SetFamily f(sample.ground_n());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if ((pick >> i) & 1U) f.insert(sets[i]);
        }
        if (oracle::is_free(p, f, induced)) best = size;
    }
    return best;
}

}  // namespace

TEST_CASE("inclusion thresholds") {
    const BigInt two64 = BigInt(1) << 64;
    CHECK(InclusionProbability::rational(0).threshold() == 0);
    CHECK(InclusionProbability::rational(1).threshold() == two64);
    CHECK(InclusionProbability::rational(ExactRational(1, 3)).threshold() == two64 / 3);
    CHECK(InclusionProbability::rational(parse_rational("0.5")).value() == ExactRational(1, 2));
    CHECK_THROWS_AS(InclusionProbability::rational(ExactRational(3, 2)), Error);

    // 12^-3/2: largest T with T^2 12^3 <= 2^128
    const auto p = InclusionProbability::power(12, ExactRational(3, 2));
    const BigInt t = p.threshold();
    CHECK(t * t * 1728 <= two64 * two64);
    CHECK((t + 1) * (t + 1) * 1728 > two64 * two64);
    CHECK(std::abs(p.approx() - std::pow(12.0, -1.5)) < 1e-12);
    CHECK(p.label() == "12^-3/2");
    CHECK(InclusionProbability::power(7, 0).threshold() == two64);
}

TEST_CASE("sampling extremes and reproducibility") {
    for (int n = 1; n <= 6; ++n) {
        CHECK(sample_pnp(n, InclusionProbability::rational(0), 9).empty());
        CHECK(sample_pnp(n, InclusionProbability::rational(1), 9) == SetFamily::full(n));
    }
    const auto half = InclusionProbability::rational(ExactRational(1, 2));
    const SetFamily a = sample_pnp(10, half, 42);
    CHECK(a == sample_pnp(10, half, 42));
    CHECK_FALSE(a == sample_pnp(10, half, 43));
    for (Code c = 0; c < a.code_count(); ++c) CHECK(a.contains(c) == sample_contains(half, 42, c));
    // smaller p keeps a subset of the same seed's sample
    const SetFamily b = sample_pnp(10, InclusionProbability::rational(ExactRational(1, 5)), 42);
    CHECK((b - a).empty());
    CHECK_THROWS_AS(sample_pnp(21, half, 1), Error);
}

TEST_CASE("sample sizes concentrate") {
    const auto half = InclusionProbability::rational(ExactRational(1, 2));
    const double sigma = std::sqrt(16384 * 0.25);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const double size = static_cast<double>(sample_pnp(14, half, seed).size());
        CHECK(std::abs(size - 8192) <= 4 * sigma);
    }
}

TEST_CASE("copy removal leaves a free family") {
    std::mt19937_64 rng(23);
    const std::vector<Poset> patterns = {named::chain(2), named::chain(3), named::vee(2), named::diamond(2),
                                         named::butterfly()};
    for (int round = 0; round < 30; ++round) {
        const SetFamily f = oracle::random_family(4, rng, 0.6);
        for (const auto& p : patterns) {
            for (bool induced : {false, true}) {
                std::size_t removed = 0;
                const SetFamily out = remove_copies(f, p, induced, &removed);
                CHECK((out - f).empty());
                CHECK(out.size() + removed == f.size());
                CHECK(oracle::is_free(p, out, induced));
            }
        }
    }
}

TEST_CASE("removal construction") {
    const auto none = removal_construction(8, InclusionProbability::rational(0), 1, named::chain(2), false);
    CHECK(none.family.empty());
    CHECK(none.removed == 0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto p = InclusionProbability::power(10, ExactRational(1, 2));
        const auto run = removal_construction(10, p, seed, named::vee(2), true);
        CHECK((run.sampled - middle_levels(10, 2)).empty());
        CHECK((run.family - run.sampled).empty());
        CHECK(run.family.size() + run.removed == run.sampled.size());
        CHECK(is_p_free(named::vee(2), run.family, true));
    }
    CHECK_THROWS_AS(removal_construction(15, InclusionProbability::rational(1), 1, named::chain(2), false), Error);
}

TEST_CASE("largest free subfamily of small samples") {
    std::mt19937_64 rng(31);
    const std::vector<Poset> patterns = {named::chain(2), named::vee(2), named::chain(3), named::diamond(2)};
    int compared = 0;
    for (int round = 0; round < 25; ++round) {
        const SetFamily sample = oracle::random_family(4, rng, 0.35 + 0.02 * (round % 10));
        if (sample.size() > 14) continue;  // keeps the brute force quick
        for (const auto& p : patterns) {
            for (bool induced : {false, true}) {
                const auto exact = largest_free_in_sample(sample, p, induced);
                const auto heuristic = heuristic_free_in_sample(sample, p, induced);
                const auto expect = brute_largest_free(sample, p, induced);
                CHECK(exact.exact);
                CHECK(exact.size == expect);
                CHECK(oracle::is_free(p, exact.witness, induced));
                CHECK(heuristic.size <= exact.size);
                CHECK((heuristic.witness - sample).empty());
                CHECK(oracle::is_free(p, heuristic.witness, induced));
                ++compared;
            }
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("largest free subfamily: closed cases") {
    for (int n = 1; n <= 10; ++n) {
        const auto got = largest_free_in_sample(SetFamily::full(n), named::chain(2), false);
        CHECK(got.exact);
        CHECK(got.size == binomial(n, n / 2));
    }
    const SetFamily level = level_family(9, {4});
    for (const auto& p : {named::vee(2), named::chain(3), named::diamond(2)}) {
        const auto got = largest_free_in_sample(level, p, false);
        CHECK(got.size == level.size());
        CHECK(got.exact);
    }
}

TEST_CASE("induced vee in P(12, 0.3) keeps more than p times the middle level") {
    // A certified free subfamily, so the true optimum is at least this large.
    const auto p = InclusionProbability::rational(parse_rational("0.3"));
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto got = largest_free_in_sample(sample_pnp(12, p, seed), named::vee(2), true);
        CHECK_FALSE(got.exact);
        const double ratio = static_cast<double>(got.size) / (0.3 * 924);
        CHECK(ratio > 1.0);
        CHECK(ratio < 2.0);
        CHECK(is_p_free(named::vee(2), got.witness, true));
    }
}

TEST_CASE("threshold sweep plumbing") {
    const auto empty = threshold_sweep(named::chain(2), false, {8, 10}, {ExactRational(1, 2)}, {});
    CHECK(empty.rows.empty());
    CHECK(empty.summary.empty());
    CHECK(empty.d == 1);

    const std::vector<ExactRational> gammas = {ExactRational(1, 2), ExactRational(1), ExactRational(3, 2)};
    const auto table = threshold_sweep(named::chain(2), false, {8, 10}, gammas, {1, 2, 3});
    CHECK(table.rows.size() == 2 * 3 * 3);
    REQUIRE(table.summary.size() == 2 * 3);
    CHECK(table.summary[0].regime == "above");
    CHECK(table.summary[1].regime == "at");
    CHECK(table.summary[2].regime == "below");
    for (const auto& s : table.summary) CHECK(s.seeds == 3);
    double total = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(table.rows[i].n == 8);
        CHECK(table.rows[i].gamma == ExactRational(1, 2));
        CHECK(table.rows[i].exact);
        total += table.rows[i].normalized;
    }
    CHECK(std::abs(total / 3 - table.summary[0].mean_normalized) < 1e-12);
    // the same seed gives the same row
    const auto again = threshold_sweep(named::chain(2), false, {8}, {ExactRational(1, 2)}, {2});
    CHECK(again.rows[0].size == table.rows[1].size);
}
