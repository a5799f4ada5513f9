#pragma once

#include <cstdint>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/set_family.hpp"

namespace posetlab {

/// Sum over members G of |G|! (n - |G|)!: the number of (member, maximal chain
/// through it) pairs.
BigInt chain_pair_count(const SetFamily& family);

struct PairStats {
    Code low = 0;   // minimal family member on the chains
    Code high = 0;  // maximal family member on the chains (may equal low)
    std::size_t between = 0;             // members strictly between low and high
    std::size_t interval_antichain = 0;  // largest antichain of members in [low, high]
    BigInt mass;                         // maximal chains with this min and max
};

struct ChainStats {
    int ground_n = 0;
    /// Pairs with nonzero mass, ordered by (low, high).
    std::vector<PairStats> pairs;
    /// Maximal chains meeting no member.
    BigInt empty_mass;
    bool exact = true;
    /// Number of sampled chains when not exact.
    std::uint64_t samples = 0;
};

inline constexpr int kExactChainLimit = 10;

/// Min-max partition of the n! maximal chains. The exact path counts, for each
/// member pair A <= C, the chains entering the family first at A and leaving it
/// last at C as (chains from the empty set to A avoiding members) * (|C|-|A|)! *
/// (chains from C to [n] avoiding members); it refuses n > 10.
ChainStats minmax_stats(const SetFamily& family);

/// Same statistics from uniformly random maximal chains; masses are scaled
/// estimates (rounded to integers) and `exact` is false.
ChainStats minmax_stats_sampled(const SetFamily& family, std::uint64_t samples, std::uint64_t seed);

/// Sum over comparable member pairs A < C of C(b(A,C), s), with b the number of
/// members strictly between them.
BigInt diamond_lb(const SetFamily& family, int s);

struct CapCheck {
    bool ok = false;
    std::size_t antichain = 0;
    BigInt pairs;
};

/// Whether the family's largest antichain is at most `cap`, with its chain pair count.
CapCheck antichain_cap_check(const SetFamily& family, std::size_t cap);

}  // namespace posetlab
