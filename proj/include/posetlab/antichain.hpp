#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "posetlab/set_family.hpp"

namespace posetlab {

/// Maximum antichains of a family of distinct sets, ordered by inclusion.
///
/// The size comes from Dilworth's theorem: |S| minus a maximum matching in the
/// bipartite graph with an edge x -> y whenever x is a strict subset of y (a
/// minimum chain cover). Matching uses Hopcroft-Karp seeded with a greedy pass
/// that prefers the smallest size step.
class AntichainSolver {
public:
    /// With `ground_n` > 0, successor lists may be built by enumerating supersets
    /// instead of testing all pairs, whichever is cheaper.
    explicit AntichainSolver(std::span<const Code> members, int ground_n = 0);

    std::size_t size() const noexcept { return members_.size() - matching_size_; }
    std::size_t matching_size() const noexcept { return matching_size_; }

    /// The unique maximum antichain minimizing the total cardinality of its sets
    /// (the bottom element of the lattice of maximum antichains), ascending codes.
    std::vector<Code> lowest();

    /// Minimum chain cover derived from the matching, each chain bottom-up.
    std::vector<std::vector<Code>> chain_cover() const;

private:
    void build_edges(int ground_n);
    std::span<const std::uint32_t> successors(std::size_t i) const {
        return {succ_.data() + succ_begin_[i], succ_.data() + succ_begin_[i + 1]};
    }
    void solve();

    std::vector<Code> members_;
    // Successors of i (members strictly above members_[i]) are
    // succ_[succ_begin_[i] .. succ_begin_[i+1]), in ascending index order.
    std::vector<std::uint32_t> succ_;
    std::vector<std::uint32_t> succ_begin_;
    std::vector<std::int32_t> match_left_;          // mate of i as a predecessor
    std::vector<std::int32_t> match_right_;         // mate of j as a successor
    std::size_t matching_size_ = 0;
};

std::size_t max_antichain_size(std::span<const Code> members, int ground_n = 0);
std::size_t max_antichain_size(const SetFamily& family);

/// Lowest maximum antichain (see AntichainSolver::lowest).
std::vector<Code> lowest_max_antichain(std::span<const Code> members);

/// Maximum antichain whose ascending code sequence is lexicographically
/// smallest; found by exclusion and recomputation, one matching per candidate.
std::vector<Code> lex_min_max_antichain(std::span<const Code> members);

}  // namespace posetlab
