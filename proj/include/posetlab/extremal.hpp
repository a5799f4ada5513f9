#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/set_family.hpp"

namespace posetlab {

inline constexpr int kMaxParamPoset = 16;
inline constexpr int kMaxSubposetSearch = 8;

/// A copy of a connected poset whose set sizes fit in `levels` consecutive
/// levels. Element i maps to sets[i] (sorted, 1-based ground elements).
struct LevelEmbedding {
    int levels = 0;
    int span = 0;  // |union| - |intersection|
    std::vector<std::vector<int>> sets;
};

/// Some (induced) copy of a connected poset inside `levels` consecutive levels of
/// 2^[N] for N large enough, or nothing when none exists.
///
/// Only relative sizes matter, so the search works on an unbounded ground set:
/// ground elements are grouped by which placed sets contain them and a new set
/// picks how many elements of each group it takes, which removes the symmetry
/// between ground elements. The first placed set has (|P|-1)(levels-1)
/// elements; every copy reduces to one of that shape by dropping or adding
/// elements common to all of its sets.
std::optional<LevelEmbedding> embed_in_levels(const Poset& poset, int levels, bool induced);

/// The copy of largest span inside `levels` consecutive levels (branch and bound).
/// Throws BadParam when the poset does not fit.
LevelEmbedding widest_embedding(const Poset& poset, int levels, bool induced);

/// Largest m such that m consecutive levels hold no (induced) copy. For a
/// disconnected poset this is the largest value over its components.
int e_param(const Poset& poset, bool induced);

/// Largest span of an (induced) copy inside e+1 consecutive levels. Requires a
/// connected poset with at least two elements.
int x_param(const Poset& poset, bool induced);

/// Minimum of x(Q)/(|Q|-1) over connected subposets Q (at least two elements)
/// with e(Q) = e(P). Non-induced mode ranges over weak subposets (sub-orders of
/// induced restrictions), induced mode over induced restrictions only.
ExactRational d_param(const Poset& poset, bool induced);

struct PosetParams {
    int e = 0;
    int e_star = 0;
    std::optional<int> x;
    std::optional<int> x_star;
    std::optional<ExactRational> d;
    std::optional<ExactRational> d_star;
};

/// e and e* always; x and x* for connected posets with at least two elements;
/// d and d* when additionally `with_d` and |P| <= kMaxSubposetSearch.
PosetParams poset_params(const Poset& poset, bool with_d);

inline constexpr std::size_t kMaxCountedFamily = std::size_t{1} << 18;

/// Copies of P in the e(P)+1 middle levels of 2^[n].
BigInt m_count(int n, const Poset& poset, bool induced);

struct LaResult {
    std::size_t size = 0;
    SetFamily witness;
};

/// Largest P-free subfamily of `candidates` by depth-first search: candidates are
/// tried in the given order, each one kept only if no copy passes through it,
/// and a branch dies once (current + remaining) cannot beat the best so far.
std::vector<Code> largest_free_subfamily(std::span<const Code> candidates, int n, const Poset& poset,
                                         bool induced);

/// La(n, P) with a witness: n <= 5 in general, n <= 12 for the two-element chain
/// (a largest antichain of the whole cube).
LaResult la_exact(int n, const Poset& poset, bool induced);

/// Fewest copies among all m-element subfamilies of 2^[n], n <= 4.
BigInt min_copies(int n, const Poset& poset, std::size_t m, bool induced);

/// Number of P-free subfamilies of 2^[n]: n <= 4, or n = 5 for the two-element
/// chain and for vees.
BigInt count_free_families(int n, const Poset& poset, bool induced);

enum class ProbeGenerator {
    centered,       // the sets closest to the middle
    middle_random,  // e middle levels plus random sets from the rest
    level_shifted,  // consecutive full levels starting one below the middle window
};

ProbeGenerator parse_probe_generator(const std::string& name);
const char* to_string(ProbeGenerator generator) noexcept;

/// Family of the given size built by a probe generator (seed only matters for
/// middle_random).
SetFamily probe_family(int n, int e, std::size_t size, ProbeGenerator generator, std::uint64_t seed);

struct ProbeRow {
    ProbeGenerator generator = ProbeGenerator::centered;
    std::uint64_t trial = 0;
    std::size_t size = 0;
    BigInt copies;
    /// copies / (n^x C(n, floor(n/2))).
    ExactRational ratio;
};

struct ProbeReport {
    int n = 0;
    int e = 0;
    int x = 0;
    std::vector<ProbeRow> rows;
};

/// Copy counts in families of size floor((e + excess) C(n, floor(n/2))) from each
/// generator; middle_random runs `trials` seeds, the others once. n <= 14.
ProbeReport supersat_probe(int n, const Poset& poset, const ExactRational& excess, std::size_t trials,
                           const std::vector<ProbeGenerator>& generators, bool induced, std::uint64_t seed);

}  // namespace posetlab
