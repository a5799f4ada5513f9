#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/set_family.hpp"

namespace posetlab {

/// Inclusion probability represented by the integer threshold T in [0, 2^64]:
/// a set is kept when its 64-bit hash is below T, so p = T / 2^64 exactly.
class InclusionProbability {
public:
    /// floor(p 2^64) for a rational p in [0, 1].
    static InclusionProbability rational(const ExactRational& p);
    /// Largest T with T <= 2^64 n^(-gamma), for rational gamma >= 0 (found by
    /// bisection on T^b n^a <= 2^(64 b) with gamma = a/b).
    static InclusionProbability power(int n, const ExactRational& gamma);

    const BigInt& threshold() const noexcept { return threshold_; }
    /// T / 2^64.
    ExactRational value() const;
    double approx() const;
    /// How the probability was requested, e.g. "1/2" or "12^-3/2".
    const std::string& label() const noexcept { return label_; }

    bool includes(std::uint64_t hash) const;

private:
    BigInt threshold_;
    std::string label_;
};

/// Every code of 2^[n] kept independently, membership decided by mix64(seed, code)
/// alone, so any single code can be tested without generating the rest.
SetFamily sample_pnp(int n, const InclusionProbability& p, std::uint64_t seed);
bool sample_contains(const InclusionProbability& p, std::uint64_t seed, Code code);

struct RemovalResult {
    SetFamily sampled;  // middle levels intersected with the sample
    SetFamily family;   // P-free after the removals
    std::size_t removed = 0;
};

/// Repeatedly take the first remaining copy (copies ordered by their sorted code
/// lists) and delete its member lying in the most remaining copies (smallest code
/// on ties), until no copy is left.
SetFamily remove_copies(const SetFamily& family, const Poset& poset, bool induced, std::size_t* removed = nullptr);

/// The e(P)+1 middle levels intersected with P(n, p), made P-free by remove_copies.
RemovalResult removal_construction(int n, const InclusionProbability& p, std::uint64_t seed, const Poset& poset,
                                   bool induced);

inline constexpr std::size_t kExactSampleLimit = 24;

struct FreeInSample {
    std::size_t size = 0;
    SetFamily witness;
    bool exact = false;
};

/// Largest P-free subfamily of the sample: exact for the two-element chain (a
/// largest antichain) and for samples of at most kExactSampleLimit sets;
/// otherwise the heuristic below.
FreeInSample largest_free_in_sample(const SetFamily& sample, const Poset& poset, bool induced);

/// The better of the sample's best window of e(P) consecutive levels and the
/// sample's e(P)+1 middle levels, each passed through remove_copies. Flagged
/// exact only when nothing had to be removed from the sample.
FreeInSample heuristic_free_in_sample(const SetFamily& sample, const Poset& poset, bool induced);

struct SweepRow {
    int n = 0;
    ExactRational gamma;
    InclusionProbability p = InclusionProbability::rational(0);
    std::uint64_t seed = 0;
    std::size_t size = 0;
    /// size / (p C(n, floor(n/2))).
    double normalized = 0;
    bool exact = false;
};

struct SweepSummary {
    int n = 0;
    ExactRational gamma;
    std::size_t seeds = 0;
    double mean_normalized = 0;
    /// "below", "at" or "above": gamma against d(P).
    std::string regime;
};

struct SweepTable {
    ExactRational d;
    std::vector<SweepRow> rows;
    std::vector<SweepSummary> summary;
};

/// largest_free_in_sample over P(n, n^-gamma) for every n, gamma and seed.
SweepTable threshold_sweep(const Poset& poset, bool induced, const std::vector<int>& ns,
                           const std::vector<ExactRational>& gammas, const std::vector<std::uint64_t>& seeds);

}  // namespace posetlab
