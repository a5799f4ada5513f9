#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/set_family.hpp"

namespace posetlab {

struct CopyCount {
    /// Distinct subfamilies admitting a witnessing bijection.
    BigInt copies;
    /// Witnessing bijections.
    BigInt embeddings;
};

/// One copy: element i of the pattern maps to assignment[i].
struct CopyRecord {
    std::vector<Code> assignment;
    Code bottom = 0;  // intersection of the copy
    Code top = 0;     // union of the copy

    int span() const { return set_size(top) - set_size(bottom); }
};

CopyRecord make_copy_record(std::span<const Code> assignment);

/// Backtracking search for order embeddings of a pattern poset into a family.
/// Elements are placed most-constrained first; an element with placed
/// comparable neighbours only tries sets between the union of the images below
/// it and the intersection of the images above it.
class EmbeddingSearch {
public:
    /// Receives the image of each pattern element; return false to stop.
    using Visitor = std::function<bool(std::span<const Code>)>;

    EmbeddingSearch(Poset pattern, bool induced);

    const Poset& pattern() const noexcept { return pattern_; }
    bool induced() const noexcept { return induced_; }

    /// Visits every embedding; returns false if the visitor stopped the search.
    bool run(const SetFamily& family, const Visitor& visit) const;
    /// Visits the embeddings that send `element` to `code`.
    bool run_pinned(const SetFamily& family, int element, Code code, const Visitor& visit) const;

private:
    struct Step {
        int element;
        std::vector<int> below;  // earlier steps' elements below this one
        std::vector<int> above;
        std::vector<int> unrelated;
    };
    struct State;

    std::vector<Step> plan(int first) const;
    bool descend(State& state, std::size_t depth) const;

    Poset pattern_;
    bool induced_;
    std::vector<std::vector<Step>> plans_;  // one per starting element
};

/// Turns a stream of embeddings into subfamily counts. An image subfamily with
/// k witnessing bijections is reported k times, so copies = sum over k of
/// (embeddings with multiplicity k) / k.
class CopyTally {
public:
    CopyTally(const Poset& pattern, bool induced);

    void add(std::span<const Code> image);
    CopyCount result() const;
    /// Forgets the tallied embeddings but keeps the multiplicity cache.
    void clear() { by_multiplicity_.clear(); }

private:
    std::uint64_t multiplicity(std::span<const Code> image);

    const Poset* pattern_;
    bool induced_;
    std::uint64_t automorphisms_;
    std::map<std::vector<ElementMask>, std::uint64_t> cache_;
    std::map<std::uint64_t, unsigned __int128> by_multiplicity_;
};

/// Counting against one pattern many times (search plans, automorphism count and
/// multiplicity cache are kept between calls).
class CopyCounter {
public:
    CopyCounter(Poset pattern, bool induced);
    CopyCounter(const CopyCounter&) = delete;
    CopyCounter& operator=(const CopyCounter&) = delete;
    const Poset& pattern() const noexcept { return search_.pattern(); }
    CopyCount count(const SetFamily& family);
    CopyCount count_through(const SetFamily& family, Code code);
    bool has_copy(const SetFamily& family) const;
    bool has_copy_through(const SetFamily& family, Code code) const;

private:
    EmbeddingSearch search_;
    CopyTally tally_;
};

CopyCount count_copies(const Poset& pattern, const SetFamily& family, bool induced);
/// Copies that contain the set `code` (zero when `code` is not a member).
CopyCount count_copies_through(const Poset& pattern, const SetFamily& family, bool induced, Code code);

bool is_p_free(const Poset& pattern, const SetFamily& family, bool induced);
std::optional<CopyRecord> find_copy(const Poset& pattern, const SetFamily& family, bool induced);

/// Members of the family containing `code` (including `code` itself).
SetFamily up_set(const SetFamily& family, Code code);
/// Members of the family strictly containing `code`.
std::vector<Code> strict_up_members(const SetFamily& family, Code code);
std::vector<Code> strict_down_members(const SetFamily& family, Code code);

/// Largest antichain among the members containing `code`.
std::size_t g_weight(const SetFamily& family, Code code);
/// Largest antichain among the members strictly containing `code`: `code` is
/// then the bottom of an induced vee with that many tops.
std::size_t strict_up_weight(const SetFamily& family, Code code);

struct UpWeight {
    Code witness = 0;
    std::size_t weight = 0;
};

/// Member with the largest strict-superset weight, smallest code on ties.
UpWeight max_up_weight(const SetFamily& family);

struct InducedVee {
    Code bottom = 0;
    std::vector<Code> tops;
};

/// An induced vee with `width` tops, if the family has one.
std::optional<InducedVee> find_induced_vee(const SetFamily& family, std::size_t width);

struct DuDecomposition {
    SetFamily down;  // members not the top of an induced wedge with s bottoms
    SetFamily up;    // members not the bottom of an induced vee with t tops
    SetFamily rest;
};

DuDecomposition du_decomposition(const SetFamily& family, std::size_t s, std::size_t t);

}  // namespace posetlab
