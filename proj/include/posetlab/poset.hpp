#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace posetlab {

using ElementMask = std::uint64_t;

inline constexpr int kMaxPosetSize = 64;

/// Finite strict partial order on elements 0..size-1 (size <= 64). Each row
/// is a bitmask of the elements strictly above the row's element. Values are
/// immutable once built.
class Poset {
public:
    /// Transitive closure of `relations`; pairs (i, j) mean i < j.
    static Poset from_relations(int size, const std::vector<std::pair<int, int>>& relations);

    int size() const noexcept { return static_cast<int>(above_.size()); }
    bool less(int i, int j) const noexcept { return (above_[i] >> j) & 1U; }
    bool comparable(int i, int j) const noexcept { return less(i, j) || less(j, i); }
    ElementMask above(int i) const noexcept { return above_[i]; }
    ElementMask below(int i) const noexcept { return below_[i]; }
    ElementMask all_elements() const noexcept;

    /// All strict relations (i, j) with i < j in the order, sorted.
    std::vector<std::pair<int, int>> relations() const;
    std::size_t relation_count() const;

    /// Reverses every relation.
    Poset dual() const;
    /// Induced subposet on the elements of `mask`, relabelled in index order.
    Poset restrict_to(ElementMask mask) const;

    /// Elements in an order where every element follows all of its predecessors.
    std::vector<int> linear_extension() const;

    bool operator==(const Poset& other) const { return above_ == other.above_; }

private:
    explicit Poset(std::vector<ElementMask> above);

    std::vector<ElementMask> above_;
    std::vector<ElementMask> below_;
};

struct HasseDiagram {
    int size = 0;
    /// (i, j): j covers i.
    std::vector<std::pair<int, int>> cover_edges;
};

HasseDiagram hasse(const Poset& poset);

/// Lower covers of each element, as masks (element j is a lower cover of i).
std::vector<ElementMask> lower_covers(const Poset& poset);
std::vector<ElementMask> upper_covers(const Poset& poset);

bool is_connected(const Poset& poset);
/// Connected components of the undirected Hasse diagram, as element masks.
std::vector<ElementMask> components(const Poset& poset);

/// Number of elements in a longest chain.
int height(const Poset& poset);

enum class TreeClass { not_tree, tree, upward_monotone_tree, downward_monotone_tree };

const char* to_string(TreeClass tree_class) noexcept;

TreeClass classify_tree(const Poset& poset);

struct LeafRank {
    int leaf;
    int rank;
    bool operator==(const LeafRank&) const = default;
};

/// Leaves of a monotone tree with their rank (root has rank 1).
std::vector<LeafRank> leaf_ranks(const Poset& tree);

/// |T| - 1 + sum over leaves of (h(T) - rank(leaf)) for a monotone tree T.
int x_monotone_formula(const Poset& tree);

namespace named {

Poset chain(int k);
Poset antichain(int k);
/// One bottom below r tops.
Poset vee(int r);
/// r bottoms below one top.
Poset wedge(int r);
/// Levels of the given sizes; every element of level i is below every element of level i' > i.
Poset complete_multipartite(const std::vector<int>& level_sizes);
/// a < b_1..b_s < c, with a = 0, b_i = i, c = s + 1.
Poset diamond(int s);
/// a, b < c, d.
Poset butterfly();

}  // namespace named

/// Parses CLI names such as "chain:3", "vee:2", "wedge:2", "diamond:4", "K:2,1,2",
/// "butterfly" and "antichain:3".
Poset parse_named_poset(const std::string& text);

struct DiamondValues {
    int m_s = 0;
    int m_star_s = 0;
    /// Bounds of the window [2^(m_s-1) - 1, 2^m_s - C(m_s, ceil(m_s/2)) - 1].
    long long window_low = 0;
    long long window_high = 0;
    bool in_window = false;
};

DiamondValues m_values(int s);

/// Canonical key of the isomorphism class (brute force over degree-respecting
/// relabellings; meant for posets with at most ~10 elements).
std::vector<ElementMask> canonical_form(const Poset& poset);

/// Number of order automorphisms.
std::uint64_t automorphism_count(const Poset& poset);

/// Groups of elements with identical up- and down-sets (interchangeable twins).
std::vector<ElementMask> twin_classes(const Poset& poset);

}  // namespace posetlab
