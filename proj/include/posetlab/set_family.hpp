#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "posetlab/bigint.hpp"

namespace posetlab {

/// Subset of [n] as a bit pattern: bit i set means element i+1 is present.
using Code = std::uint32_t;

inline constexpr int kMaxGroundSize = 20;

inline int set_size(Code code) noexcept { return std::popcount(code); }
inline bool is_subset(Code a, Code b) noexcept { return (a & ~b) == 0; }
inline bool is_strict_subset(Code a, Code b) noexcept { return a != b && is_subset(a, b); }

/// A family F of subsets of [n], stored as a membership bitmap over all 2^n codes.
class SetFamily {
public:
    SetFamily() : SetFamily(1) {}
    explicit SetFamily(int ground_n);

    static SetFamily full(int ground_n);
    static SetFamily from_codes(int ground_n, std::span<const Code> codes);
    /// Sets given as lists of 1-based elements.
    static SetFamily from_sets(int ground_n, const std::vector<std::vector<int>>& sets);

    int ground_n() const noexcept { return ground_n_; }
    Code universe() const noexcept { return static_cast<Code>((std::uint64_t{1} << ground_n_) - 1); }
    std::uint32_t code_count() const noexcept { return std::uint32_t{1} << ground_n_; }
    std::size_t size() const noexcept { return cardinality_; }
    bool empty() const noexcept { return cardinality_ == 0; }

    bool contains(Code code) const noexcept {
        return code < code_count() && ((words_[code >> 6] >> (code & 63)) & 1U);
    }
    void insert(Code code);
    void erase(Code code);

    /// Members in ascending code order.
    std::vector<Code> members() const;
    /// Member sets as sorted lists of 1-based elements, in ascending code order.
    std::vector<std::vector<int>> member_sets() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                f(static_cast<Code>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    /// Number of members in each level 0..n.
    std::vector<std::size_t> level_counts() const;

    SetFamily& operator|=(const SetFamily& other);
    SetFamily& operator&=(const SetFamily& other);
    /// Removes the members of `other`.
    SetFamily& operator-=(const SetFamily& other);

    bool operator==(const SetFamily& other) const {
        return ground_n_ == other.ground_n_ && words_ == other.words_;
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    /// Byte n followed by ceil(2^n / 8) bitmap bytes; bit j of byte i is code 8i + j.
    std::vector<std::uint8_t> to_binary() const;
    static SetFamily from_binary(std::span<const std::uint8_t> bytes);

private:
    void recount();

    int ground_n_;
    std::vector<std::uint64_t> words_;
    std::size_t cardinality_ = 0;
};

SetFamily operator|(SetFamily a, const SetFamily& b);
SetFamily operator&(SetFamily a, const SetFamily& b);
SetFamily operator-(SetFamily a, const SetFamily& b);

/// All subsets whose size is listed in `levels`.
SetFamily level_family(int n, const std::vector<int>& levels);

/// First level of the m consecutive middle levels. When two windows are
/// equally central the lower one wins: (4, 2) gives levels 1 and 2.
int middle_levels_start(int n, int m);
SetFamily middle_levels(int n, int m);

/// m sets closest to size n/2; lower level first on ties, then ascending code.
SetFamily centered_family(int n, std::uint64_t m);

/// Sum over members of 1 / C(n, |F|).
ExactRational lubell(const SetFamily& family);

/// All ordered pairs (F, G) of members with F a strict subset of G.
std::vector<std::pair<Code, Code>> comparability_digraph(const SetFamily& family);
std::uint64_t comparable_pair_count(const SetFamily& family);

/// Number of k-element nested subfamilies F_1 < ... < F_k of the family.
BigInt count_k_chains(const SetFamily& family, int k);

/// Calls f(sub) for every member that is a strict subset of `code`.
template <typename F>
void for_each_member_strict_subset(const SetFamily& family, Code code, F&& f) {
    if (code == 0) return;
    for (Code sub = (code - 1) & code;; sub = (sub - 1) & code) {
        if (family.contains(sub)) f(sub);
        if (sub == 0) break;
    }
}

/// Calls f(sup) for every member that is a strict superset of `code`.
template <typename F>
void for_each_member_strict_superset(const SetFamily& family, Code code, F&& f) {
    const Code rest = family.universe() & ~code;
    if (rest == 0) return;
    for (Code add = rest;; add = (add - 1) & rest) {
        if (add == 0) break;
        if (family.contains(code | add)) f(code | add);
    }
}

}  // namespace posetlab
