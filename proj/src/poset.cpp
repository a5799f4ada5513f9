#include "posetlab/poset.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "posetlab/bigint.hpp"
#include "posetlab/errors.hpp"

namespace posetlab {

namespace {

inline ElementMask bit(int i) { return ElementMask{1} << i; }

template <typename F>
void for_each_bit(ElementMask mask, F&& f) {
    while (mask != 0) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        f(i);
    }
}

}  // namespace

Poset::Poset(std::vector<ElementMask> above) : above_(std::move(above)), below_(above_.size(), 0) {
    for (int i = 0; i < size(); ++i) {
        for_each_bit(above_[i], [&](int j) { below_[j] |= bit(i); });
    }
}

Poset Poset::from_relations(int size, const std::vector<std::pair<int, int>>& relations) {
    require(size >= 1 && size <= kMaxPosetSize, ErrorKind::bad_param,
            "poset size must be in 1..64, got " + std::to_string(size));
    std::vector<ElementMask> above(size, 0);
    for (auto [i, j] : relations) {
        require(i >= 0 && i < size && j >= 0 && j < size, ErrorKind::index,
                "relation (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        above[i] |= bit(j);
    }
    for (int k = 0; k < size; ++k) {
        for (int i = 0; i < size; ++i) {
            if ((above[i] >> k) & 1U) above[i] |= above[k];
        }
    }
    for (int i = 0; i < size; ++i) {
        require(((above[i] >> i) & 1U) == 0, ErrorKind::cycle,
                "closure makes element " + std::to_string(i) + " below itself");
    }
    return Poset(std::move(above));
}

ElementMask Poset::all_elements() const noexcept {
    return size() == 64 ? ~ElementMask{0} : bit(size()) - 1;
}

std::vector<std::pair<int, int>> Poset::relations() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i) for_each_bit(above_[i], [&](int j) { out.emplace_back(i, j); });
    return out;
}

std::size_t Poset::relation_count() const {
    std::size_t count = 0;
    for (auto row : above_) count += std::popcount(row);
    return count;
}

Poset Poset::dual() const { return Poset(below_); }

Poset Poset::restrict_to(ElementMask mask) const {
    std::vector<int> index(size(), -1);
    int next = 0;
    for_each_bit(mask, [&](int i) { index[i] = next++; });
    require(next >= 1, ErrorKind::bad_param, "cannot restrict to an empty element set");
    std::vector<ElementMask> rows(next, 0);
    for_each_bit(mask, [&](int i) {
        for_each_bit(above_[i] & mask, [&](int j) { rows[index[i]] |= bit(index[j]); });
    });
    return Poset(std::move(rows));
}

std::vector<int> Poset::linear_extension() const {
    std::vector<int> order;
    order.reserve(size());
    ElementMask placed = 0;
    while (static_cast<int>(order.size()) < size()) {
        for (int i = 0; i < size(); ++i) {
            if (((placed >> i) & 1U) == 0 && (below_[i] & ~placed) == 0) {
                order.push_back(i);
                placed |= bit(i);
                break;
            }
        }
    }
    return order;
}

HasseDiagram hasse(const Poset& poset) {
    HasseDiagram out;
    out.size = poset.size();
    auto covers = upper_covers(poset);
    for (int i = 0; i < poset.size(); ++i) {
        for_each_bit(covers[i], [&](int j) { out.cover_edges.emplace_back(i, j); });
    }
    return out;
}

std::vector<ElementMask> upper_covers(const Poset& poset) {
    std::vector<ElementMask> covers(poset.size(), 0);
    for (int i = 0; i < poset.size(); ++i) {
        ElementMask up = poset.above(i);
        ElementMask indirect = 0;
        for_each_bit(up, [&](int z) { indirect |= poset.above(z); });
        covers[i] = up & ~indirect;
    }
    return covers;
}

std::vector<ElementMask> lower_covers(const Poset& poset) {
    return upper_covers(poset.dual());
}

std::vector<ElementMask> components(const Poset& poset) {
    std::vector<ElementMask> out;
    ElementMask seen = 0;
    for (int start = 0; start < poset.size(); ++start) {
        if ((seen >> start) & 1U) continue;
        // Comparability and Hasse adjacency generate the same components.
        ElementMask comp = bit(start);
        ElementMask frontier = comp;
        while (frontier != 0) {
            ElementMask next = 0;
            for_each_bit(frontier, [&](int i) { next |= poset.above(i) | poset.below(i); });
            frontier = next & ~comp;
            comp |= next;
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

bool is_connected(const Poset& poset) { return components(poset).size() == 1; }

int height(const Poset& poset) {
    std::vector<int> longest(poset.size(), 1);
    int best = 0;
    for (int i : poset.linear_extension()) {
        for_each_bit(poset.below(i), [&](int j) { longest[i] = std::max(longest[i], longest[j] + 1); });
        best = std::max(best, longest[i]);
    }
    return best;
}

const char* to_string(TreeClass tree_class) noexcept {
    switch (tree_class) {
        case TreeClass::not_tree: return "not_tree";
        case TreeClass::tree: return "tree";
        case TreeClass::upward_monotone_tree: return "upward_monotone_tree";
        case TreeClass::downward_monotone_tree: return "downward_monotone_tree";
    }
    return "unknown";
}

TreeClass classify_tree(const Poset& poset) {
    if (poset.size() == 1) return TreeClass::upward_monotone_tree;
    auto edges = hasse(poset).cover_edges;
    if (!is_connected(poset) || static_cast<int>(edges.size()) != poset.size() - 1) {
        return TreeClass::not_tree;
    }
    auto lower = lower_covers(poset);
    auto upper = upper_covers(poset);
    bool upward = std::all_of(lower.begin(), lower.end(), [](ElementMask m) { return std::popcount(m) <= 1; });
    if (upward) return TreeClass::upward_monotone_tree;
    bool downward = std::all_of(upper.begin(), upper.end(), [](ElementMask m) { return std::popcount(m) <= 1; });
    return downward ? TreeClass::downward_monotone_tree : TreeClass::tree;
}

std::vector<LeafRank> leaf_ranks(const Poset& tree) {
    TreeClass cls = classify_tree(tree);
    require(cls == TreeClass::upward_monotone_tree || cls == TreeClass::downward_monotone_tree,
            ErrorKind::not_monotone_tree, "leaf ranks need a monotone tree poset");
    if (tree.size() == 1) return {};
    const bool upward = cls == TreeClass::upward_monotone_tree;
    auto toward_leaves = upward ? upper_covers(tree) : lower_covers(tree);
    auto toward_root = upward ? lower_covers(tree) : upper_covers(tree);
    int root = 0;
    for (int i = 0; i < tree.size(); ++i) {
        if (toward_root[i] == 0) root = i;
    }
    std::vector<int> rank(tree.size(), 0);
    rank[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for_each_bit(toward_leaves[v], [&](int w) {
            rank[w] = rank[v] + 1;
            queue.push_back(w);
        });
    }
    std::vector<LeafRank> out;
    for (int i = 0; i < tree.size(); ++i) {
        int degree = std::popcount(toward_leaves[i]) + std::popcount(toward_root[i]);
        if (i != root && degree == 1) out.push_back({i, rank[i]});
    }
    return out;
}

int x_monotone_formula(const Poset& tree) {
    auto leaves = leaf_ranks(tree);
    const int h = height(tree);
    int total = tree.size() - 1;
    for (const auto& leaf : leaves) total += h - leaf.rank;
    return total;
}

namespace named {

Poset chain(int k) {
    require(k >= 1, ErrorKind::bad_param, "chain needs k >= 1");
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < k; ++i) rel.emplace_back(i, i + 1);
    return Poset::from_relations(k, rel);
}

Poset antichain(int k) {
    require(k >= 1, ErrorKind::bad_param, "antichain needs k >= 1");
    return Poset::from_relations(k, {});
}

Poset complete_multipartite(const std::vector<int>& level_sizes) {
    require(!level_sizes.empty(), ErrorKind::bad_param, "complete multipartite poset needs a level");
    int total = 0;
    for (int r : level_sizes) {
        require(r >= 1, ErrorKind::bad_param, "level multiplicities must be >= 1");
        total += r;
    }
    require(total <= kMaxPosetSize, ErrorKind::bad_param, "too many elements");
    std::vector<std::pair<int, int>> rel;
    int start = 0;
    for (std::size_t level = 0; level + 1 < level_sizes.size(); ++level) {
        int next = start + level_sizes[level];
        for (int i = start; i < next; ++i) {
            for (int j = next; j < next + level_sizes[level + 1]; ++j) rel.emplace_back(i, j);
        }
        start = next;
    }
    return Poset::from_relations(total, rel);
}

Poset vee(int r) { return complete_multipartite({1, r}); }
Poset wedge(int r) { return complete_multipartite({r, 1}); }

Poset diamond(int s) {
    require(s >= 2, ErrorKind::bad_param, "diamond needs s >= 2");
    return complete_multipartite({1, s, 1});
}

Poset butterfly() { return complete_multipartite({2, 2}); }

}  // namespace named

Poset parse_named_poset(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::vector<int> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                int value = std::stoi(item, &used);
                require(used == item.size(), ErrorKind::parse, "bad poset parameter '" + item + "'");
                args.push_back(value);
            } catch (const std::logic_error&) {
                fail(ErrorKind::parse, "bad poset parameter '" + item + "' in '" + text + "'");
            }
        }
    }
    auto one_arg = [&]() {
        require(args.size() == 1, ErrorKind::parse, "'" + text + "' needs exactly one parameter");
        return args[0];
    };
    if (kind == "chain") return named::chain(one_arg());
    if (kind == "antichain") return named::antichain(one_arg());
    if (kind == "vee") return named::vee(one_arg());
    if (kind == "wedge") return named::wedge(one_arg());
    if (kind == "diamond") return named::diamond(one_arg());
    if (kind == "K") return named::complete_multipartite(args);
    if (kind == "butterfly") {
        require(args.empty(), ErrorKind::parse, "butterfly takes no parameters");
        return named::butterfly();
    }
    fail(ErrorKind::parse, "unknown poset name '" + text + "'");
}

DiamondValues m_values(int s) {
    require(s >= 2, ErrorKind::bad_param, "m_values needs s >= 2");
    DiamondValues out;
    // ceil(log2(s + 2)): smallest m with 2^m >= s + 2.
    while ((1LL << out.m_s) < static_cast<long long>(s) + 2) ++out.m_s;
    int m = 1;
    while (binomial(m, (m + 1) / 2) < s) ++m;
    out.m_star_s = m;
    out.window_low = (1LL << (out.m_s - 1)) - 1;
    out.window_high = (1LL << out.m_s) -
                      static_cast<long long>(binomial_u64(out.m_s, (out.m_s + 1) / 2)) - 1;
    out.in_window = s >= out.window_low && s <= out.window_high;
    return out;
}

namespace {

struct Signature {
    int down;
    int up;
    auto operator<=>(const Signature&) const = default;
};

/// Elements sorted by (down-degree, up-degree), with the group boundaries.
std::vector<std::vector<int>> signature_groups(const Poset& poset) {
    std::vector<int> order(poset.size());
    std::iota(order.begin(), order.end(), 0);
    auto sig = [&](int i) { return Signature{std::popcount(poset.below(i)), std::popcount(poset.above(i))}; };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig(a) < sig(b); });
    std::vector<std::vector<int>> groups;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || sig(order[k]) != sig(order[k - 1])) groups.emplace_back();
        groups.back().push_back(order[k]);
    }
    return groups;
}

}  // namespace

std::vector<ElementMask> canonical_form(const Poset& poset) {
    auto groups = signature_groups(poset);
    for (auto& g : groups) std::sort(g.begin(), g.end());
    const int n = poset.size();
    std::vector<int> perm;  // perm[position] = element
    std::vector<ElementMask> best;
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
        if (g == groups.size()) {
            std::vector<int> position(n);
            for (int k = 0; k < n; ++k) position[perm[k]] = k;
            std::vector<ElementMask> key(n, 0);
            for (int k = 0; k < n; ++k) {
                for_each_bit(poset.above(perm[k]), [&](int j) { key[k] |= bit(position[j]); });
            }
            if (best.empty() || key < best) best = std::move(key);
            return;
        }
        auto members = groups[g];
        do {
            perm.insert(perm.end(), members.begin(), members.end());
            rec(g + 1);
            perm.resize(perm.size() - members.size());
        } while (std::next_permutation(members.begin(), members.end()));
    };
    rec(0);
    return best;
}

std::uint64_t automorphism_count(const Poset& poset) {
    const int n = poset.size();
    std::vector<int> image(n, -1);
    ElementMask used = 0;
    std::uint64_t count = 0;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            ++count;
            return;
        }
        for (int c = 0; c < n; ++c) {
            if ((used >> c) & 1U) continue;
            if (std::popcount(poset.above(c)) != std::popcount(poset.above(i)) ||
                std::popcount(poset.below(c)) != std::popcount(poset.below(i))) {
                continue;
            }
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                ok = poset.less(j, i) == poset.less(image[j], c) && poset.less(i, j) == poset.less(c, image[j]);
            }
            if (!ok) continue;
            image[i] = c;
            used |= bit(c);
            rec(i + 1);
            used &= ~bit(c);
        }
    };
    rec(0);
    return count;
}

std::vector<ElementMask> twin_classes(const Poset& poset) {
    std::vector<ElementMask> out;
    ElementMask seen = 0;
    for (int i = 0; i < poset.size(); ++i) {
        if ((seen >> i) & 1U) continue;
        ElementMask cls = 0;
        for (int j = i; j < poset.size(); ++j) {
            if (poset.above(j) == poset.above(i) && poset.below(j) == poset.below(i)) cls |= bit(j);
        }
        seen |= cls;
        out.push_back(cls);
    }
    return out;
}

}  // namespace posetlab
