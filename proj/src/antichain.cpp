#include "posetlab/antichain.hpp"

#include <algorithm>
#include <limits>

#include "posetlab/errors.hpp"

namespace posetlab {

namespace {
constexpr std::int32_t kFree = -1;
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
}  // namespace

AntichainSolver::AntichainSolver(std::span<const Code> members, int ground_n)
    : members_(members.begin(), members.end()) {
    std::sort(members_.begin(), members_.end(), [](Code a, Code b) {
        return set_size(a) != set_size(b) ? set_size(a) < set_size(b) : a < b;
    });
    build_edges(ground_n);
    solve();
}

void AntichainSolver::build_edges(int ground_n) {
    const std::size_t m = members_.size();
    succ_.clear();
    succ_begin_.assign(1, 0);
    succ_begin_.reserve(m + 1);
    bool enumerate = false;
    std::vector<std::int32_t> index;
    Code full = 0;
    if (ground_n > 0 && m > 64) {
        full = static_cast<Code>((std::uint64_t{1} << ground_n) - 1);
        double enumerate_cost = 0;
        for (Code c : members_) enumerate_cost += static_cast<double>(std::uint64_t{1} << set_size(full & ~c));
        enumerate = enumerate_cost < 0.5 * static_cast<double>(m) * static_cast<double>(m);
        if (enumerate) {
            index.assign(std::size_t{1} << ground_n, -1);
            for (std::size_t i = 0; i < m; ++i) index[members_[i]] = static_cast<std::int32_t>(i);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Code a = members_[i];
        const auto first = succ_.size();
        if (enumerate) {
            const Code rest = full & ~a;
            for (Code add = rest; add != 0; add = (add - 1) & rest) {
                const auto j = index[a | add];
                if (j >= 0) succ_.push_back(static_cast<std::uint32_t>(j));
            }
            std::sort(succ_.begin() + static_cast<std::ptrdiff_t>(first), succ_.end());
        } else {
            // Members are sorted by size, so successors only appear later.
            const int sa = set_size(a);
            for (std::size_t j = i + 1; j < m; ++j) {
                const Code b = members_[j];
                if (set_size(b) > sa && is_subset(a, b)) succ_.push_back(static_cast<std::uint32_t>(j));
            }
        }
        succ_begin_.push_back(static_cast<std::uint32_t>(succ_.size()));
    }
}

void AntichainSolver::solve() {
    const std::size_t m = members_.size();
    match_left_.assign(m, kFree);
    match_right_.assign(m, kFree);
    matching_size_ = 0;
    // Greedy seed: successors are already in ascending size order.
    for (std::size_t i = 0; i < m; ++i) {
        for (auto j : successors(i)) {
            if (match_right_[j] == kFree) {
                match_left_[i] = static_cast<std::int32_t>(j);
                match_right_[j] = static_cast<std::int32_t>(i);
                ++matching_size_;
                break;
            }
        }
    }

    std::vector<std::uint32_t> dist(m);
    std::vector<std::uint32_t> queue;
    queue.reserve(m);
    std::vector<std::size_t> cursor(m);
    std::vector<std::uint32_t> stack;

    while (true) {
        // BFS layering from free left vertices.
        queue.clear();
        for (std::size_t i = 0; i < m; ++i) {
            if (match_left_[i] == kFree) {
                dist[i] = 0;
                queue.push_back(static_cast<std::uint32_t>(i));
            } else {
                dist[i] = kInf;
            }
        }
        bool found = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto i = queue[head];
            for (auto j : successors(i)) {
                const auto mate = match_right_[j];
                if (mate == kFree) {
                    found = true;
                } else if (dist[mate] == kInf) {
                    dist[mate] = dist[i] + 1;
                    queue.push_back(static_cast<std::uint32_t>(mate));
                }
            }
        }
        if (!found) break;

        // Iterative DFS for vertex-disjoint shortest augmenting paths.
        std::fill(cursor.begin(), cursor.end(), 0);
        for (std::size_t root = 0; root < m; ++root) {
            if (match_left_[root] != kFree) continue;
            stack.assign(1, static_cast<std::uint32_t>(root));
            while (!stack.empty()) {
                const auto i = stack.back();
                bool advanced = false;
                const auto succ = successors(i);
                while (cursor[i] < succ.size()) {
                    const auto j = succ[cursor[i]];
                    const auto mate = match_right_[j];
                    if (mate == kFree) {
                        // Augment along the stack.
                        for (std::size_t s = stack.size(); s-- > 0;) {
                            const auto li = stack[s];
                            const auto rj = successors(li)[cursor[li]];
                            match_left_[li] = static_cast<std::int32_t>(rj);
                            match_right_[rj] = static_cast<std::int32_t>(li);
                        }
                        ++matching_size_;
                        for (auto li : stack) dist[li] = kInf;
                        stack.clear();
                        advanced = true;
                        break;
                    }
                    if (dist[mate] == dist[i] + 1) {
                        stack.push_back(static_cast<std::uint32_t>(mate));
                        advanced = true;
                        break;
                    }
                    ++cursor[i];
                }
                if (!advanced) {
                    dist[i] = kInf;
                    stack.pop_back();
                    if (!stack.empty()) ++cursor[stack.back()];
                }
            }
        }
    }
}

std::vector<Code> AntichainSolver::lowest() {
    const std::size_t m = members_.size();
    std::vector<std::vector<std::uint32_t>> pred(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (auto j : successors(i)) pred[j].push_back(static_cast<std::uint32_t>(i));
    }
    // Alternating search from unmatched right vertices (chain bottoms): right -> left
    // over non-matching edges, left -> right over the matching.
    std::vector<char> in_right(m, 0);
    std::vector<char> in_left(m, 0);
    std::vector<std::uint32_t> queue;
    for (std::size_t j = 0; j < m; ++j) {
        if (match_right_[j] == kFree) {
            in_right[j] = 1;
            queue.push_back(static_cast<std::uint32_t>(j));
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto j = queue[head];
        for (auto i : pred[j]) {
            if (in_left[i] || match_left_[i] == static_cast<std::int32_t>(j)) continue;
            in_left[i] = 1;
            const auto next = match_left_[i];
            if (next != kFree && !in_right[next]) {
                in_right[next] = 1;
                queue.push_back(static_cast<std::uint32_t>(next));
            }
        }
    }
    std::vector<Code> out;
    for (std::size_t x = 0; x < m; ++x) {
        if (in_right[x] && !in_left[x]) out.push_back(members_[x]);
    }
    std::sort(out.begin(), out.end());
    if (out.size() != size()) {
        fail(ErrorKind::invariant_violation, "Konig construction produced an antichain of the wrong size");
    }
    return out;
}

std::vector<std::vector<Code>> AntichainSolver::chain_cover() const {
    std::vector<std::vector<Code>> chains;
    for (std::size_t j = 0; j < members_.size(); ++j) {
        if (match_right_[j] != kFree) continue;
        std::vector<Code> chain;
        for (std::int32_t x = static_cast<std::int32_t>(j); x != kFree; x = match_left_[x]) {
            chain.push_back(members_[x]);
        }
        chains.push_back(std::move(chain));
    }
    return chains;
}

std::size_t max_antichain_size(std::span<const Code> members, int ground_n) {
    if (members.empty()) return 0;
    return AntichainSolver(members, ground_n).size();
}

std::size_t max_antichain_size(const SetFamily& family) {
    auto members = family.members();
    return max_antichain_size(members, family.ground_n());
}

std::vector<Code> lowest_max_antichain(std::span<const Code> members) {
    if (members.empty()) return {};
    return AntichainSolver(members).lowest();
}

std::vector<Code> lex_min_max_antichain(std::span<const Code> members) {
    std::vector<Code> pool(members.begin(), members.end());
    std::sort(pool.begin(), pool.end());
    std::size_t needed = max_antichain_size(pool);
    std::vector<Code> chosen;
    while (needed > 0) {
        for (std::size_t k = 0; k < pool.size(); ++k) {
            const Code c = pool[k];
            std::vector<Code> rest;
            for (std::size_t l = k + 1; l < pool.size(); ++l) {
                if (!is_subset(c, pool[l]) && !is_subset(pool[l], c)) rest.push_back(pool[l]);
            }
            if (1 + max_antichain_size(rest) == needed) {
                chosen.push_back(c);
                pool = std::move(rest);
                --needed;
                break;
            }
        }
    }
    return chosen;
}

}  // namespace posetlab
