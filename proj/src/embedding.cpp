#include "posetlab/embedding.hpp"

#include <algorithm>
#include <bit>

#include "posetlab/antichain.hpp"
#include "posetlab/errors.hpp"

namespace posetlab {

CopyRecord make_copy_record(std::span<const Code> assignment) {
    CopyRecord record;
    record.assignment.assign(assignment.begin(), assignment.end());
    record.bottom = ~Code{0};
    record.top = 0;
    for (Code c : assignment) {
        record.bottom &= c;
        record.top |= c;
    }
    if (assignment.empty()) record.bottom = 0;
    return record;
}

struct EmbeddingSearch::State {
    const SetFamily* family;
    const std::vector<Step>* steps;
    std::vector<Code> members;  // only filled when some step has no placed neighbour
    std::vector<Code> image;
    const Visitor* visit;
    int pinned_element = -1;
    Code pinned_code = 0;
};

EmbeddingSearch::EmbeddingSearch(Poset pattern, bool induced) : pattern_(std::move(pattern)), induced_(induced) {
    plans_.reserve(pattern_.size());
    for (int first = 0; first < pattern_.size(); ++first) plans_.push_back(plan(first));
}

std::vector<EmbeddingSearch::Step> EmbeddingSearch::plan(int first) const {
    const int k = pattern_.size();
    std::vector<Step> steps;
    ElementMask placed = 0;
    int next = first;
    while (true) {
        Step step;
        step.element = next;
        for (const auto& prior : steps) {
            const int a = prior.element;
            if (pattern_.less(a, next)) {
                step.below.push_back(a);
            } else if (pattern_.less(next, a)) {
                step.above.push_back(a);
            } else {
                step.unrelated.push_back(a);
            }
        }
        steps.push_back(std::move(step));
        placed |= ElementMask{1} << next;
        if (static_cast<int>(steps.size()) == k) break;
        // Most placed comparable neighbours first, then most comparabilities.
        int best = -1;
        int best_placed = -1;
        int best_total = -1;
        for (int i = 0; i < k; ++i) {
            if ((placed >> i) & 1U) continue;
            const ElementMask related = pattern_.above(i) | pattern_.below(i);
            const int on = std::popcount(related & placed);
            const int total = std::popcount(related);
            if (on > best_placed || (on == best_placed && total > best_total)) {
                best = i;
                best_placed = on;
                best_total = total;
            }
        }
        next = best;
    }
    return steps;
}

bool EmbeddingSearch::descend(State& state, std::size_t depth) const {
    const auto& steps = *state.steps;
    if (depth == steps.size()) return (*state.visit)(state.image);
    const Step& step = steps[depth];
    const SetFamily& family = *state.family;

    Code lo = 0;
    Code hi = family.universe();
    for (int a : step.below) lo |= state.image[a];
    for (int a : step.above) hi &= state.image[a];
    if (!is_subset(lo, hi)) return true;

    auto try_candidate = [&](Code c) -> bool {
        for (int a : step.below) {
            if (c == state.image[a]) return true;
        }
        for (int a : step.above) {
            if (c == state.image[a]) return true;
        }
        for (int a : step.unrelated) {
            const Code other = state.image[a];
            if (c == other) return true;
            if (induced_ && (is_subset(c, other) || is_subset(other, c))) return true;
        }
        state.image[step.element] = c;
        return descend(state, depth + 1);
    };

    if (depth == 0 && state.pinned_element >= 0) {
        if (!family.contains(state.pinned_code)) return true;
        return try_candidate(state.pinned_code);
    }

    if (step.below.empty() && step.above.empty()) {
        for (Code c : state.members) {
            if (!try_candidate(c)) return false;
        }
        return true;
    }

    const Code free = hi & ~lo;
    const int free_bits = std::popcount(free);
    if (free_bits <= 20 && (std::size_t{1} << free_bits) <= 4 * family.size() + 64) {
        for (Code sub = free;; sub = (sub - 1) & free) {
            const Code c = lo | sub;
            if (family.contains(c) && !try_candidate(c)) return false;
            if (sub == 0) break;
        }
        return true;
    }
    if (state.members.empty()) state.members = family.members();
    for (Code c : state.members) {
        if (is_subset(lo, c) && is_subset(c, hi) && !try_candidate(c)) return false;
    }
    return true;
}

bool EmbeddingSearch::run(const SetFamily& family, const Visitor& visit) const {
    if (family.size() < static_cast<std::size_t>(pattern_.size())) return true;
    State state;
    state.family = &family;
    // Start from the element with the most comparabilities.
    int first = 0;
    for (int i = 1; i < pattern_.size(); ++i) {
        if (std::popcount(pattern_.above(i) | pattern_.below(i)) >
            std::popcount(pattern_.above(first) | pattern_.below(first))) {
            first = i;
        }
    }
    state.steps = &plans_[first];
    state.members = family.members();
    state.image.assign(pattern_.size(), 0);
    state.visit = &visit;
    return descend(state, 0);
}

bool EmbeddingSearch::run_pinned(const SetFamily& family, int element, Code code, const Visitor& visit) const {
    if (element < 0 || element >= pattern_.size()) fail(ErrorKind::index, "pinned element out of range");
    if (family.size() < static_cast<std::size_t>(pattern_.size()) || !family.contains(code)) return true;
    State state;
    state.family = &family;
    state.steps = &plans_[element];
    for (const auto& step : *state.steps) {
        if (step.below.empty() && step.above.empty() && step.element != element) {
            state.members = family.members();
            break;
        }
    }
    state.image.assign(pattern_.size(), 0);
    state.visit = &visit;
    state.pinned_element = element;
    state.pinned_code = code;
    return descend(state, 0);
}

CopyTally::CopyTally(const Poset& pattern, bool induced)
    : pattern_(&pattern), induced_(induced), automorphisms_(automorphism_count(pattern)) {}

std::uint64_t CopyTally::multiplicity(std::span<const Code> image) {
    const int k = pattern_->size();
    std::vector<ElementMask> rows(k, 0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (is_strict_subset(image[i], image[j])) rows[i] |= ElementMask{1} << j;
        }
    }
    bool same = true;
    for (int i = 0; i < k && same; ++i) same = rows[i] == pattern_->above(i);
    if (same) return automorphisms_;

    auto it = cache_.find(rows);
    if (it != cache_.end()) return it->second;
    // Bijections sigma with p < q in the pattern implying sigma(p) < sigma(q) in rows.
    const auto order = pattern_->linear_extension();
    std::vector<int> sigma(k, -1);
    ElementMask used = 0;
    std::uint64_t count = 0;
    std::function<void(int)> rec = [&](int depth) {
        if (depth == k) {
            ++count;
            return;
        }
        const int p = order[depth];
        for (int c = 0; c < k; ++c) {
            if ((used >> c) & 1U) continue;
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d) {
                const int a = order[d];
                if (pattern_->less(a, p)) ok = (rows[sigma[a]] >> c) & 1U;
            }
            if (!ok) continue;
            sigma[p] = c;
            used |= ElementMask{1} << c;
            rec(depth + 1);
            used &= ~(ElementMask{1} << c);
        }
    };
    rec(0);
    cache_.emplace(std::move(rows), count);
    return count;
}

void CopyTally::add(std::span<const Code> image) {
    const std::uint64_t k = induced_ ? automorphisms_ : multiplicity(image);
    by_multiplicity_[k] += 1;
}

CopyCount CopyTally::result() const {
    auto to_big = [](unsigned __int128 v) {
        BigInt out = static_cast<std::uint64_t>(v >> 64);
        out <<= 64;
        out += static_cast<std::uint64_t>(v);
        return out;
    };
    CopyCount out{0, 0};
    for (const auto& [k, count] : by_multiplicity_) {
        if (count % k != 0) {
            fail(ErrorKind::invariant_violation, "embedding total not divisible by its multiplicity");
        }
        out.embeddings += to_big(count);
        out.copies += to_big(count / k);
    }
    return out;
}

CopyCounter::CopyCounter(Poset pattern, bool induced)
    : search_(std::move(pattern), induced), tally_(search_.pattern(), induced) {}

CopyCount CopyCounter::count(const SetFamily& family) {
    tally_.clear();
    search_.run(family, [&](std::span<const Code> image) {
        tally_.add(image);
        return true;
    });
    return tally_.result();
}

CopyCount CopyCounter::count_through(const SetFamily& family, Code code) {
    tally_.clear();
    for (int element = 0; element < pattern().size(); ++element) {
        search_.run_pinned(family, element, code, [&](std::span<const Code> image) {
            tally_.add(image);
            return true;
        });
    }
    return tally_.result();
}

bool CopyCounter::has_copy(const SetFamily& family) const {
    return !search_.run(family, [](std::span<const Code>) { return false; });
}

bool CopyCounter::has_copy_through(const SetFamily& family, Code code) const {
    for (int element = 0; element < pattern().size(); ++element) {
        if (!search_.run_pinned(family, element, code, [](std::span<const Code>) { return false; })) return true;
    }
    return false;
}

CopyCount count_copies(const Poset& pattern, const SetFamily& family, bool induced) {
    EmbeddingSearch search(pattern, induced);
    CopyTally tally(pattern, induced);
    search.run(family, [&](std::span<const Code> image) {
        tally.add(image);
        return true;
    });
    return tally.result();
}

CopyCount count_copies_through(const Poset& pattern, const SetFamily& family, bool induced, Code code) {
    EmbeddingSearch search(pattern, induced);
    CopyTally tally(pattern, induced);
    for (int element = 0; element < pattern.size(); ++element) {
        search.run_pinned(family, element, code, [&](std::span<const Code> image) {
            tally.add(image);
            return true;
        });
    }
    return tally.result();
}

bool is_p_free(const Poset& pattern, const SetFamily& family, bool induced) {
    return !find_copy(pattern, family, induced).has_value();
}

std::optional<CopyRecord> find_copy(const Poset& pattern, const SetFamily& family, bool induced) {
    std::optional<CopyRecord> found;
    EmbeddingSearch(pattern, induced).run(family, [&](std::span<const Code> image) {
        found = make_copy_record(image);
        return false;
    });
    return found;
}

SetFamily up_set(const SetFamily& family, Code code) {
    SetFamily out(family.ground_n());
    if (family.contains(code)) out.insert(code);
    for_each_member_strict_superset(family, code, [&](Code sup) { out.insert(sup); });
    return out;
}

std::vector<Code> strict_up_members(const SetFamily& family, Code code) {
    std::vector<Code> out;
    for_each_member_strict_superset(family, code, [&](Code sup) { out.push_back(sup); });
    return out;
}

std::vector<Code> strict_down_members(const SetFamily& family, Code code) {
    std::vector<Code> out;
    for_each_member_strict_subset(family, code, [&](Code sub) { out.push_back(sub); });
    return out;
}

std::size_t g_weight(const SetFamily& family, Code code) {
    auto members = strict_up_members(family, code);
    if (family.contains(code)) members.push_back(code);
    return max_antichain_size(members, family.ground_n());
}

std::size_t strict_up_weight(const SetFamily& family, Code code) {
    return max_antichain_size(strict_up_members(family, code), family.ground_n());
}

UpWeight max_up_weight(const SetFamily& family) {
    require(!family.empty(), ErrorKind::empty_family, "max_up_weight needs a non-empty family");
    struct Candidate {
        Code code;
        std::vector<Code> up;
    };
    std::vector<Candidate> candidates;
    family.for_each([&](Code c) { candidates.push_back({c, strict_up_members(family, c)}); });
    // The up-set size bounds the weight, so visit large up-sets first and stop early.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.up.size() > b.up.size(); });
    UpWeight best{candidates.front().code, 0};
    bool have = false;
    for (const auto& cand : candidates) {
        if (have && (cand.up.size() < best.weight || (cand.up.size() == best.weight && cand.code > best.witness))) {
            if (cand.up.size() < best.weight) break;
            continue;
        }
        const std::size_t w = max_antichain_size(cand.up, family.ground_n());
        if (!have || w > best.weight || (w == best.weight && cand.code < best.witness)) {
            best = {cand.code, w};
            have = true;
        }
    }
    return best;
}

std::optional<InducedVee> find_induced_vee(const SetFamily& family, std::size_t width) {
    std::optional<InducedVee> found;
    family.for_each([&](Code c) {
        if (found) return;
        auto up = strict_up_members(family, c);
        if (up.size() < width) return;
        AntichainSolver solver(up);
        if (solver.size() < width) return;
        auto tops = solver.lowest();
        tops.resize(width);
        found = InducedVee{c, std::move(tops)};
    });
    return found;
}

DuDecomposition du_decomposition(const SetFamily& family, std::size_t s, std::size_t t) {
    const int n = family.ground_n();
    DuDecomposition out{SetFamily(n), SetFamily(n), SetFamily(n)};
    family.for_each([&](Code c) {
        const bool in_down = max_antichain_size(strict_down_members(family, c), family.ground_n()) < s;
        const bool in_up = max_antichain_size(strict_up_members(family, c), family.ground_n()) < t;
        if (in_down) out.down.insert(c);
        if (in_up) out.up.insert(c);
        if (!in_down && !in_up) out.rest.insert(c);
    });
    return out;
}

}  // namespace posetlab
