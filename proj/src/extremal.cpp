#include "posetlab/extremal.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <set>

#include "posetlab/antichain.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/rng.hpp"

namespace posetlab {
namespace {

// Ground elements that lie in exactly the same placed sets.
struct GroundClass {
    std::uint32_t sig;  // bit d: the set placed at depth d contains these elements
    int size;
};

class LevelSearch {
public:
    LevelSearch(const Poset& poset, int levels, bool induced, bool maximize)
        : poset_(poset), width_(levels - 1), induced_(induced), maximize_(maximize), k_(poset.size()) {
        build_order();
        cap_ = (k_ - 1) * width_;
    }

    std::optional<LevelEmbedding> run() {
        sizes_.assign(k_, 0);
        const int first = (k_ - 1) * width_;
        std::vector<GroundClass> classes;
        if (first > 0) classes.push_back({1U, first});
        sizes_[0] = first;
        place(1, classes, first, first);
        if (best_span_ < 0) return std::nullopt;
        return concretize();
    }

private:
    void build_order() {
        std::vector<bool> placed(k_, false);
        auto comparabilities = [&](int v) { return std::popcount(poset_.above(v) | poset_.below(v)); };
        int first = 0;
        for (int v = 1; v < k_; ++v) {
            if (comparabilities(v) > comparabilities(first)) first = v;
        }
        order_.push_back(first);
        placed[first] = true;
        while (static_cast<int>(order_.size()) < k_) {
            int pick = -1;
            int pick_placed = -1;
            for (int v = 0; v < k_; ++v) {
                if (placed[v]) continue;
                int n_placed = 0;
                for (int u : order_) n_placed += poset_.comparable(u, v) ? 1 : 0;
                if (n_placed == 0) continue;
                if (n_placed > pick_placed || (n_placed == pick_placed && comparabilities(v) > comparabilities(pick))) {
                    pick = v;
                    pick_placed = n_placed;
                }
            }
            if (pick < 0) fail(ErrorKind::disconnected_poset, "level search needs a connected poset");
            order_.push_back(pick);
            placed[pick] = true;
        }
        below_.assign(k_, 0);
        above_.assign(k_, 0);
        unrelated_.assign(k_, 0);
        for (int d = 0; d < k_; ++d) {
            for (int e = 0; e < d; ++e) {
                const auto bit = std::uint32_t{1} << e;
                if (poset_.less(order_[e], order_[d])) {
                    below_[d] |= bit;
                } else if (poset_.less(order_[d], order_[e])) {
                    above_[d] |= bit;
                } else {
                    unrelated_[d] |= bit;
                }
            }
        }
        // An element with a placed set on each side sits between them and cannot
        // change the union or the intersection.
        open_.assign(k_ + 1, 0);
        for (int d = 0; d <= k_; ++d) {
            for (int j = d; j < k_; ++j) {
                bool lower = false;
                bool upper = false;
                for (int e = 0; e < d; ++e) {
                    lower = lower || poset_.less(order_[e], order_[j]);
                    upper = upper || poset_.less(order_[j], order_[e]);
                }
                if (!lower || !upper) ++open_[d];
            }
        }
    }

    int span_of(const std::vector<GroundClass>& classes, int placed) const {
        const std::uint32_t all = (std::uint32_t{1} << placed) - 1;
        int total = 0;
        int common = 0;
        for (const auto& c : classes) {
            total += c.size;
            if (c.sig == all) common += c.size;
        }
        return total - common;
    }

    void place(int depth, const std::vector<GroundClass>& classes, int min_size, int max_size) {
        if (stop_) return;
        if (depth == k_) {
            const int span = span_of(classes, depth);
            if (span > best_span_) {
                best_span_ = span;
                best_classes_ = classes;
            }
            if (!maximize_ || best_span_ >= cap_) stop_ = true;
            return;
        }
        if (maximize_ && span_of(classes, depth) + width_ * open_[depth] <= best_span_) return;

        const std::uint32_t below = below_[depth];
        const std::uint32_t above = above_[depth];
        int lo = std::max(max_size - width_, 0);
        int hi = min_size + width_;
        for (int e = 0; e < depth; ++e) {
            if ((below >> e) & 1U) lo = std::max(lo, sizes_[e] + 1);
            if ((above >> e) & 1U) hi = std::min(hi, sizes_[e] - 1);
        }
        if (lo > hi) return;

        std::vector<int> counts(classes.size(), 0);
        std::vector<std::size_t> free;
        int base = 0;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if ((classes[i].sig & below) != 0) {
                counts[i] = classes[i].size;
                base += classes[i].size;
            } else if ((classes[i].sig & above) == above) {
                free.push_back(i);
            }
        }
        const bool fresh_allowed = above == 0;
        std::vector<int> capacity_after(free.size() + 1, 0);
        for (std::size_t i = free.size(); i-- > 0;) capacity_after[i] = capacity_after[i + 1] + classes[free[i]].size;

        auto choose = [&](auto&& self, std::size_t i, int size) -> void {
            if (stop_ || size > hi) return;
            if (!fresh_allowed && size + capacity_after[i] < lo) return;
            if (i == free.size()) {
                if (fresh_allowed) {
                    const int f_lo = std::max(0, lo - size);
                    const int f_hi = hi - size;
                    for (int step = 0; step <= f_hi - f_lo; ++step) {
                        const int f = maximize_ ? f_hi - step : f_lo + step;
                        try_candidate(depth, classes, counts, f, size + f, min_size, max_size);
                    }
                } else if (size >= lo) {
                    try_candidate(depth, classes, counts, 0, size, min_size, max_size);
                }
                return;
            }
            const auto idx = free[i];
            for (int c = 0; c <= classes[idx].size && size + c <= hi; ++c) {
                counts[idx] = c;
                self(self, i + 1, size + c);
            }
            counts[idx] = 0;
        };
        choose(choose, 0, base);
    }

    void try_candidate(int depth, const std::vector<GroundClass>& classes, const std::vector<int>& counts, int fresh,
                       int size, int min_size, int max_size) {
        if (stop_) return;
        const std::uint32_t unrelated = unrelated_[depth];
        for (int e = 0; e < depth; ++e) {
            if (!((unrelated >> e) & 1U)) continue;
            if (!induced_ && size != sizes_[e]) continue;
            const std::uint32_t bit = std::uint32_t{1} << e;
            bool inside = fresh == 0;  // new set within the placed one
            bool contains = true;      // placed set within the new one
            for (std::size_t i = 0; i < classes.size(); ++i) {
                if (counts[i] > 0 && !(classes[i].sig & bit)) inside = false;
                if ((classes[i].sig & bit) && counts[i] != classes[i].size) contains = false;
            }
            if (induced_ ? (inside || contains) : (inside && contains)) return;
        }
        std::vector<GroundClass> next;
        next.reserve(classes.size() * 2 + 1);
        const std::uint32_t bit = std::uint32_t{1} << depth;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto& c = classes[i];
            if (counts[i] > 0) next.push_back({c.sig | bit, counts[i]});
            if (counts[i] < c.size) next.push_back({c.sig, c.size - counts[i]});
        }
        if (fresh > 0) next.push_back({bit, fresh});
        sizes_[depth] = size;
        place(depth + 1, next, std::min(min_size, size), std::max(max_size, size));
    }

    LevelEmbedding concretize() const {
        LevelEmbedding out;
        out.levels = width_ + 1;
        out.span = best_span_;
        out.sets.assign(k_, {});
        const std::uint32_t all = (k_ >= 32) ? ~0U : ((std::uint32_t{1} << k_) - 1);
        int label = 1;
        for (const auto& c : best_classes_) {
            if (c.sig == all) continue;  // common to every set
            for (int l = 0; l < c.size; ++l, ++label) {
                for (int d = 0; d < k_; ++d) {
                    if ((c.sig >> d) & 1U) out.sets[order_[d]].push_back(label);
                }
            }
        }
        return out;
    }

    const Poset& poset_;
    int width_;
    bool induced_;
    bool maximize_;
    int k_;
    int cap_ = 0;
    std::vector<int> order_;
    std::vector<std::uint32_t> below_, above_, unrelated_;
    std::vector<int> open_;
    std::vector<int> sizes_;
    int best_span_ = -1;
    std::vector<GroundClass> best_classes_;
    bool stop_ = false;
};

void check_level_args(const Poset& poset, int levels) {
    require(poset.size() >= 1, ErrorKind::bad_param, "poset must have at least one element");
    require(poset.size() <= kMaxParamPoset, ErrorKind::too_large,
            "level search handles posets with at most " + std::to_string(kMaxParamPoset) + " elements");
    require(levels >= 1, ErrorKind::bad_param, "need at least one level");
    require(is_connected(poset), ErrorKind::disconnected_poset, "level search needs a connected poset");
}

int e_connected(const Poset& poset, bool induced) {
    for (int m = 1;; ++m) {
        if (embed_in_levels(poset, m, induced)) return m - 1;
    }
}

bool is_two_chain(const Poset& poset) { return poset.size() == 2 && poset.relation_count() == 1; }

bool is_vee(const Poset& poset) {
    return poset.size() >= 2 && canonical_form(poset) == canonical_form(named::vee(poset.size() - 1));
}

std::uint64_t to_u64(const BigInt& value) { return static_cast<std::uint64_t>(value); }

}  // namespace

std::optional<LevelEmbedding> embed_in_levels(const Poset& poset, int levels, bool induced) {
    check_level_args(poset, levels);
    return LevelSearch(poset, levels, induced, false).run();
}

LevelEmbedding widest_embedding(const Poset& poset, int levels, bool induced) {
    check_level_args(poset, levels);
    auto found = LevelSearch(poset, levels, induced, true).run();
    require(found.has_value(), ErrorKind::bad_param,
            "poset has no copy in " + std::to_string(levels) + " consecutive levels");
    return *found;
}

int e_param(const Poset& poset, bool induced) {
    require(poset.size() >= 1, ErrorKind::bad_param, "poset must have at least one element");
    int best = 0;
    for (ElementMask part : components(poset)) {
        best = std::max(best, e_connected(poset.restrict_to(part), induced));
    }
    return best;
}

int x_param(const Poset& poset, bool induced) {
    require(poset.size() >= 2, ErrorKind::bad_param, "x needs at least two elements");
    require(is_connected(poset), ErrorKind::disconnected_poset, "x is defined for connected posets");
    const int e = e_param(poset, induced);
    const auto widest = widest_embedding(poset, e + 1, induced);
    if (widest.span > e * poset.size()) {
        fail(ErrorKind::invariant_violation, "copy span " + std::to_string(widest.span) + " exceeds e|P|");
    }
    return widest.span;
}

ExactRational d_param(const Poset& poset, bool induced) {
    require(poset.size() <= kMaxSubposetSearch, ErrorKind::too_large,
            "subposet search handles at most " + std::to_string(kMaxSubposetSearch) + " elements");
    require(poset.size() >= 2, ErrorKind::bad_param, "d needs at least two elements");
    const int target = e_param(poset, induced);

    std::set<std::vector<ElementMask>> seen;
    std::vector<Poset> pending;
    const ElementMask all = poset.all_elements();
    for (ElementMask mask = 1; mask <= all; ++mask) {
        if ((mask & ~all) != 0 || std::popcount(mask) < 2) continue;
        Poset sub = poset.restrict_to(mask);
        if (!is_connected(sub)) continue;
        if (seen.insert(canonical_form(sub)).second) pending.push_back(std::move(sub));
    }
    if (!induced) {
        // Every sub-order is reached by deleting cover relations one at a time;
        // deletions never reconnect a disconnected poset.
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const Poset current = pending[i];
            const auto covers = hasse(current).cover_edges;
            const auto rels = current.relations();
            for (const auto& cover : covers) {
                std::vector<std::pair<int, int>> kept;
                for (const auto& r : rels) {
                    if (r != cover) kept.push_back(r);
                }
                Poset weaker = Poset::from_relations(current.size(), kept);
                if (!is_connected(weaker)) continue;
                if (seen.insert(canonical_form(weaker)).second) pending.push_back(std::move(weaker));
            }
        }
    }

    std::optional<ExactRational> best;
    for (const auto& sub : pending) {
        if (e_param(sub, induced) != target) continue;
        const ExactRational ratio(x_param(sub, induced), sub.size() - 1);
        if (!best || ratio < *best) best = ratio;
    }
    require(best.has_value(), ErrorKind::bad_param, "no connected subposet attains e(P)");
    return *best;
}

PosetParams poset_params(const Poset& poset, bool with_d) {
    PosetParams out;
    out.e = e_param(poset, false);
    out.e_star = e_param(poset, true);
    if (poset.size() >= 2 && is_connected(poset)) {
        out.x = x_param(poset, false);
        out.x_star = x_param(poset, true);
        if (with_d && poset.size() <= kMaxSubposetSearch) {
            out.d = d_param(poset, false);
            out.d_star = d_param(poset, true);
        }
    }
    return out;
}

BigInt m_count(int n, const Poset& poset, bool induced) {
    require(n >= 1 && n <= kMaxGroundSize, ErrorKind::too_large,
            "M(n,P) needs 1 <= n <= " + std::to_string(kMaxGroundSize));
    const int levels = std::min(e_param(poset, induced) + 1, n + 1);
    const SetFamily family = middle_levels(n, levels);
    require(family.size() <= kMaxCountedFamily, ErrorKind::too_large,
            "middle levels hold " + std::to_string(family.size()) + " sets, above the counting cap of " +
                std::to_string(kMaxCountedFamily));
    return count_copies(poset, family, induced).copies;
}

std::vector<Code> largest_free_subfamily(std::span<const Code> candidates, int n, const Poset& poset,
                                         bool induced) {
    CopyCounter counter(poset, induced);
    SetFamily current(n);
    std::vector<Code> path;
    std::vector<Code> best;
    bool have_best = false;
    const std::size_t m = candidates.size();
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (have_best && path.size() + (m - i) <= best.size()) return;
        if (i == m) {
            best = path;
            have_best = true;
            return;
        }
        const Code c = candidates[i];
        current.insert(c);
        if (!counter.has_copy_through(current, c)) {
            path.push_back(c);
            self(self, i + 1);
            path.pop_back();
        }
        current.erase(c);
        self(self, i + 1);
    };
    rec(rec, 0);
    std::sort(best.begin(), best.end());
    return best;
}

LaResult la_exact(int n, const Poset& poset, bool induced) {
    require(n >= 0, ErrorKind::bad_param, "n must be non-negative");
    LaResult out;
    if (is_two_chain(poset)) {
        require(n <= 12, ErrorKind::too_large, "La(n, P_2) is computed for n <= 12");
        std::vector<Code> all(std::size_t{1} << n);
        for (std::size_t c = 0; c < all.size(); ++c) all[c] = static_cast<Code>(c);
        AntichainSolver solver(all, n);
        const auto witness = solver.lowest();
        out.size = witness.size();
        out.witness = SetFamily::from_codes(n, witness);
        return out;
    }
    require(n <= 5, ErrorKind::too_large, "La(n, P) is computed exhaustively for n <= 5");
    // Middle levels first: large free families are found early, which makes
    // the counting bound bite.
    std::vector<Code> order(std::size_t{1} << n);
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = static_cast<Code>(c);
    std::stable_sort(order.begin(), order.end(), [n](Code a, Code b) {
        const int da = std::abs(2 * set_size(a) - n);
        const int db = std::abs(2 * set_size(b) - n);
        if (da != db) return da < db;
        return set_size(a) < set_size(b);
    });
    const auto best = largest_free_subfamily(order, n, poset, induced);
    out.size = best.size();
    out.witness = SetFamily::from_codes(n, best);
    return out;
}

BigInt min_copies(int n, const Poset& poset, std::size_t m, bool induced) {
    require(n >= 0 && n <= 4, ErrorKind::too_large, "min_copies enumerates families only for n <= 4");
    const std::size_t codes = std::size_t{1} << n;
    require(m <= codes, ErrorKind::bad_param, "family size exceeds 2^n");
    CopyCounter counter(poset, induced);
    SetFamily current(n);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::size_t chosen = 0;
    // Copies only grow as sets are added, so a branch stops once it reaches the best.
    auto rec = [&](auto&& self, Code next, std::uint64_t copies) -> void {
        if (copies >= best) return;
        if (chosen == m) {
            best = copies;
            return;
        }
        if (codes - next < m - chosen) return;
        current.insert(next);
        ++chosen;
        const std::uint64_t added = to_u64(counter.count_through(current, next).copies);
        self(self, next + 1, copies + added);
        --chosen;
        current.erase(next);
        if (best == 0) return;
        self(self, next + 1, copies);
    };
    rec(rec, 0, 0);
    return BigInt(best);
}

BigInt count_free_families(int n, const Poset& poset, bool induced) {
    require(n >= 0, ErrorKind::bad_param, "n must be non-negative");
    const bool special = is_two_chain(poset) || is_vee(poset);
    require(n <= 4 || (n == 5 && special), ErrorKind::too_large,
            "free families are enumerated for n <= 4 (n = 5 for the two-element chain and vees)");
    CopyCounter counter(poset, induced);
    const Code codes = Code{1} << n;
    SetFamily current(n);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, Code next) -> void {
        if (next == codes) {
            ++total;
            return;
        }
        self(self, next + 1);
        current.insert(next);
        if (!counter.has_copy_through(current, next)) self(self, next + 1);
        current.erase(next);
    };
    rec(rec, 0);
    return BigInt(total);
}

ProbeGenerator parse_probe_generator(const std::string& name) {
    if (name == "centered") return ProbeGenerator::centered;
    if (name == "middle-random") return ProbeGenerator::middle_random;
    if (name == "level-shifted") return ProbeGenerator::level_shifted;
    fail(ErrorKind::parse, "unknown probe generator '" + name + "' (centered, middle-random, level-shifted)");
}

const char* to_string(ProbeGenerator generator) noexcept {
    switch (generator) {
        case ProbeGenerator::centered: return "centered";
        case ProbeGenerator::middle_random: return "middle-random";
        case ProbeGenerator::level_shifted: return "level-shifted";
    }
    return "?";
}

SetFamily probe_family(int n, int e, std::size_t size, ProbeGenerator generator, std::uint64_t seed) {
    const std::size_t codes = std::size_t{1} << n;
    require(size <= codes, ErrorKind::bad_param, "family size exceeds 2^n");
    switch (generator) {
        case ProbeGenerator::centered:
            return centered_family(n, size);
        case ProbeGenerator::middle_random: {
            const SetFamily base = (e >= 1) ? middle_levels(n, std::min(e, n + 1)) : SetFamily(n);
            // Random order: rank codes by a keyed hash.
            auto by_key = [seed](Code a, Code b) {
                const auto ka = mix64(seed, a);
                const auto kb = mix64(seed, b);
                return ka != kb ? ka < kb : a < b;
            };
            std::vector<Code> inside = base.members();
            std::vector<Code> outside;
            for (Code c = 0; c < codes; ++c) {
                if (!base.contains(c)) outside.push_back(c);
            }
            std::sort(inside.begin(), inside.end(), by_key);
            std::sort(outside.begin(), outside.end(), by_key);
            SetFamily out(n);
            for (Code c : inside) {
                if (out.size() == size) break;
                out.insert(c);
            }
            for (Code c : outside) {
                if (out.size() == size) break;
                out.insert(c);
            }
            return out;
        }
        case ProbeGenerator::level_shifted: {
            const int start = std::max(0, middle_levels_start(n, std::max(e, 1)) - 1);
            SetFamily out(n);
            for (int level = start; level <= n && out.size() < size; ++level) {
                for (Code c = 0; c < codes && out.size() < size; ++c) {
                    if (set_size(c) == level) out.insert(c);
                }
            }
            for (int level = start - 1; level >= 0 && out.size() < size; --level) {
                for (Code c = 0; c < codes && out.size() < size; ++c) {
                    if (set_size(c) == level) out.insert(c);
                }
            }
            return out;
        }
    }
    fail(ErrorKind::bad_param, "unknown generator");
}

ProbeReport supersat_probe(int n, const Poset& poset, const ExactRational& excess, std::size_t trials,
                           const std::vector<ProbeGenerator>& generators, bool induced, std::uint64_t seed) {
    require(n >= 1 && n <= 14, ErrorKind::too_large, "supersaturation probes run for n <= 14");
    require(excess >= 0, ErrorKind::bad_param, "excess must be non-negative");
    ProbeReport report;
    report.n = n;
    report.e = e_param(poset, induced);
    report.x = x_param(poset, induced);
    const BigInt middle = binomial(n, n / 2);
    const ExactRational target = (ExactRational(report.e) + excess) * ExactRational(middle);
    const BigInt size = numerator(target) / denominator(target);
    require(size <= (BigInt(1) << n), ErrorKind::bad_param, "requested family is larger than 2^[n]");
    BigInt scale = middle;
    for (int i = 0; i < report.x; ++i) scale *= n;

    CopyCounter counter(poset, induced);
    for (ProbeGenerator generator : generators) {
        const std::size_t runs = generator == ProbeGenerator::middle_random ? trials : 1;
        for (std::size_t trial = 0; trial < runs; ++trial) {
            const SetFamily family =
                probe_family(n, report.e, static_cast<std::size_t>(size), generator, mix64(seed, trial));
            ProbeRow row;
            row.generator = generator;
            row.trial = trial;
            row.size = family.size();
            row.copies = counter.count(family).copies;
            row.ratio = ExactRational(row.copies) / ExactRational(scale);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace posetlab
