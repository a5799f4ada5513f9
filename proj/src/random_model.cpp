#include "posetlab/random_model.hpp"

#include <algorithm>
#include <numeric>

#include "posetlab/antichain.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/extremal.hpp"
#include "posetlab/rng.hpp"

namespace posetlab {
namespace {

const BigInt& two_to_64() {
    static const BigInt value = BigInt(1) << 64;
    return value;
}

inline constexpr std::size_t kMaxTrackedEmbeddings = std::size_t{1} << 24;

std::vector<Code> middle_first(const SetFamily& family) {
    const int n = family.ground_n();
    auto order = family.members();
    std::stable_sort(order.begin(), order.end(), [n](Code a, Code b) {
        const int da = std::abs(2 * set_size(a) - n);
        const int db = std::abs(2 * set_size(b) - n);
        if (da != db) return da < db;
        return set_size(a) < set_size(b);
    });
    return order;
}

bool is_two_chain(const Poset& poset) { return poset.size() == 2 && poset.relation_count() == 1; }

}  // namespace

InclusionProbability InclusionProbability::rational(const ExactRational& p) {
    require(p >= 0 && p <= 1, ErrorKind::bad_param, "probability must lie in [0, 1]");
    InclusionProbability out;
    out.threshold_ = numerator(p) * two_to_64() / denominator(p);
    out.label_ = to_string(p);
    return out;
}

InclusionProbability InclusionProbability::power(int n, const ExactRational& gamma) {
    require(n >= 1, ErrorKind::bad_param, "n must be positive");
    require(gamma >= 0, ErrorKind::bad_param, "exponent must be non-negative");
    const BigInt a = numerator(gamma);
    const BigInt b = denominator(gamma);
    const auto ua = static_cast<unsigned>(a);
    const auto ub = static_cast<unsigned>(b);
    const BigInt limit = BigInt(1) << (64 * ub);
    const BigInt n_a = boost::multiprecision::pow(BigInt(n), ua);
    auto fits = [&](const BigInt& t) { return BigInt(boost::multiprecision::pow(t, ub)) * n_a <= limit; };
    BigInt lo = 0;
    BigInt hi = two_to_64();
    if (fits(hi)) {
        lo = hi;
    } else {
        while (hi - lo > 1) {
            const BigInt mid = (lo + hi) / 2;
            (fits(mid) ? lo : hi) = mid;
        }
    }
    InclusionProbability out;
    out.threshold_ = lo;
    out.label_ = std::to_string(n) + "^-" + to_string(gamma);
    return out;
}

ExactRational InclusionProbability::value() const { return ExactRational(threshold_, two_to_64()); }

double InclusionProbability::approx() const { return value().convert_to<double>(); }

bool InclusionProbability::includes(std::uint64_t hash) const { return BigInt(hash) < threshold_; }

bool sample_contains(const InclusionProbability& p, std::uint64_t seed, Code code) {
    return p.includes(mix64(seed, code));
}

SetFamily sample_pnp(int n, const InclusionProbability& p, std::uint64_t seed) {
    require(n >= 1, ErrorKind::bad_param, "ground set size must be positive");
    require(n <= kMaxGroundSize, ErrorKind::too_large,
            "P(n,p) is sampled for n <= " + std::to_string(kMaxGroundSize));
    SetFamily out(n);
    if (p.threshold() == 0) return out;
    const bool all = p.threshold() >= two_to_64();
    const auto cut = all ? 0 : static_cast<std::uint64_t>(p.threshold());
    for (Code c = 0; c < out.code_count(); ++c) {
        if (all || mix64(seed, c) < cut) out.insert(c);
    }
    return out;
}

SetFamily remove_copies(const SetFamily& family, const Poset& poset, bool induced, std::size_t* removed) {
    const auto k = static_cast<std::size_t>(poset.size());
    // Every embedding's image, sorted, in one flat buffer; duplicates are the
    // other embeddings of the same copy.
    std::vector<Code> flat;
    EmbeddingSearch(poset, induced).run(family, [&](std::span<const Code> image) {
        const auto at = flat.size();
        flat.insert(flat.end(), image.begin(), image.end());
        std::sort(flat.begin() + static_cast<std::ptrdiff_t>(at), flat.end());
        if (flat.size() > kMaxTrackedEmbeddings) {
            fail(ErrorKind::too_large, "more than " + std::to_string(kMaxTrackedEmbeddings / k) +
                                           " embeddings to break up");
        }
        return true;
    });
    const std::size_t embeddings = k == 0 ? 0 : flat.size() / k;
    std::vector<std::size_t> ids(embeddings);
    std::iota(ids.begin(), ids.end(), 0);
    auto copy_of = [&](std::size_t id) { return std::span<const Code>(flat.data() + id * k, k); };
    auto less = [&](std::size_t x, std::size_t y) {
        const auto a = copy_of(x);
        const auto b = copy_of(y);
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    std::sort(ids.begin(), ids.end(), less);
    ids.erase(std::unique(ids.begin(), ids.end(),
                          [&](std::size_t x, std::size_t y) { return !less(x, y) && !less(y, x); }),
              ids.end());

    std::vector<std::uint32_t> coverage(family.code_count(), 0);
    std::vector<std::vector<std::uint32_t>> containing(family.code_count());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (Code c : copy_of(ids[i])) {
            ++coverage[c];
            containing[c].push_back(static_cast<std::uint32_t>(i));
        }
    }
    std::vector<char> alive(ids.size(), 1);
    SetFamily out = family;
    std::size_t count = 0;
    for (std::size_t next = 0; next < ids.size(); ++next) {
        if (!alive[next]) continue;
        Code pick = 0;
        std::uint32_t best = 0;
        for (Code c : copy_of(ids[next])) {
            if (coverage[c] > best || (coverage[c] == best && c < pick)) {
                pick = c;
                best = coverage[c];
            }
        }
        for (auto i : containing[pick]) {
            if (!alive[i]) continue;
            alive[i] = 0;
            for (Code c : copy_of(ids[i])) --coverage[c];
        }
        out.erase(pick);
        ++count;
    }
    if (!is_p_free(poset, out, induced)) fail(ErrorKind::invariant_violation, "copy removal left a copy behind");
    if (removed != nullptr) *removed = count;
    return out;
}

RemovalResult removal_construction(int n, const InclusionProbability& p, std::uint64_t seed, const Poset& poset,
                                   bool induced) {
    require(n >= 1 && n <= 14, ErrorKind::too_large, "removal construction runs for n <= 14");
    const int levels = std::min(e_param(poset, induced) + 1, n + 1);
    RemovalResult out;
    out.sampled = middle_levels(n, levels) & sample_pnp(n, p, seed);
    out.family = remove_copies(out.sampled, poset, induced, &out.removed);
    return out;
}

FreeInSample largest_free_in_sample(const SetFamily& sample, const Poset& poset, bool induced) {
    const int n = sample.ground_n();
    FreeInSample out;
    if (is_two_chain(poset)) {
        const auto members = sample.members();
        AntichainSolver solver(members, n);
        out.witness = SetFamily::from_codes(n, solver.lowest());
        out.size = out.witness.size();
        out.exact = true;
        return out;
    }
    if (sample.size() <= kExactSampleLimit) {
        const auto order = middle_first(sample);
        out.witness = SetFamily::from_codes(n, largest_free_subfamily(order, n, poset, induced));
        out.size = out.witness.size();
        out.exact = true;
        return out;
    }
    return heuristic_free_in_sample(sample, poset, induced);
}

FreeInSample heuristic_free_in_sample(const SetFamily& sample, const Poset& poset, bool induced) {
    const int n = sample.ground_n();
    FreeInSample out;
    const int e = e_param(poset, induced);
    if (e >= 1) {
        SetFamily best_window(n);
        for (int start = 0; start + e <= n + 1; ++start) {
            std::vector<int> levels(e);
            std::iota(levels.begin(), levels.end(), start);
            SetFamily window = sample & level_family(n, levels);
            if (window.size() > best_window.size()) best_window = std::move(window);
        }
        out.witness = remove_copies(best_window, poset, induced);
    }
    const int levels = std::min(e + 1, n + 1);
    SetFamily pruned = remove_copies(sample & middle_levels(n, levels), poset, induced);
    if (pruned.size() > out.witness.size() || e < 1) out.witness = std::move(pruned);
    out.size = out.witness.size();
    // nothing had to go, so nothing larger exists
    out.exact = out.size == sample.size();
    return out;
}

SweepTable threshold_sweep(const Poset& poset, bool induced, const std::vector<int>& ns,
                           const std::vector<ExactRational>& gammas, const std::vector<std::uint64_t>& seeds) {
    SweepTable table;
    table.d = d_param(poset, induced);
    if (seeds.empty()) return table;
    for (int n : ns) {
        const double middle = binomial(n, n / 2).convert_to<double>();
        for (const auto& gamma : gammas) {
            const auto p = InclusionProbability::power(n, gamma);
            SweepSummary summary;
            summary.n = n;
            summary.gamma = gamma;
            summary.regime = gamma > table.d ? "below" : (gamma < table.d ? "above" : "at");
            double total = 0;
            for (std::uint64_t seed : seeds) {
                const auto found = largest_free_in_sample(sample_pnp(n, p, seed), poset, induced);
                SweepRow row;
                row.n = n;
                row.gamma = gamma;
                row.p = p;
                row.seed = seed;
                row.size = found.size;
                row.exact = found.exact;
                const double scale = p.approx() * middle;
                row.normalized = scale > 0 ? static_cast<double>(found.size) / scale : 0.0;
                total += row.normalized;
                table.rows.push_back(std::move(row));
            }
            summary.seeds = seeds.size();
            summary.mean_normalized = total / static_cast<double>(seeds.size());
            table.summary.push_back(std::move(summary));
        }
    }
    return table;
}

}  // namespace posetlab
