#include "posetlab/container.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "posetlab/antichain.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/rng.hpp"

namespace posetlab {

const char* to_string(RoundAction action) noexcept {
    switch (action) {
        case RoundAction::drop: return "drop";
        case RoundAction::remove: return "remove";
        case RoundAction::end_phase: return "end_phase";
    }
    return "?";
}

namespace {

struct Thresholds {
    int n;
    int t;
    BigInt phase1_rhs;  // n^(10t+9)
    BigInt eps_num_sq;
    BigInt eps_den_sq;
    BigInt n_pow_t;

    Thresholds(int n_, int t_, const ExactRational& eps) : n(n_), t(t_) {
        phase1_rhs = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(10 * t + 9));
        eps_num_sq = numerator(eps) * numerator(eps);
        eps_den_sq = denominator(eps) * denominator(eps);
        n_pow_t = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(t));
    }

    // weight > n^(t + 0.9)
    bool heavy_phase1(std::size_t w) const {
        return boost::multiprecision::pow(BigInt(w), 10U) > phase1_rhs;
    }
    // weight > eps^2 n^t
    bool heavy_phase2(std::size_t w) const { return BigInt(w) * eps_den_sq > eps_num_sq * n_pow_t; }
    bool heavy(int phase, std::size_t w) const { return phase == 1 ? heavy_phase1(w) : heavy_phase2(w); }
};

/// Members of `ground` containing `code`, itself included when present.
std::vector<Code> up_members(const SetFamily& ground, Code code) {
    std::vector<Code> up;
    if (ground.contains(code)) up.push_back(code);
    for_each_member_strict_superset(ground, code, [&](Code sup) { up.push_back(sup); });
    return up;
}

/// Weight of `code` in `ground`. A complete interval [code, [n]] is a Boolean
/// lattice, whose largest antichain is its middle level.
std::size_t weight_in(const SetFamily& ground, Code code) {
    auto up = up_members(ground, code);
    const int free = ground.ground_n() - set_size(code);
    if (up.size() == (std::size_t{1} << free)) return static_cast<std::size_t>(binomial_u64(free, free / 2));
    return max_antichain_size(up, ground.ground_n());
}

void validate(const SetFamily& family, int t, int r, const ExactRational& eps) {
    const int n = family.ground_n();
    require(n <= kMaxContainerGround, ErrorKind::ground_too_large,
            "container algorithm starts from all 2^n sets and needs n <= " + std::to_string(kMaxContainerGround) +
                ", got " + std::to_string(n));
    require(t >= 1, ErrorKind::bad_param, "t must be at least 1");
    require(r >= 1, ErrorKind::bad_param, "r must be at least 1");
    require(eps > 0, ErrorKind::bad_param, "eps must be positive");
    if (auto vee = find_induced_vee(family, static_cast<std::size_t>(r) + 1)) {
        std::string tops;
        for (Code c : vee->tops) tops += (tops.empty() ? "" : ",") + std::to_string(c);
        fail(ErrorKind::not_vee_free, "family contains an induced vee with bottom " + std::to_string(vee->bottom) +
                                          " and tops [" + tops + "]");
    }
}

}  // namespace

ContainerOutput run_container(const SetFamily& family, int t, int r, const ExactRational& eps, AntichainRule rule) {
    validate(family, t, r, eps);
    const int n = family.ground_n();
    const Thresholds limits(n, t, eps);

    ContainerOutput out;
    out.ground_n = n;
    out.h1 = SetFamily(n);
    out.h2 = SetFamily(n);
    out.f_h1 = SetFamily(n);
    out.g = SetFamily(n);
    const BigInt hypothesis_den = boost::multiprecision::pow(BigInt(2 * t), static_cast<unsigned>(t + 1));
    out.eps_above_hypothesis = eps * ExactRational(hypothesis_den) > 1;

    SetFamily ground = SetFamily::full(n);

    // Lazy max-heap of weight upper bounds; weights only fall as the ground family shrinks.
    struct Entry {
        std::size_t bound;
        Code code;
    };
    auto lower_priority = [](const Entry& a, const Entry& b) {
        return a.bound != b.bound ? a.bound < b.bound : a.code > b.code;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);
    for (Code c = 0; c < ground.code_count(); ++c) {
        const int free = n - set_size(c);
        heap.push({static_cast<std::size_t>(binomial_u64(free, free / 2)), c});
    }
    // A bound stays exact until some superset of its set leaves the ground family.
    std::vector<char> stale(ground.code_count(), 0);
    auto remove_from_ground = [&](Code c) {
        ground.erase(c);
        for (Code sub = c;; sub = (sub - 1) & c) {
            stale[sub] = 1;
            if (sub == 0) break;
        }
    };
    auto pick = [&]() -> Entry {
        while (true) {
            Entry top = heap.top();
            heap.pop();
            if (!ground.contains(top.code)) continue;
            if (!stale[top.code]) return top;
            stale[top.code] = 0;
            const std::size_t w = weight_in(ground, top.code);
            if (w == top.bound) return top;
            heap.push({w, top.code});
        }
    };

    int phase = 1;
    std::size_t round = 0;
    while (true) {
        if (ground.empty()) {
            if (phase == 1) {
                out.f_h1 = ground;
                out.phase_boundary = round;
            }
            out.g = ground;
            break;
        }
        const Entry chosen = pick();
        ++round;
        ContainerRound entry{round, chosen.code, chosen.bound, phase, RoundAction::drop, {}};

        if (!family.contains(chosen.code)) {
            remove_from_ground(chosen.code);
            entry.removed = {chosen.code};
            out.trace.push_back(std::move(entry));
            continue;
        }
        if (limits.heavy(phase, chosen.bound)) {
            auto up = up_members(ground, chosen.code);
            auto antichain = rule == AntichainRule::lowest ? AntichainSolver(up, n).lowest() : lex_min_max_antichain(up);
            SetFamily& h = phase == 1 ? out.h1 : out.h2;
            h.insert(chosen.code);
            for (Code a : antichain) {
                if (family.contains(a)) h.insert(a);
                remove_from_ground(a);
            }
            remove_from_ground(chosen.code);
            entry.action = RoundAction::remove;
            entry.removed = std::move(antichain);
            if (!std::binary_search(entry.removed.begin(), entry.removed.end(), chosen.code)) {
                entry.removed.insert(std::lower_bound(entry.removed.begin(), entry.removed.end(), chosen.code),
                                     chosen.code);
            }
            out.trace.push_back(std::move(entry));
            continue;
        }
        entry.action = RoundAction::end_phase;
        out.trace.push_back(std::move(entry));
        if (phase == 1) {
            out.f_h1 = ground;
            out.phase_boundary = round;
            phase = 2;
            // The stopping set stays in the ground family and is considered again.
            heap.push(chosen);
            continue;
        }
        out.g = ground;
        break;
    }
    return out;
}

ContainerReport verify_container(const ContainerOutput& out, const SetFamily& family, int t, int r,
                                 const ExactRational& eps) {
    const int n = family.ground_n();
    auto check = [](bool ok, const std::string& what) {
        if (!ok) fail(ErrorKind::invariant_violation, what);
    };
    check(out.ground_n == n && out.h1.ground_n() == n && out.h2.ground_n() == n && out.f_h1.ground_n() == n &&
              out.g.ground_n() == n,
          "ground set sizes differ");
    check((out.h1 & out.h2).empty(), "H1 and H2 intersect");
    check(((out.h1 | out.h2) & out.g).empty(), "H1 u H2 meets g");
    check((out.h2 - out.f_h1).empty(), "H2 is not inside f(H1)");
    check((family - (out.h1 | out.h2 | out.g)).empty(), "F is not covered by H1 u H2 u g");
    check((out.h1 - family).empty() && (out.h2 - family).empty(), "H1 or H2 leaves F");

    const Thresholds limits(n, t, eps);
    SetFamily ground = SetFamily::full(n);
    SetFamily h1(n);
    SetFamily h2(n);
    SetFamily f_h1(n);
    int phase = 1;
    bool f_fixed = false;
    std::size_t previous_weight = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < out.trace.size(); ++k) {
        const auto& step = out.trace[k];
        const std::string at = "round " + std::to_string(step.round) + ": ";
        check(step.round == k + 1, at + "rounds out of sequence");
        check(step.phase == phase, at + "phase mismatch");
        check(ground.contains(step.chosen), at + "chosen set already removed");
        const std::size_t w = weight_in(ground, step.chosen);
        check(w == step.weight, at + "recorded weight " + std::to_string(step.weight) + " but recomputed " +
                                    std::to_string(w));
        check(w <= previous_weight, at + "chosen weight increased");
        previous_weight = w;
        const bool in_f = family.contains(step.chosen);
        switch (step.action) {
            case RoundAction::drop:
                check(!in_f, at + "dropped a member of F");
                check(step.removed == std::vector<Code>{step.chosen}, at + "drop removed more than the chosen set");
                ground.erase(step.chosen);
                break;
            case RoundAction::remove: {
                check(in_f && limits.heavy(phase, w), at + "removal below the phase threshold");
                check(std::binary_search(step.removed.begin(), step.removed.end(), step.chosen),
                      at + "chosen set not removed");
                std::vector<Code> antichain;
                for (Code c : step.removed) {
                    check(ground.contains(c) && is_subset(step.chosen, c), at + "removed set outside the up-set");
                    if (c != step.chosen || w == 1) antichain.push_back(c);
                }
                check(antichain.size() == w && max_antichain_size(antichain) == w,
                      at + "removed sets are not a maximum antichain of the up-set");
                check(step.removed.size() >= w, at + "removal smaller than its weight");
                std::size_t added = 0;
                SetFamily& h = phase == 1 ? h1 : h2;
                for (Code c : step.removed) {
                    if (family.contains(c)) {
                        h.insert(c);
                        ++added;
                    }
                    ground.erase(c);
                }
                check(added <= static_cast<std::size_t>(r) + 1, at + "more than r+1 sets of F added");
                break;
            }
            case RoundAction::end_phase:
                check(in_f && !limits.heavy(phase, w), at + "phase ended above its threshold");
                if (phase == 1) {
                    f_h1 = ground;
                    f_fixed = true;
                    check(out.phase_boundary == step.round, at + "phase boundary mismatch");
                    phase = 2;
                } else {
                    check(k + 1 == out.trace.size(), at + "rounds recorded after the algorithm stopped");
                }
                break;
        }
    }
    if (!f_fixed) {
        f_h1 = ground;
        check(out.phase_boundary == out.trace.size(), "phase boundary mismatch at exhaustion");
    }
    check(h1 == out.h1, "replayed H1 differs");
    check(h2 == out.h2, "replayed H2 differs");
    check(f_h1 == out.f_h1, "replayed f(H1) differs");
    check(ground == out.g, "replayed g differs");

    ContainerReport report;
    report.rounds_replayed = out.trace.size();
    (out.g & family).for_each([&](Code c) {
        report.final_weight = std::max(report.final_weight, strict_up_weight(out.g, c));
    });
    check(!limits.heavy_phase2(report.final_weight),
          "a member of F in g still has weight above eps^2 n^t");

    const BigInt middle = binomial(n, n / 2);
    const BigInt nt = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(t));
    auto add = [&](std::string name, std::size_t value, std::string limit, bool ok) {
        report.bounds.push_back({std::move(name), std::to_string(value), std::move(limit), ok});
    };
    {
        // |H1| <= (r+1) 2^n / n^(t+0.9), compared through 10th powers.
        const BigInt lhs = boost::multiprecision::pow(BigInt(out.h1.size()), 10U) * limits.phase1_rhs;
        const BigInt rhs = boost::multiprecision::pow(BigInt(r + 1) * (BigInt(1) << n), 10U);
        const double approx = (r + 1) * std::ldexp(1.0, n) / std::pow(static_cast<double>(n), t + 0.9);
        add("H1 <= (r+1)2^n/n^(t+0.9)", out.h1.size(), "~" + std::to_string(approx), lhs <= rhs);
    }
    auto rational_bound = [&](std::string name, std::size_t value, const ExactRational& limit) {
        add(std::move(name), value, to_string(limit), ExactRational(value) <= limit);
    };
    rational_bound("H2 <= (r+1)(t+2)/(eps^2 n^t) C(n,n/2)", out.h2.size(),
                   ExactRational(BigInt(r + 1) * (t + 2)) * middle / (eps * eps * nt));
    rational_bound("f(H1) <= (t+1+eps) C(n,n/2)", out.f_h1.size(), (ExactRational(t + 1) + eps) * middle);
    rational_bound("g <= (t+eps) C(n,n/2)", out.g.size(), (ExactRational(t) + eps) * middle);
    return report;
}

FamilyGenerator parse_family_generator(const std::string& name) {
    if (name == "middle-antichain" || name == "antichain") return FamilyGenerator::middle_antichain;
    if (name == "greedy") return FamilyGenerator::greedy;
    fail(ErrorKind::bad_param, "unknown family generator '" + name + "' (expected middle-antichain or greedy)");
}

SetFamily generate_vee_free_family(int n, int r, FamilyGenerator generator, std::uint64_t seed) {
    require(r >= 1, ErrorKind::bad_param, "r must be at least 1");
    std::mt19937_64 rng(mix64(seed));
    SetFamily out(n);
    if (generator == FamilyGenerator::middle_antichain) {
        for (Code c = 0; c < out.code_count(); ++c) {
            if (set_size(c) == n / 2 && (rng() & 1U)) out.insert(c);
        }
        return out;
    }
    std::vector<Code> candidates;
    for (Code c = 0; c < out.code_count(); ++c) {
        if (std::abs(2 * set_size(c) - n) <= 2) candidates.push_back(c);
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const auto limit = static_cast<std::size_t>(r);
    for (Code c : candidates) {
        out.insert(c);
        bool ok = strict_up_weight(out, c) <= limit;
        for_each_member_strict_subset(out, c, [&](Code below) {
            if (ok) ok = strict_up_weight(out, below) <= limit;
        });
        if (!ok) out.erase(c);
    }
    return out;
}

CensusSummary container_census(int n, int t, int r, const ExactRational& eps, FamilyGenerator generator,
                               std::size_t trials, std::uint64_t seed) {
    CensusSummary summary;
    summary.container_limit = (ExactRational(1) + 2 * eps) * ExactRational(binomial(n, n / 2));
    std::set<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> seen;
    for (std::size_t k = 0; k < trials; ++k) {
        auto family = generate_vee_free_family(n, r, generator, mix64(seed, k));
        auto out = run_container(family, t, r, eps);
        ++summary.runs;
        auto w1 = out.h1.words();
        auto w2 = out.h2.words();
        seen.insert({{w1.begin(), w1.end()}, {w2.begin(), w2.end()}});
        const auto h = (out.h1 | out.h2).size();
        const auto container = (out.h1 | out.h2 | out.g).size();
        summary.max_h = std::max(summary.max_h, h);
        summary.max_container = std::max(summary.max_container, container);
        if (ExactRational(container) > summary.container_limit) ++summary.over_limit;
    }
    summary.distinct_containers = seen.size();
    summary.max_h_bits = summary.max_h * static_cast<std::size_t>(n);
    return summary;
}

}  // namespace posetlab
