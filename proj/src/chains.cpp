#include "posetlab/chains.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "posetlab/antichain.hpp"
#include "posetlab/errors.hpp"

namespace posetlab {

namespace {

std::size_t members_between(const SetFamily& family, Code low, Code high) {
    std::size_t count = 0;
    const Code free = high & ~low;
    if (free == 0) return 0;
    for (Code sub = (free - 1) & free; sub != 0; sub = (sub - 1) & free) {
        if (family.contains(low | sub)) ++count;
    }
    return count;
}

std::size_t interval_antichain(const SetFamily& family, Code low, Code high) {
    std::vector<Code> members;
    const Code free = high & ~low;
    for (Code sub = free;; sub = (sub - 1) & free) {
        if (family.contains(low | sub)) members.push_back(low | sub);
        if (sub == 0) break;
    }
    return max_antichain_size(members);
}

PairStats make_pair(const SetFamily& family, Code low, Code high, BigInt mass) {
    return {low, high, low == high ? 0 : members_between(family, low, high), interval_antichain(family, low, high),
            std::move(mass)};
}

}  // namespace

BigInt chain_pair_count(const SetFamily& family) {
    const int n = family.ground_n();
    auto counts = family.level_counts();
    BigInt total = 0;
    for (int level = 0; level <= n; ++level) {
        if (counts[level] != 0) total += BigInt(counts[level]) * factorial(level) * factorial(n - level);
    }
    return total;
}

ChainStats minmax_stats(const SetFamily& family) {
    const int n = family.ground_n();
    require(n <= kExactChainLimit, ErrorKind::too_large,
            "exact chain statistics need n <= " + std::to_string(kExactChainLimit) + ", got " + std::to_string(n));
    const std::uint32_t codes = family.code_count();
    const Code full = family.universe();

    // avoid[X]: chains from the empty set to X meeting no member (X included).
    // down[X]: chains from the empty set to X meeting no member before X.
    std::vector<std::uint64_t> avoid(codes, 0);
    std::vector<std::uint64_t> down(codes, 0);
    for (Code x = 0; x < codes; ++x) {
        std::uint64_t into = 0;
        if (x == 0) {
            into = 1;
        } else {
            for (Code rest = x; rest != 0; rest &= rest - 1) into += avoid[x & ~(rest & -rest)];
        }
        down[x] = into;
        avoid[x] = family.contains(x) ? 0 : into;
    }
    // Same recursion from the top: up[X] counts chains from X to [n] meeting no member after X.
    std::vector<std::uint64_t> avoid_up(codes, 0);
    std::vector<std::uint64_t> up(codes, 0);
    for (Code y = codes; y-- > 0;) {
        std::uint64_t into = 0;
        if (y == full) {
            into = 1;
        } else {
            for (Code missing = full & ~y; missing != 0; missing &= missing - 1) {
                into += avoid_up[y | (missing & -missing)];
            }
        }
        up[y] = into;
        avoid_up[y] = family.contains(y) ? 0 : into;
    }

    ChainStats stats;
    stats.ground_n = n;
    stats.exact = true;
    stats.empty_mass = avoid[full];
    family.for_each([&](Code low) {
        if (down[low] == 0) return;
        const Code free = full & ~low;
        std::vector<Code> highs;
        for (Code add = 0;; add = (add - free) & free) {
            const Code high = low | add;
            if (family.contains(high) && up[high] != 0) highs.push_back(high);
            if (add == free) break;
        }
        for (Code high : highs) {
            BigInt mass = BigInt(down[low]) * factorial(set_size(high) - set_size(low)) * BigInt(up[high]);
            stats.pairs.push_back(make_pair(family, low, high, std::move(mass)));
        }
    });
    return stats;
}

ChainStats minmax_stats_sampled(const SetFamily& family, std::uint64_t samples, std::uint64_t seed) {
    const int n = family.ground_n();
    require(samples > 0, ErrorKind::bad_param, "sample count must be positive");
    std::mt19937_64 rng(seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::pair<Code, Code>, std::uint64_t> hits;
    std::uint64_t misses = 0;
    for (std::uint64_t k = 0; k < samples; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        Code x = 0;
        bool seen = false;
        Code low = 0;
        Code high = 0;
        for (int step = 0; step <= n; ++step) {
            if (step > 0) x |= Code{1} << perm[step - 1];
            if (family.contains(x)) {
                if (!seen) low = x;
                high = x;
                seen = true;
            }
        }
        if (seen) {
            ++hits[{low, high}];
        } else {
            ++misses;
        }
    }
    const BigInt total = factorial(n);
    auto scale = [&](std::uint64_t count) {
        // round(count * n! / samples)
        BigInt num = BigInt(count) * total * 2 + BigInt(samples);
        return BigInt(num / (BigInt(samples) * 2));
    };
    ChainStats stats;
    stats.ground_n = n;
    stats.exact = false;
    stats.samples = samples;
    stats.empty_mass = scale(misses);
    for (const auto& [key, count] : hits) stats.pairs.push_back(make_pair(family, key.first, key.second, scale(count)));
    return stats;
}

BigInt diamond_lb(const SetFamily& family, int s) {
    require(s >= 2, ErrorKind::bad_param, "diamond_lb needs s >= 2");
    const int n = family.ground_n();
    require(n <= 16, ErrorKind::too_large, "diamond_lb enumerates intervals and needs n <= 16");
    BigInt total = 0;
    std::vector<std::uint32_t> below;
    family.for_each([&](Code low) {
        // Zeta transform over the supersets of `low`, indexed by the added bits.
        const Code free = family.universe() & ~low;
        const int k = set_size(free);
        std::vector<int> bits;
        for (Code rest = free; rest != 0; rest &= rest - 1) bits.push_back(std::countr_zero(rest));
        below.assign(std::size_t{1} << k, 0);
        auto expand = [&](std::uint32_t local) {
            Code c = low;
            for (int b = 0; b < k; ++b) {
                if ((local >> b) & 1U) c |= Code{1} << bits[b];
            }
            return c;
        };
        for (std::uint32_t local = 1; local < below.size(); ++local) below[local] = family.contains(expand(local));
        for (int b = 0; b < k; ++b) {
            for (std::uint32_t local = 0; local < below.size(); ++local) {
                if ((local >> b) & 1U) below[local] += below[local ^ (1U << b)];
            }
        }
        for (std::uint32_t local = 1; local < below.size(); ++local) {
            const Code high = expand(local);
            if (!family.contains(high)) continue;
            const std::uint32_t between = below[local] - 1;
            if (between >= static_cast<std::uint32_t>(s)) total += binomial(between, s);
        }
    });
    return total;
}

CapCheck antichain_cap_check(const SetFamily& family, std::size_t cap) {
    CapCheck out;
    out.antichain = max_antichain_size(family);
    out.ok = out.antichain <= cap;
    out.pairs = chain_pair_count(family);
    return out;
}

}  // namespace posetlab
