#include "posetlab/set_family.hpp"

#include <algorithm>
#include <cstdlib>

#include "posetlab/errors.hpp"

namespace posetlab {

SetFamily::SetFamily(int ground_n) : ground_n_(ground_n) {
    require(ground_n >= 1 && ground_n <= kMaxGroundSize, ErrorKind::bad_param,
            "ground set size must be in 1..20, got " + std::to_string(ground_n));
    words_.assign((code_count() + 63) / 64, 0);
}

SetFamily SetFamily::full(int ground_n) {
    SetFamily out(ground_n);
    const std::uint32_t codes = out.code_count();
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = codes >= (w + 1) * 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (codes - w * 64)) - 1;
    }
    out.cardinality_ = codes;
    return out;
}

SetFamily SetFamily::from_codes(int ground_n, std::span<const Code> codes) {
    SetFamily out(ground_n);
    for (Code c : codes) out.insert(c);
    return out;
}

SetFamily SetFamily::from_sets(int ground_n, const std::vector<std::vector<int>>& sets) {
    SetFamily out(ground_n);
    for (const auto& set : sets) {
        Code code = 0;
        for (int element : set) {
            require(element >= 1 && element <= ground_n, ErrorKind::index,
                    "element " + std::to_string(element) + " outside [1," + std::to_string(ground_n) + "]");
            code |= Code{1} << (element - 1);
        }
        out.insert(code);
    }
    return out;
}

void SetFamily::insert(Code code) {
    require(code < code_count(), ErrorKind::index,
            "subset code " + std::to_string(code) + " outside 2^[" + std::to_string(ground_n_) + "]");
    std::uint64_t& word = words_[code >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (code & 63);
    if ((word & mask) == 0) {
        word |= mask;
        ++cardinality_;
    }
}

void SetFamily::erase(Code code) {
    if (code >= code_count()) return;
    std::uint64_t& word = words_[code >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (code & 63);
    if ((word & mask) != 0) {
        word &= ~mask;
        --cardinality_;
    }
}

std::vector<Code> SetFamily::members() const {
    std::vector<Code> out;
    out.reserve(cardinality_);
    for_each([&](Code c) { out.push_back(c); });
    return out;
}

std::vector<std::vector<int>> SetFamily::member_sets() const {
    std::vector<std::vector<int>> out;
    out.reserve(cardinality_);
    for_each([&](Code c) {
        std::vector<int> set;
        for (int i = 0; i < ground_n_; ++i) {
            if ((c >> i) & 1U) set.push_back(i + 1);
        }
        out.push_back(std::move(set));
    });
    return out;
}

std::vector<std::size_t> SetFamily::level_counts() const {
    std::vector<std::size_t> out(ground_n_ + 1, 0);
    for_each([&](Code c) { ++out[set_size(c)]; });
    return out;
}

void SetFamily::recount() {
    cardinality_ = 0;
    for (auto w : words_) cardinality_ += std::popcount(w);
}

SetFamily& SetFamily::operator|=(const SetFamily& other) {
    require(ground_n_ == other.ground_n_, ErrorKind::bad_param, "ground sets differ");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    recount();
    return *this;
}

SetFamily& SetFamily::operator&=(const SetFamily& other) {
    require(ground_n_ == other.ground_n_, ErrorKind::bad_param, "ground sets differ");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    recount();
    return *this;
}

SetFamily& SetFamily::operator-=(const SetFamily& other) {
    require(ground_n_ == other.ground_n_, ErrorKind::bad_param, "ground sets differ");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    recount();
    return *this;
}

SetFamily operator|(SetFamily a, const SetFamily& b) { return a |= b; }
SetFamily operator&(SetFamily a, const SetFamily& b) { return a &= b; }
SetFamily operator-(SetFamily a, const SetFamily& b) { return a -= b; }

std::vector<std::uint8_t> SetFamily::to_binary() const {
    std::vector<std::uint8_t> out;
    const std::size_t bytes = (code_count() + 7) / 8;
    out.reserve(bytes + 1);
    out.push_back(static_cast<std::uint8_t>(ground_n_));
    for (std::size_t i = 0; i < bytes; ++i) {
        out.push_back(static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8))));
    }
    return out;
}

SetFamily SetFamily::from_binary(std::span<const std::uint8_t> bytes) {
    require(!bytes.empty(), ErrorKind::parse, "empty binary family");
    SetFamily out(bytes[0]);
    const std::size_t expected = (out.code_count() + 7) / 8;
    require(bytes.size() == expected + 1, ErrorKind::parse,
            "binary family has " + std::to_string(bytes.size() - 1) + " bitmap bytes, expected " +
                std::to_string(expected));
    for (std::size_t i = 0; i < expected; ++i) {
        out.words_[i / 8] |= std::uint64_t{bytes[i + 1]} << (8 * (i % 8));
    }
    if (out.code_count() < 8) {
        require((bytes[1] >> out.code_count()) == 0, ErrorKind::parse, "bits set beyond 2^n codes");
    }
    out.recount();
    return out;
}

SetFamily level_family(int n, const std::vector<int>& levels) {
    SetFamily out(n);
    std::vector<bool> wanted(n + 1, false);
    for (int level : levels) {
        require(level >= 0 && level <= n, ErrorKind::bad_param,
                "level " + std::to_string(level) + " outside 0.." + std::to_string(n));
        wanted[level] = true;
    }
    for (Code c = 0; c < out.code_count(); ++c) {
        if (wanted[set_size(c)]) out.insert(c);
    }
    return out;
}

int middle_levels_start(int n, int m) { return (n - m + 1) / 2; }

SetFamily middle_levels(int n, int m) {
    require(m >= 1 && m <= n + 1, ErrorKind::bad_param,
            "middle_levels needs 1 <= m <= n+1, got m=" + std::to_string(m));
    const int start = middle_levels_start(n, m);
    std::vector<int> levels;
    for (int i = 0; i < m; ++i) levels.push_back(start + i);
    return level_family(n, levels);
}

SetFamily centered_family(int n, std::uint64_t m) {
    SetFamily out(n);
    require(m <= out.code_count(), ErrorKind::bad_param, "centered family larger than 2^n");
    // Levels ordered by |2*level - n|, lower level first on ties.
    std::vector<int> levels(n + 1);
    for (int i = 0; i <= n; ++i) levels[i] = i;
    std::stable_sort(levels.begin(), levels.end(),
                     [n](int a, int b) { return std::abs(2 * a - n) < std::abs(2 * b - n); });
    std::uint64_t remaining = m;
    for (int level : levels) {
        for (Code c = 0; c < out.code_count() && remaining > 0; ++c) {
            if (set_size(c) == level) {
                out.insert(c);
                --remaining;
            }
        }
        if (remaining == 0) break;
    }
    return out;
}

ExactRational lubell(const SetFamily& family) {
    const int n = family.ground_n();
    auto counts = family.level_counts();
    ExactRational total = 0;
    for (int level = 0; level <= n; ++level) {
        if (counts[level] != 0) total += ExactRational(BigInt(counts[level]), binomial(n, level));
    }
    return total;
}

std::vector<std::pair<Code, Code>> comparability_digraph(const SetFamily& family) {
    std::vector<std::pair<Code, Code>> edges;
    family.for_each([&](Code c) {
        for_each_member_strict_superset(family, c, [&](Code sup) { edges.emplace_back(c, sup); });
    });
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::uint64_t comparable_pair_count(const SetFamily& family) {
    std::uint64_t count = 0;
    family.for_each([&](Code c) { for_each_member_strict_subset(family, c, [&](Code) { ++count; }); });
    return count;
}

BigInt count_k_chains(const SetFamily& family, int k) {
    require(k >= 1, ErrorKind::bad_param, "count_k_chains needs k >= 1");
    if (k == 1) return BigInt(family.size());
    if (k == 2) return BigInt(comparable_pair_count(family));
    auto members = family.members();
    std::sort(members.begin(), members.end(),
              [](Code a, Code b) { return set_size(a) != set_size(b) ? set_size(a) < set_size(b) : a < b; });
    std::vector<std::int32_t> index(family.code_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<std::int32_t>(i);
    // ending[i] = chains of the current length whose top is members[i].
    std::vector<BigInt> ending(members.size(), BigInt(1));
    for (int length = 2; length <= k; ++length) {
        std::vector<BigInt> next(members.size(), BigInt(0));
        for (std::size_t i = 0; i < members.size(); ++i) {
            for_each_member_strict_subset(family, members[i], [&](Code sub) { next[i] += ending[index[sub]]; });
        }
        ending = std::move(next);
    }
    BigInt total = 0;
    for (const auto& v : ending) total += v;
    return total;
}

}  // namespace posetlab
