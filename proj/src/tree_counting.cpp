#include "posetlab/tree_counting.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "posetlab/errors.hpp"

namespace posetlab {
namespace {

BigInt to_big(unsigned __int128 v) {
    BigInt out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
}

void check_tree(const Poset& tree) {
    require(tree.size() >= 2, ErrorKind::bad_tree, "tree needs at least one edge");
    require(classify_tree(tree) != TreeClass::not_tree, ErrorKind::bad_tree, "pattern is not a tree poset");
    require(height(tree) <= 2, ErrorKind::bad_tree, "tree contains a directed path of length 2");
}

// Cover edges ordered so that every prefix is connected.
std::vector<Edge> connected_edge_order(const Poset& tree) {
    auto covers = hasse(tree).cover_edges;
    std::sort(covers.begin(), covers.end());
    std::vector<Edge> order;
    std::vector<bool> used(covers.size(), false);
    ElementMask reached = 0;
    while (order.size() < covers.size()) {
        for (std::size_t i = 0; i < covers.size(); ++i) {
            if (used[i]) continue;
            const auto [a, b] = covers[i];
            const bool touches = ((reached >> a) & 1U) || ((reached >> b) & 1U);
            if (order.empty() || touches) {
                used[i] = true;
                order.push_back(covers[i]);
                reached |= (ElementMask{1} << a) | (ElementMask{1} << b);
                break;
            }
        }
    }
    return order;
}

std::string set_text(Code code) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i) {
        if ((code >> i) & 1U) {
            if (!first) out += ",";
            out += std::to_string(i + 1);
            first = false;
        }
    }
    return out + "}";
}

}  // namespace

void validate_digraph(const Digraph& graph) {
    require(graph.vertices >= 0, ErrorKind::bad_param, "negative vertex count");
    std::set<Edge> seen;
    for (const auto& [u, v] : graph.edges) {
        require(u >= 0 && u < graph.vertices && v >= 0 && v < graph.vertices, ErrorKind::index,
                "edge endpoint out of range");
        require(u != v, ErrorKind::bad_param, "digraph has a loop at " + std::to_string(u));
        require(seen.insert({u, v}).second, ErrorKind::bad_param,
                "repeated edge " + std::to_string(u) + " -> " + std::to_string(v));
    }
}

Digraph comparability_graph(const SetFamily& family) {
    const auto members = family.members();
    std::vector<int> index(family.code_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<int>(i);
    Digraph out;
    out.vertices = static_cast<int>(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        for_each_member_strict_superset(family, members[i], [&](Code sup) {
            out.edges.emplace_back(static_cast<int>(i), index[sup]);
        });
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

BigInt count_tree_copies(const Digraph& graph, const Poset& tree) {
    check_tree(tree);
    validate_digraph(graph);
    const int m = graph.vertices;
    std::vector<std::vector<int>> out_adj(m), in_adj(m);
    for (const auto& [u, v] : graph.edges) {
        out_adj[u].push_back(v);
        in_adj[v].push_back(u);
    }
    const auto order = connected_edge_order(tree);
    // Tree elements in placement order, each after its attachment point.
    std::vector<int> element_order{order[0].first};
    std::vector<int> parent{-1};
    std::vector<bool> parent_below{false};
    ElementMask placed = ElementMask{1} << order[0].first;
    for (const auto& [a, b] : order) {
        if (!((placed >> b) & 1U)) {
            element_order.push_back(b);
            parent.push_back(a);
            parent_below.push_back(true);
            placed |= ElementMask{1} << b;
        } else if (!((placed >> a) & 1U)) {
            element_order.push_back(a);
            parent.push_back(b);
            parent_below.push_back(false);
            placed |= ElementMask{1} << a;
        }
    }
    const int k = tree.size();
    std::vector<int> image(k, -1);
    std::vector<char> used(m, 0);
    unsigned __int128 total = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        const int element = element_order[depth];
        const auto& candidates = parent_below[depth] ? out_adj[image[parent[depth]]] : in_adj[image[parent[depth]]];
        if (depth == k - 1) {
            for (int c : candidates) total += used[c] ? 0 : 1;
            return;
        }
        for (int c : candidates) {
            if (used[c]) continue;
            used[c] = 1;
            image[element] = c;
            self(self, depth + 1);
            used[c] = 0;
        }
    };
    for (int v = 0; v < m; ++v) {
        image[element_order[0]] = v;
        used[v] = 1;
        rec(rec, 1);
        used[v] = 0;
    }
    return to_big(total) / automorphism_count(tree);
}

TreeCountingRun run_tree_counting(const Digraph& graph, const Poset& tree) {
    check_tree(tree);
    validate_digraph(graph);
    TreeCountingRun run;
    run.graph = graph;
    run.tree = tree;
    const int m = graph.vertices;
    const int t = tree.size() - 1;
    const auto total_edges = static_cast<long long>(graph.edges.size());

    // Greedy cut: each vertex joins the side opposite most of its placed neighbours.
    std::vector<std::vector<int>> neighbours(m);
    for (const auto& [u, v] : graph.edges) {
        neighbours[u].push_back(v);
        neighbours[v].push_back(u);
    }
    std::vector<int> side(m, -1);
    for (int v = 0; v < m; ++v) {
        int on_side[2] = {0, 0};
        for (int w : neighbours[v]) {
            if (side[w] >= 0) ++on_side[side[w]];
        }
        side[v] = on_side[0] > on_side[1] ? 1 : 0;
    }
    long long forward = 0;
    long long backward = 0;
    for (const auto& [u, v] : graph.edges) {
        if (side[u] == 0 && side[v] == 1) ++forward;
        if (side[u] == 1 && side[v] == 0) ++backward;
    }
    const int source_side = forward >= backward ? 0 : 1;
    for (int v = 0; v < m; ++v) (side[v] == source_side ? run.part_a : run.part_b).push_back(v);

    std::vector<Edge> current;
    for (const auto& [u, v] : graph.edges) {
        if (side[u] == source_side && side[v] != source_side) current.emplace_back(u, v);
    }
    std::vector<std::vector<long long>> degrees;
    auto degree_of = [m](const std::vector<Edge>& edges) {
        std::vector<long long> deg(m, 0);
        for (const auto& [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        return deg;
    };
    run.pruned.push_back(current);
    degrees.push_back(degree_of(current));
    for (int i = 1; i < t; ++i) {
        const auto& deg = degrees.back();
        // deg <= f / (8t) with f = |E| / m, compared without division.
        auto light = [&](int v) { return deg[v] * 8 * t * m <= total_edges; };
        std::vector<Edge> next;
        for (const auto& [u, v] : run.pruned.back()) {
            if (!light(u) && !light(v)) next.emplace_back(u, v);
        }
        degrees.push_back(degree_of(next));
        run.pruned.push_back(std::move(next));
    }

    run.edge_order = connected_edge_order(tree);
    run.step_choices.push_back(BigInt(run.pruned[t - 1].size()));
    ElementMask placed = (ElementMask{1} << run.edge_order[0].first) | (ElementMask{1} << run.edge_order[0].second);
    for (int i = 2; i <= t; ++i) {
        const auto [a, b] = run.edge_order[i - 1];
        // The placed endpoint lies on an edge of H_(t-i+1); its degree in H_(t-i)
        // bounds the choices for the new endpoint.
        const bool placed_is_source = (placed >> a) & 1U;
        const auto& host = run.pruned[t - i + 1];
        const auto& deg = degrees[t - i];
        long long least = -1;
        for (const auto& [u, v] : host) {
            const int w = placed_is_source ? u : v;
            if (least < 0 || deg[w] < least) least = deg[w];
        }
        const long long choices = std::max(0LL, least - (i - 1));
        run.step_choices.push_back(BigInt(choices));
        placed |= (ElementMask{1} << a) | (ElementMask{1} << b);
    }
    BigInt product = 1;
    for (const auto& c : run.step_choices) product *= c;
    run.certified = product / automorphism_count(tree);
    if (m <= kExactTreeCountLimit) run.exact = count_tree_copies(graph, tree);
    return run;
}

LayeredCheck layered_witness_check(const LayeredWitness& witness, const Poset& tree) {
    const int h = static_cast<int>(witness.layers.size());
    require(h >= 1, ErrorKind::bad_param, "witness needs at least one layer");
    const int n = witness.layers[0].ground_n();
    for (int i = 1; i < h; ++i) {
        require(witness.layers[i].ground_n() == n, ErrorKind::bad_param, "layers live on different ground sets");
        require((witness.layers[i] - witness.layers[i - 1]).empty(), ErrorKind::bad_param,
                "layer " + std::to_string(i + 1) + " is not inside layer " + std::to_string(i));
    }
    const TreeClass cls = classify_tree(tree);
    require(cls == TreeClass::upward_monotone_tree || cls == TreeClass::downward_monotone_tree,
            ErrorKind::not_monotone_tree, "pattern is not a monotone tree poset");
    require(height(tree) == h, ErrorKind::bad_param,
            "tree height " + std::to_string(height(tree)) + " differs from the number of layers " + std::to_string(h));

    // Downward trees: complement every set and reverse the tree.
    const bool flip = cls == TreeClass::downward_monotone_tree;
    const Poset pattern = flip ? tree.dual() : tree;
    std::vector<SetFamily> layers;
    for (const auto& layer : witness.layers) {
        if (!flip) {
            layers.push_back(layer);
            continue;
        }
        SetFamily complemented(n);
        layer.for_each([&](Code c) { complemented.insert(layer.universe() & ~c); });
        layers.push_back(std::move(complemented));
    }
    auto layer = [&](int i) -> const SetFamily& { return layers[i - 1]; };

    if (ExactRational(layer(h).size()) < witness.delta1 * ExactRational(binomial(n, n / 2))) {
        fail(ErrorKind::condition_failed, "condition i fails: |F_" + std::to_string(h) + "| = " +
                                              std::to_string(layer(h).size()) + " is below delta1 C(n, n/2)");
    }
    for (int i = 2; i <= h; ++i) {
        const ExactRational need = witness.delta2 * n;
        for (Code c : layer(i).members()) {
            std::size_t count = 0;
            for_each_member_strict_superset(layer(i - 1), c, [&](Code) { ++count; });
            if (ExactRational(count) < need) {
                fail(ErrorKind::condition_failed, "condition ii fails: " + set_text(c) + " in F_" + std::to_string(i) +
                                                      " has " + std::to_string(count) + " strict supersets in F_" +
                                                      std::to_string(i - 1) + ", needs " + to_string(need));
            }
        }
    }
    for (int i = 2; i <= h; ++i) {
        const ExactRational need = witness.delta3 * ExactRational(BigInt(boost::multiprecision::pow(BigInt(n), i - 1)));
        for (Code c : layer(i).members()) {
            std::size_t count = 0;
            for_each_member_strict_superset(layer(1), c, [&](Code) { ++count; });
            if (ExactRational(count) < need) {
                fail(ErrorKind::condition_failed, "condition iii fails: " + set_text(c) + " in F_" + std::to_string(i) +
                                                      " has " + std::to_string(count) +
                                                      " strict supersets in F_1, needs " + to_string(need));
            }
        }
    }

    // Rank order from the root; each element after its predecessor.
    const int k = pattern.size();
    const auto lower = lower_covers(pattern);
    const auto upper = upper_covers(pattern);
    int root = 0;
    while (lower[root] != 0) ++root;
    std::vector<int> order{root};
    std::vector<int> rank(k, 0);
    rank[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (int j = 0; j < k; ++j) {
            if ((upper[order[i]] >> j) & 1U) {
                rank[j] = rank[order[i]] + 1;
                order.push_back(j);
            }
        }
    }
    std::vector<int> predecessor(k, -1);
    std::vector<int> target(k, h);  // layer index receiving each element
    for (int x = 0; x < k; ++x) {
        if (x == root) continue;
        predecessor[x] = std::countr_zero(lower[x]);
        target[x] = upper[x] == 0 ? 1 : h + 1 - rank[x];
    }

    std::vector<Code> image(k, 0);
    std::set<Code> used;
    unsigned __int128 total = 0;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        const int x = order[depth];
        const bool last = depth + 1 == order.size();
        auto visit = [&](Code c) {
            if (used.count(c)) return;
            if (last) {
                ++total;
                return;
            }
            used.insert(c);
            image[x] = c;
            self(self, depth + 1);
            used.erase(c);
        };
        if (depth == 0) {
            for (Code c : layer(target[x]).members()) visit(c);
        } else {
            for_each_member_strict_superset(layer(target[x]), image[predecessor[x]], visit);
        }
    };
    rec(rec, 0);

    LayeredCheck out;
    out.embeddings = to_big(total);
    out.lower_bound = out.embeddings / factorial(static_cast<unsigned>(k));
    return out;
}

}  // namespace posetlab
