#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/set_family.hpp"

namespace posetlab {

using Edge = std::pair<int, int>;  // u -> v

/// Simple directed graph on vertices 0..vertices-1: no loops, no repeated edge.
struct Digraph {
    int vertices = 0;
    std::vector<Edge> edges;
};

void validate_digraph(const Digraph& graph);

/// Directed comparability graph of a family: vertex i is the i-th member in
/// code order, with an edge i -> j whenever member i is a strict subset of member j.
Digraph comparability_graph(const SetFamily& family);

inline constexpr int kExactTreeCountLimit = 4096;

struct TreeCountingRun {
    Digraph graph;
    Poset tree = named::chain(2);  // height at most 2; cover relations are the directed edges
    std::vector<int> part_a;  // sources of the kept cut edges
    std::vector<int> part_b;
    /// pruned[0] holds the cut edges A -> B; pruned[i] drops the vertices of
    /// pruned[i-1] with at most |E| / (8 t m) incident edges there.
    std::vector<std::vector<Edge>> pruned;
    /// Tree edges in embedding order (every prefix is connected), as element pairs.
    std::vector<Edge> edge_order;
    /// Choices guaranteed at each step of the greedy embedding.
    std::vector<BigInt> step_choices;
    /// Product of the step choices divided by |Aut(T)|: copies the greedy
    /// embedding certifies.
    BigInt certified;
    /// Copies of T (as a subgraph) counted by backtracking; only when the graph
    /// has at most kExactTreeCountLimit vertices.
    std::optional<BigInt> exact;
};

/// Greedy cut, t-1 pruning rounds and the greedy tree embedding on a digraph.
/// The tree must be a tree poset of height at most 2 (no directed path of
/// length 2) with at least one edge; otherwise BadTree.
TreeCountingRun run_tree_counting(const Digraph& graph, const Poset& tree);

/// Injective maps of the tree's elements to vertices sending every cover pair
/// to an edge, divided by |Aut(T)|.
BigInt count_tree_copies(const Digraph& graph, const Poset& tree);

/// Families F_1 >= F_2 >= ... >= F_h of one ground set with three densities.
struct LayeredWitness {
    std::vector<SetFamily> layers;
    ExactRational delta1;
    ExactRational delta2;
    ExactRational delta3;
};

struct LayeredCheck {
    BigInt embeddings;   // embeddings produced by the layered greedy process
    BigInt lower_bound;  // embeddings / |T|!, rounded down
};

/// Checks, for every i >= 2 and F in F_i: i) |F_h| >= delta1 C(n, floor(n/2));
/// ii) F has at least delta2 n strict supersets in F_{i-1}; iii) F has at least
/// delta3 n^(i-1) strict supersets in F_1. On success counts the embeddings of
/// the monotone tree T (height h) generated rank by rank: the root goes to F_h,
/// a non-leaf of rank r to a strict superset of its predecessor's image in
/// F_(h+1-r), a leaf to any strict superset of its predecessor's image in F_1,
/// never reusing a set. Downward trees run on the complemented layers.
/// Throws ConditionFailed naming the first violated condition and a witness set.
LayeredCheck layered_witness_check(const LayeredWitness& witness, const Poset& tree);

}  // namespace posetlab
