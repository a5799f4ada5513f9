#include "posetlab/io.hpp"

#include <cstdint>
#include <vector>

#include "posetlab/errors.hpp"

namespace posetlab {
namespace {

Json codes_json(const SetFamily& family) {
    Json out = Json::array();
    family.for_each([&](Code c) { out.push_back(c); });
    return out;
}

SetFamily codes_family(int n, const Json& codes) {
    require(codes.is_array(), ErrorKind::parse, "expected a list of codes");
    std::vector<Code> list;
    for (const auto& c : codes) {
        require(c.is_number_unsigned(), ErrorKind::parse, "codes must be non-negative integers");
        const auto value = c.get<std::uint64_t>();
        require(value < (std::uint64_t{1} << n), ErrorKind::parse, "code " + std::to_string(value) + " outside 2^[n]");
        list.push_back(static_cast<Code>(value));
    }
    return SetFamily::from_codes(n, list);
}

const Json& field(const Json& json, const char* key) {
    require(json.is_object() && json.contains(key), ErrorKind::parse, std::string("missing field '") + key + "'");
    return json.at(key);
}

int ground_of(const Json& json) {
    const auto& n = field(json, "n");
    require(n.is_number_integer(), ErrorKind::parse, "'n' must be an integer");
    const int value = n.get<int>();
    require(value >= 0 && value <= kMaxGroundSize, ErrorKind::ground_too_large,
            "ground size " + std::to_string(value) + " outside 0.." + std::to_string(kMaxGroundSize));
    return value;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

Json family_to_json(const SetFamily& family) {
    Json sets = Json::array();
    for (const auto& s : family.member_sets()) sets.push_back(s);
    return Json{{"n", family.ground_n()}, {"sets", std::move(sets)}};
}

SetFamily family_from_json(const Json& json) {
    const int n = ground_of(json);
    if (json.contains("codes")) return codes_family(n, json.at("codes"));
    const auto& sets = field(json, "sets");
    require(sets.is_array(), ErrorKind::parse, "'sets' must be a list");
    std::vector<std::vector<int>> lists;
    for (const auto& s : sets) {
        require(s.is_array(), ErrorKind::parse, "each set must be a list of elements");
        std::vector<int> elements;
        for (const auto& x : s) {
            require(x.is_number_integer(), ErrorKind::parse, "set elements must be integers");
            elements.push_back(x.get<int>());
        }
        lists.push_back(std::move(elements));
    }
    return SetFamily::from_sets(n, lists);
}

SetFamily parse_family(const std::string& bytes) {
    std::size_t i = 0;
    while (i < bytes.size() && (bytes[i] == ' ' || bytes[i] == '\n' || bytes[i] == '\t' || bytes[i] == '\r')) ++i;
    if (i < bytes.size() && bytes[i] == '{') return family_from_json(parse_json(bytes));
    std::vector<std::uint8_t> raw(bytes.begin(), bytes.end());
    return SetFamily::from_binary(raw);
}

Json poset_to_json(const Poset& poset) {
    Json lt = Json::array();
    for (const auto& [i, j] : poset.relations()) lt.push_back({i, j});
    return Json{{"size", poset.size()}, {"lt", std::move(lt)}};
}

Poset poset_from_json(const Json& json) {
    const auto& size = field(json, "size");
    require(size.is_number_integer(), ErrorKind::parse, "'size' must be an integer");
    std::vector<std::pair<int, int>> relations;
    if (json.contains("lt")) {
        for (const auto& r : json.at("lt")) {
            require(r.is_array() && r.size() == 2, ErrorKind::parse, "relations are pairs [i, j]");
            relations.emplace_back(r[0].get<int>(), r[1].get<int>());
        }
    }
    return Poset::from_relations(size.get<int>(), relations);
}

Poset parse_poset(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t' || text[i] == '\r')) ++i;
    if (i < text.size() && text[i] == '{') return poset_from_json(parse_json(text));
    return parse_named_poset(text.substr(i));
}

Json copy_record_to_json(const CopyRecord& record) {
    Json assignment = Json::object();
    for (std::size_t i = 0; i < record.assignment.size(); ++i) assignment[std::to_string(i)] = record.assignment[i];
    return Json{{"assignment", std::move(assignment)}, {"A", record.bottom}, {"B", record.top}};
}

Json chain_stats_to_json(const ChainStats& stats) {
    Json pairs = Json::array();
    for (const auto& p : stats.pairs) {
        pairs.push_back(Json{{"A", p.low},
                             {"C", p.high},
                             {"b", p.between},
                             {"a", p.interval_antichain},
                             {"mass", to_string(p.mass)}});
    }
    Json out{{"n", stats.ground_n},
             {"pairs", std::move(pairs)},
             {"empty_mass", to_string(stats.empty_mass)},
             {"exact", stats.exact}};
    if (!stats.exact) out["samples"] = stats.samples;
    return out;
}

Json container_to_json(const ContainerOutput& out) {
    Json trace = Json::array();
    for (const auto& r : out.trace) {
        Json removed = Json::array();
        for (Code c : r.removed) removed.push_back(c);
        trace.push_back(Json{{"round", r.round},
                             {"g", r.chosen},
                             {"w", r.weight},
                             {"phase", r.phase},
                             {"action", to_string(r.action)},
                             {"removed", std::move(removed)}});
    }
    return Json{{"n", out.ground_n},
                {"h1", codes_json(out.h1)},
                {"h2", codes_json(out.h2)},
                {"f_h1", codes_json(out.f_h1)},
                {"g", codes_json(out.g)},
                {"phase_boundary", out.phase_boundary},
                {"eps_above_hypothesis", out.eps_above_hypothesis},
                {"trace", std::move(trace)}};
}

ContainerOutput container_from_json(const Json& json) {
    ContainerOutput out;
    out.ground_n = ground_of(json);
    require(out.ground_n <= kMaxContainerGround, ErrorKind::ground_too_large, "container ground set too large");
    out.h1 = codes_family(out.ground_n, field(json, "h1"));
    out.h2 = codes_family(out.ground_n, field(json, "h2"));
    out.f_h1 = codes_family(out.ground_n, field(json, "f_h1"));
    out.g = codes_family(out.ground_n, field(json, "g"));
    out.phase_boundary = field(json, "phase_boundary").get<std::size_t>();
    out.eps_above_hypothesis = json.value("eps_above_hypothesis", false);
    for (const auto& r : field(json, "trace")) {
        ContainerRound round;
        round.round = field(r, "round").get<std::size_t>();
        round.chosen = field(r, "g").get<Code>();
        round.weight = field(r, "w").get<std::size_t>();
        round.phase = field(r, "phase").get<int>();
        const auto action = field(r, "action").get<std::string>();
        if (action == "drop") {
            round.action = RoundAction::drop;
        } else if (action == "remove") {
            round.action = RoundAction::remove;
        } else if (action == "end_phase") {
            round.action = RoundAction::end_phase;
        } else {
            fail(ErrorKind::parse, "unknown round action '" + action + "'");
        }
        for (const auto& c : field(r, "removed")) round.removed.push_back(c.get<Code>());
        out.trace.push_back(std::move(round));
    }
    return out;
}

Json digraph_to_json(const Digraph& graph) {
    Json edges = Json::array();
    for (const auto& [u, v] : graph.edges) edges.push_back({u, v});
    return Json{{"vertices", graph.vertices}, {"edges", std::move(edges)}};
}

Digraph digraph_from_json(const Json& json) {
    Digraph graph;
    graph.vertices = field(json, "vertices").get<int>();
    for (const auto& e : field(json, "edges")) {
        require(e.is_array() && e.size() == 2, ErrorKind::parse, "edges are pairs [u, v]");
        graph.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    validate_digraph(graph);
    return graph;
}

Json tree_run_to_json(const TreeCountingRun& run) {
    Json pruned = Json::array();
    for (const auto& h : run.pruned) pruned.push_back(h.size());
    Json order = Json::array();
    for (const auto& [a, b] : run.edge_order) order.push_back({a, b});
    Json steps = Json::array();
    for (const auto& c : run.step_choices) steps.push_back(to_string(c));
    Json out{{"vertices", run.graph.vertices},
             {"edges", run.graph.edges.size()},
             {"tree", poset_to_json(run.tree)},
             {"part_a", run.part_a.size()},
             {"part_b", run.part_b.size()},
             {"pruned_edges", std::move(pruned)},
             {"edge_order", std::move(order)},
             {"step_choices", std::move(steps)},
             {"certified", to_string(run.certified)}};
    out["exact"] = run.exact ? Json(to_string(*run.exact)) : Json(nullptr);
    return out;
}

}  // namespace posetlab
