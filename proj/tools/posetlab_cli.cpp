// Command-line front end: one verb per library operation, JSON (default) or
// CSV on stdout. Exit codes: 0 success, 2 invalid input, 3 size guard.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "posetlab/antichain.hpp"
#include "posetlab/chains.hpp"
#include "posetlab/container.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/extremal.hpp"
#include "posetlab/io.hpp"
#include "posetlab/random_model.hpp"
#include "posetlab/tree_counting.hpp"

using namespace posetlab;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitGuard = 3;

struct Globals {
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::string format = "json";
    int threads = 1;
};

// "@path" reads the file; anything else is the literal argument.
std::string resolve(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1), std::ios::binary);
    require(in.good(), ErrorKind::parse, "cannot read " + arg.substr(1));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// POSETLAB_MAX_N lowers every ground-size guard.
void guard_n(int n) {
    const char* env = std::getenv("POSETLAB_MAX_N");
    if (env == nullptr) return;
    const int cap = std::atoi(env);
    require(n <= cap, ErrorKind::too_large,
            "n = " + std::to_string(n) + " exceeds POSETLAB_MAX_N = " + std::to_string(cap));
}

SetFamily load_family(const std::string& arg) {
    SetFamily family = parse_family(resolve(arg));
    guard_n(family.ground_n());
    return family;
}

Poset load_poset(const std::string& arg) { return parse_poset(resolve(arg)); }

std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ",";
        out += cells[i];
    }
    return out + "\n";
}

std::string number(double value) {
    std::ostringstream out;
    out.precision(12);
    out << value;
    return out.str();
}

bool is_diamond(const Poset& poset) {
    return poset.size() >= 4 && canonical_form(poset) == canonical_form(named::diamond(poset.size() - 2));
}

// Flat JSON object -> two-line CSV.
std::string object_csv(const Json& json) {
    std::vector<std::string> keys;
    std::vector<std::string> values;
    for (const auto& [key, value] : json.items()) {
        if (value.is_structured()) continue;
        keys.push_back(key);
        values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    return csv_line(keys) + csv_line(values);
}

void emit(const Globals& g, const Json& json, const std::string& csv = "") {
    if (g.format == "csv") {
        std::cout << (csv.empty() ? object_csv(json) : csv);
    } else {
        std::cout << json.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremal and random-model computations for families of subsets"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for every random choice");
    app.add_option("--trials", g.trials, "Trials for census-style verbs");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", g.threads, "Accepted for scripting; work runs on one thread")
        ->check(CLI::PositiveNumber);

    std::string poset_arg, family_arg, eps_arg = "1/8", rule_arg = "lowest", generator_arg = "greedy";
    std::string p_arg, gamma_arg, mode_arg = "sample", digraph_arg, container_arg, config_arg;
    int n = 0, t = 1, r = 1, s = 2;
    std::size_t m = 0, samples = 0;
    bool induced = false, no_d = false;
    std::vector<int> ns;
    std::vector<std::string> gammas;
    std::size_t seed_count = 0;

    auto* params = app.add_subcommand("params", "e, e*, x, x*, d, d* of a poset");
    params->add_option("--poset", poset_arg)->required();
    params->add_flag("--no-d", no_d, "Skip the subposet search for d and d*");

    auto* free_check = app.add_subcommand("free-check", "Is the family (induced) P-free?");
    free_check->add_option("--poset", poset_arg)->required();
    free_check->add_option("--family", family_arg)->required();
    free_check->add_flag("--induced", induced);

    auto* count = app.add_subcommand("count", "Copies and embeddings of P in a family");
    count->add_option("--poset", poset_arg)->required();
    count->add_option("--family", family_arg)->required();
    count->add_flag("--induced", induced);

    auto* la = app.add_subcommand("la", "La(n, P) with a witness family");
    la->add_option("--n", n)->required();
    la->add_option("--poset", poset_arg)->required();
    la->add_flag("--induced", induced);

    auto* min_copies_cmd = app.add_subcommand("min-copies", "Fewest copies over all m-set families (n <= 4)");
    min_copies_cmd->add_option("--n", n)->required();
    min_copies_cmd->add_option("--poset", poset_arg)->required();
    min_copies_cmd->add_option("--m", m)->required();
    min_copies_cmd->add_flag("--induced", induced);

    auto* m_count_cmd = app.add_subcommand("m-count", "Copies of P in the e(P)+1 middle levels");
    m_count_cmd->add_option("--n", n)->required();
    m_count_cmd->add_option("--poset", poset_arg)->required();
    m_count_cmd->add_flag("--induced", induced);

    auto* container = app.add_subcommand("container", "Run the two-phase container algorithm");
    container->add_option("--n", n)->required();
    container->add_option("--t", t)->required();
    container->add_option("--r", r)->required();
    container->add_option("--eps", eps_arg);
    container->add_option("--family", family_arg)->required();
    container->add_option("--rule", rule_arg)->check(CLI::IsMember({"lowest", "lex"}));

    auto* chain_stats = app.add_subcommand("chain-stats", "Min-max partition of the maximal chains");
    chain_stats->add_option("--family", family_arg)->required();
    chain_stats->add_option("--samples", samples, "Sample this many chains instead of the exact count");

    auto* diamond = app.add_subcommand("diamond-lb", "Sum of C(b(A,C), s) over comparable member pairs");
    diamond->add_option("--family", family_arg)->required();
    diamond->add_option("--s", s)->required();

    auto* tree_count = app.add_subcommand("tree-count", "Cut, prune and greedily embed a height-2 tree");
    tree_count->add_option("--digraph", digraph_arg, "Digraph JSON {vertices, edges}");
    tree_count->add_option("--family", family_arg, "Use the family's comparability digraph");
    tree_count->add_option("--tree", poset_arg)->required();

    auto* random = app.add_subcommand("random", "Experiments on P(n, p)");
    random->add_option("--n", n)->required();
    random->add_option("--p", p_arg, "Probability as a rational or decimal");
    random->add_option("--gamma", gamma_arg, "Use p = n^-gamma");
    random->add_option("--mode", mode_arg)->check(CLI::IsMember({"sample", "removal", "largest-free"}));
    random->add_option("--poset", poset_arg);
    random->add_flag("--induced", induced);

    auto* sweep = app.add_subcommand("sweep", "Largest free subfamily of P(n, p) over a grid");
    sweep->add_option("--config", config_arg, "Experiment config JSON");
    sweep->add_option("--poset", poset_arg);
    sweep->add_flag("--induced", induced);
    sweep->add_option("--n", ns);
    sweep->add_option("--gamma", gammas);
    sweep->add_option("--seeds", seed_count, "Seeds seed, seed+1, ...");

    auto* census = app.add_subcommand("census", "Containers of many generated vee-free families");
    census->add_option("--n", n)->required();
    census->add_option("--t", t)->required();
    census->add_option("--r", r)->required();
    census->add_option("--eps", eps_arg);
    census->add_option("--generator", generator_arg);

    auto* verify = app.add_subcommand("verify", "Replay and check a container output");
    verify->add_option("--container", container_arg)->required();
    verify->add_option("--family", family_arg)->required();
    verify->add_option("--t", t)->required();
    verify->add_option("--r", r)->required();
    verify->add_option("--eps", eps_arg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*params) {
            const Poset poset = load_poset(poset_arg);
            const auto values = poset_params(poset, !no_d);
            Json out{{"poset", poset_arg}, {"size", poset.size()}, {"e", values.e}, {"e_star", values.e_star}};
            out["x"] = values.x ? Json(*values.x) : Json(nullptr);
            out["x_star"] = values.x_star ? Json(*values.x_star) : Json(nullptr);
            if (!no_d) {
                out["d"] = values.d ? Json(to_string(*values.d)) : Json(nullptr);
                out["d_star"] = values.d_star ? Json(to_string(*values.d_star)) : Json(nullptr);
                out["d_mode"] = "weak subposets";
                out["d_star_mode"] = "induced subposets";
            }
            if (is_diamond(poset)) {
                const auto mv = m_values(poset.size() - 2);
                out["m_s"] = mv.m_s;
                out["m_star_s"] = mv.m_star_s;
            }
            emit(g, out);
        } else if (*free_check) {
            const Poset poset = load_poset(poset_arg);
            const SetFamily family = load_family(family_arg);
            const auto copy = find_copy(poset, family, induced);
            Json out{{"free", !copy.has_value()}};
            out["copy"] = copy ? copy_record_to_json(*copy) : Json(nullptr);
            emit(g, out);
        } else if (*count) {
            const CopyCount c = count_copies(load_poset(poset_arg), load_family(family_arg), induced);
            emit(g, Json{{"copies", to_string(c.copies)}, {"embeddings", to_string(c.embeddings)}});
        } else if (*la) {
            guard_n(n);
            const auto result = la_exact(n, load_poset(poset_arg), induced);
            emit(g, Json{{"n", n}, {"size", result.size}, {"witness", family_to_json(result.witness)}});
        } else if (*min_copies_cmd) {
            guard_n(n);
            const BigInt best = min_copies(n, load_poset(poset_arg), m, induced);
            emit(g, Json{{"n", n}, {"m", m}, {"min_copies", to_string(best)}});
        } else if (*m_count_cmd) {
            guard_n(n);
            const Poset poset = load_poset(poset_arg);
            const BigInt total = m_count(n, poset, induced);
            emit(g, Json{{"n", n}, {"e", e_param(poset, induced)}, {"m_count", to_string(total)}});
        } else if (*container) {
            guard_n(n);
            const SetFamily family = load_family(family_arg);
            require(family.ground_n() == n, ErrorKind::bad_param,
                    "family lives on [" + std::to_string(family.ground_n()) + "], not [" + std::to_string(n) + "]");
            const auto rule = rule_arg == "lex" ? AntichainRule::lexicographic : AntichainRule::lowest;
            const auto out = run_container(family, t, r, parse_rational(eps_arg), rule);
            if (g.format == "csv") {
                std::string csv = csv_line({"round", "g", "w", "phase", "action", "removed"});
                for (const auto& round : out.trace) {
                    csv += csv_line({std::to_string(round.round), std::to_string(round.chosen),
                                     std::to_string(round.weight), std::to_string(round.phase),
                                     to_string(round.action), std::to_string(round.removed.size())});
                }
                emit(g, Json{}, csv);
            } else {
                emit(g, container_to_json(out));
            }
        } else if (*chain_stats) {
            const SetFamily family = load_family(family_arg);
            const auto stats = samples > 0 ? minmax_stats_sampled(family, samples, g.seed) : minmax_stats(family);
            std::string csv = csv_line({"A", "C", "b", "a", "mass"});
            for (const auto& p : stats.pairs) {
                csv += csv_line({std::to_string(p.low), std::to_string(p.high), std::to_string(p.between),
                                 std::to_string(p.interval_antichain), to_string(p.mass)});
            }
            emit(g, chain_stats_to_json(stats), csv);
        } else if (*diamond) {
            const BigInt bound = diamond_lb(load_family(family_arg), s);
            emit(g, Json{{"s", s}, {"lower_bound", to_string(bound)}});
        } else if (*tree_count) {
            Digraph graph;
            if (!digraph_arg.empty()) {
                graph = digraph_from_json(Json::parse(resolve(digraph_arg)));
            } else {
                require(!family_arg.empty(), ErrorKind::bad_param, "give --digraph or --family");
                graph = comparability_graph(load_family(family_arg));
            }
            emit(g, tree_run_to_json(run_tree_counting(graph, load_poset(poset_arg))));
        } else if (*random) {
            guard_n(n);
            require(p_arg.empty() != gamma_arg.empty(), ErrorKind::bad_param, "give exactly one of --p and --gamma");
            const auto p = p_arg.empty() ? InclusionProbability::power(n, parse_rational(gamma_arg))
                                         : InclusionProbability::rational(parse_rational(p_arg));
            const double scale = p.approx() * binomial(n, n / 2).convert_to<double>();
            auto normalized = [&](std::size_t size) { return scale > 0 ? static_cast<double>(size) / scale : 0.0; };
            Json out{{"n", n}, {"p", p.label()}, {"threshold", to_string(p.threshold())}, {"seed", g.seed}};
            if (mode_arg == "sample") {
                const SetFamily sample = sample_pnp(n, p, g.seed);
                out["size"] = sample.size();
                out["family"] = family_to_json(sample);
            } else {
                require(!poset_arg.empty(), ErrorKind::bad_param, "--poset is required for mode " + mode_arg);
                const Poset poset = load_poset(poset_arg);
                if (mode_arg == "removal") {
                    const auto result = removal_construction(n, p, g.seed, poset, induced);
                    out["sampled_size"] = result.sampled.size();
                    out["removed"] = result.removed;
                    out["size"] = result.family.size();
                    out["normalized"] = normalized(result.family.size());
                    out["family"] = family_to_json(result.family);
                } else {
                    const auto found = largest_free_in_sample(sample_pnp(n, p, g.seed), poset, induced);
                    out["size"] = found.size;
                    out["exact"] = found.exact;
                    out["normalized"] = normalized(found.size);
                    out["witness"] = family_to_json(found.witness);
                }
            }
            emit(g, out);
        } else if (*sweep) {
            std::vector<std::uint64_t> seeds;
            std::vector<ExactRational> gamma_values;
            std::string p_mode = "n^-gamma";
            std::vector<ExactRational> fixed_p;
            if (!config_arg.empty()) {
                const Json config = Json::parse(resolve(config_arg));
                poset_arg = config.at("poset").is_string() ? config.at("poset").get<std::string>()
                                                          : config.at("poset").dump();
                induced = config.value("induced", false);
                ns = config.at("n").get<std::vector<int>>();
                for (const auto& x : config.value("gamma", Json::array())) {
                    gamma_values.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
                }
                seeds = config.at("seeds").get<std::vector<std::uint64_t>>();
                p_mode = config.value("p_mode", "n^-gamma");
                require(p_mode == "n^-gamma" || p_mode == "fixed", ErrorKind::parse, "p_mode is n^-gamma or fixed");
                for (const auto& x : config.value("p", Json::array())) {
                    fixed_p.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
                }
            } else {
                require(!poset_arg.empty(), ErrorKind::bad_param, "give --config or --poset");
                for (const auto& x : gammas) gamma_values.push_back(parse_rational(x));
                for (std::size_t i = 0; i < seed_count; ++i) seeds.push_back(g.seed + i);
            }
            for (int value : ns) guard_n(value);
            const Poset poset = load_poset(poset_arg);
            std::string csv = csv_line({"n", "p", "seed", "size", "normalized", "exact_flag"});
            Json rows = Json::array();
            Json out;
            if (p_mode == "fixed") {
                for (int value : ns) {
                    const double middle = binomial(value, value / 2).convert_to<double>();
                    for (const auto& pv : fixed_p) {
                        const auto p = InclusionProbability::rational(pv);
                        for (std::uint64_t seed : seeds) {
                            const auto found = largest_free_in_sample(sample_pnp(value, p, seed), poset, induced);
                            const double scale = p.approx() * middle;
                            const double norm = scale > 0 ? static_cast<double>(found.size) / scale : 0.0;
                            csv += csv_line({std::to_string(value), p.label(), std::to_string(seed),
                                             std::to_string(found.size), number(norm), found.exact ? "1" : "0"});
                            rows.push_back(Json{{"n", value}, {"p", p.label()}, {"seed", seed},
                                                {"size", found.size}, {"normalized", norm}, {"exact", found.exact}});
                        }
                    }
                }
                out = Json{{"rows", std::move(rows)}};
            } else {
                const auto table = threshold_sweep(poset, induced, ns, gamma_values, seeds);
                for (const auto& row : table.rows) {
                    csv += csv_line({std::to_string(row.n), row.p.label(), std::to_string(row.seed),
                                     std::to_string(row.size), number(row.normalized), row.exact ? "1" : "0"});
                    rows.push_back(Json{{"n", row.n}, {"gamma", to_string(row.gamma)}, {"p", row.p.label()},
                                        {"seed", row.seed}, {"size", row.size}, {"normalized", row.normalized},
                                        {"exact", row.exact}});
                }
                Json summary = Json::array();
                for (const auto& sm : table.summary) {
                    summary.push_back(Json{{"n", sm.n}, {"gamma", to_string(sm.gamma)}, {"seeds", sm.seeds},
                                           {"mean_normalized", sm.mean_normalized}, {"regime", sm.regime}});
                }
                out = Json{{"d", to_string(table.d)}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
            }
            emit(g, out, csv);
        } else if (*census) {
            guard_n(n);
            const auto summary = container_census(n, t, r, parse_rational(eps_arg),
                                                  parse_family_generator(generator_arg), g.trials, g.seed);
            emit(g, Json{{"n", n},
                         {"t", t},
                         {"r", r},
                         {"eps", eps_arg},
                         {"generator", generator_arg},
                         {"runs", summary.runs},
                         {"distinct_containers", summary.distinct_containers},
                         {"max_h", summary.max_h},
                         {"max_container", summary.max_container},
                         {"container_limit", to_string(summary.container_limit)},
                         {"over_limit", summary.over_limit},
                         {"max_h_bits", summary.max_h_bits}});
        } else if (*verify) {
            const auto out = container_from_json(Json::parse(resolve(container_arg)));
            const SetFamily family = load_family(family_arg);
            const auto report = verify_container(out, family, t, r, parse_rational(eps_arg));
            Json bounds = Json::array();
            std::string csv = csv_line({"bound", "value", "limit", "satisfied"});
            for (const auto& b : report.bounds) {
                bounds.push_back(
                    Json{{"name", b.name}, {"value", b.value}, {"limit", b.limit}, {"satisfied", b.satisfied}});
                csv += csv_line({b.name, b.value, b.limit, b.satisfied ? "1" : "0"});
            }
            emit(g,
                 Json{{"ok", true},
                      {"rounds_replayed", report.rounds_replayed},
                      {"final_weight", report.final_weight},
                      {"bounds", std::move(bounds)}},
                 csv);
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return e.is_guard() ? kExitGuard : kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
