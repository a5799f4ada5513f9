#pragma once

#include <string>

#include "json.hpp"
#include "posetlab/chains.hpp"
#include "posetlab/container.hpp"
#include "posetlab/embedding.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/set_family.hpp"
#include "posetlab/tree_counting.hpp"

namespace posetlab {

using Json = nlohmann::ordered_json;

/// {"n": n, "sets": [[1,3],[2],...]} with 1-based elements.
Json family_to_json(const SetFamily& family);
/// Accepts {"n", "sets"} or {"n", "codes"}.
SetFamily family_from_json(const Json& json);
/// JSON text, or the binary bitmap format when the first byte is not '{'.
SetFamily parse_family(const std::string& bytes);

/// {"size": k, "lt": [[i,j],...]} listing every strict relation.
Json poset_to_json(const Poset& poset);
Poset poset_from_json(const Json& json);
/// JSON text or a name such as "diamond:4".
Poset parse_poset(const std::string& text);

Json copy_record_to_json(const CopyRecord& record);
Json chain_stats_to_json(const ChainStats& stats);

Json container_to_json(const ContainerOutput& out);
ContainerOutput container_from_json(const Json& json);

/// {"vertices": m, "edges": [[u,v],...]}
Json digraph_to_json(const Digraph& graph);
Digraph digraph_from_json(const Json& json);
Json tree_run_to_json(const TreeCountingRun& run);

}  // namespace posetlab
