#pragma once

// Internal: cycle search on small explicit graphs, shared by strategy certification and
// Mealy machine verification.

#include <optional>
#include <vector>

namespace grabin::detail {

using Adjacency = std::vector<std::vector<unsigned>>;

/// Strongly connected component id per node (nodes with !active[v] get -1).
std::vector<int> scc_ids(const Adjacency& adj, const std::vector<char>& active);

/// A cycle through active nodes whose maximal colour has the given parity (0 even,
/// 1 odd), as a node sequence v0 v1 ... vk with an edge vk -> v0. Checked per
/// candidate colour d via SCCs of the subgraph restricted to colours <= d.
std::optional<std::vector<unsigned>> find_parity_cycle(const Adjacency& adj, const std::vector<unsigned>& colour,
                                                       const std::vector<char>& active, unsigned parity);

/// Shortest path from `from` to `to` over active nodes (inclusive of both ends).
std::optional<std::vector<unsigned>> shortest_path(const Adjacency& adj, const std::vector<char>& active,
                                                   unsigned from, unsigned to);

}  // namespace grabin::detail
