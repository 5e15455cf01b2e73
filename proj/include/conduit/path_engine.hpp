#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conduit/tax_graph.hpp"

namespace conduit {

/// Single-source shortest-path structure over exact fixed-point weights.
/// preds(v) holds every predecessor on a minimum-weight path (exact integer
/// ties, no tolerance); succs is the inverse. order lists reachable vertices
/// by ascending (dist, id) — a topological order of the DAG, since every arc
/// weighs at least one unit.
struct ShortestPathDag {
    int source = 0;
    std::vector<std::int64_t> dist;      // -1 = unreachable
    std::vector<std::vector<int>> preds; // ascending vertex id
    std::vector<std::vector<int>> succs; // ascending vertex id
    std::vector<int> order;

    bool reachable(int v) const { return dist[static_cast<std::size_t>(v)] >= 0; }
};

ShortestPathDag dijkstra_dag(const TaxGraph& graph, int source);

struct PathCost {
    Micro rate; // tax-rate part of the distance
    int hops;   // fewest hops among minimum-weight paths
};

/// Minimum-weight cost i -> j, decoded into (rate, hops). The hop part is the
/// fewest hops over the tied minimum-weight paths; the rate part is the total
/// weight minus those sanction units. Absent when unreachable.
std::optional<PathCost> min_cost(const TaxGraph& graph, int i, int j);

struct Route {
    std::vector<int> path; // vertex ids, i first, j last
    Micro total_rate;      // tax paid along this route
    int hops;
    std::optional<Micro> direct_rate; // absent when the direct arc is filtered out
    std::optional<Micro> saving;      // direct_rate - total_rate
};

inline constexpr std::size_t kDefaultRouteCap = 4096;

/// All minimum-weight routes i -> j in lexicographic order of the vertex
/// sequence. Throws DomainError when the tie set exceeds max_routes.
std::vector<Route> best_routes(const TaxGraph& graph, int i, int j,
                               std::size_t max_routes = kDefaultRouteCap);

} // namespace conduit
