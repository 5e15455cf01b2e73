#include "conduit/path_engine.hpp"

#include <algorithm>
#include <queue>

#include "conduit/errors.hpp"

namespace conduit {

ShortestPathDag dijkstra_dag(const TaxGraph& graph, int source) {
    const int n = graph.size();
    if (source < 0 || source >= n)
        throw DomainError("source vertex " + std::to_string(source) + " out of range");

    ShortestPathDag dag;
    dag.source = source;
    dag.dist.assign(static_cast<std::size_t>(n), -1);
    dag.preds.assign(static_cast<std::size_t>(n), {});
    dag.succs.assign(static_cast<std::size_t>(n), {});

    // (dist, vertex) min-heap; vertex id breaks ties for a deterministic
    // settle order. Stale entries are skipped on pop.
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<char> settled(static_cast<std::size_t>(n), 0);

    dag.dist[static_cast<std::size_t>(source)] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[static_cast<std::size_t>(u)])
            continue;
        settled[static_cast<std::size_t>(u)] = 1;
        dag.order.push_back(u);
        for (int v = 0; v < n; ++v) {
            if (v == u || !graph.has_arc(u, v))
                continue;
            std::int64_t cand = d + graph.weight(u, v);
            std::int64_t& dv = dag.dist[static_cast<std::size_t>(v)];
            if (dv < 0 || cand < dv) {
                dv = cand;
                dag.preds[static_cast<std::size_t>(v)].assign(1, u);
                heap.emplace(cand, v);
            } else if (cand == dv) {
                dag.preds[static_cast<std::size_t>(v)].push_back(u);
            }
        }
    }

    for (auto& p : dag.preds)
        std::sort(p.begin(), p.end());
    for (int v = 0; v < n; ++v)
        for (int u : dag.preds[static_cast<std::size_t>(v)])
            dag.succs[static_cast<std::size_t>(u)].push_back(v);
    for (auto& s : dag.succs)
        std::sort(s.begin(), s.end());
    return dag;
}

namespace {

// Fewest hops over minimum-weight paths source -> v, via DP in DAG order.
std::vector<int> min_hops(const ShortestPathDag& dag) {
    std::vector<int> hops(dag.dist.size(), -1);
    for (int v : dag.order) {
        if (v == dag.source) {
            hops[static_cast<std::size_t>(v)] = 0;
            continue;
        }
        int best = -1;
        for (int u : dag.preds[static_cast<std::size_t>(v)]) {
            int h = hops[static_cast<std::size_t>(u)];
            if (h >= 0 && (best < 0 || h + 1 < best))
                best = h + 1;
        }
        hops[static_cast<std::size_t>(v)] = best;
    }
    return hops;
}

} // namespace

std::optional<PathCost> min_cost(const TaxGraph& graph, int i, int j) {
    if (i == j)
        throw DomainError("min_cost requires distinct vertices");
    ShortestPathDag dag = dijkstra_dag(graph, i);
    if (!dag.reachable(j))
        return std::nullopt;
    int hops = min_hops(dag)[static_cast<std::size_t>(j)];
    std::int64_t total = dag.dist[static_cast<std::size_t>(j)];
    return PathCost{total - hops * kSanction, hops};
}

std::vector<Route> best_routes(const TaxGraph& graph, int i, int j, std::size_t max_routes) {
    if (i == j)
        throw DomainError("best_routes requires distinct vertices");
    ShortestPathDag dag = dijkstra_dag(graph, i);
    if (!dag.reachable(j))
        return {};

    // Restrict to vertices that lie on some i -> j minimum-weight path:
    // reachable from i in the DAG (all dist-finite vertices are) and able to
    // reach j along DAG arcs.
    const std::size_t n = dag.dist.size();
    std::vector<char> reaches(n, 0);
    reaches[static_cast<std::size_t>(j)] = 1;
    std::vector<int> stack{j};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : dag.preds[static_cast<std::size_t>(v)])
            if (!reaches[static_cast<std::size_t>(u)]) {
                reaches[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
    }

    std::optional<Micro> direct;
    if (graph.has_arc(i, j))
        direct = graph.rate(i, j);

    std::vector<Route> routes;
    std::vector<int> path{i};
    // Successors are stored ascending, so depth-first emission is already
    // lexicographic on the vertex sequence.
    auto dfs = [&](auto&& self, int v) -> void {
        if (v == j) {
            int hops = static_cast<int>(path.size()) - 1;
            Micro total = dag.dist[static_cast<std::size_t>(j)] - hops * kSanction;
            Route r{path, total, hops, direct, std::nullopt};
            if (direct)
                r.saving = *direct - total;
            if (routes.size() >= max_routes)
                throw DomainError("more than " + std::to_string(max_routes) +
                                  " tied minimum-weight routes; raise the route cap");
            routes.push_back(std::move(r));
            return;
        }
        for (int w : dag.succs[static_cast<std::size_t>(v)]) {
            if (!reaches[static_cast<std::size_t>(w)])
                continue;
            path.push_back(w);
            self(self, w);
            path.pop_back();
        }
    };
    dfs(dfs, i);
    return routes;
}

} // namespace conduit
