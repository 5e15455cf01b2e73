#include "conduit/centrality.hpp"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

#include "conduit/errors.hpp"

namespace conduit {

std::string_view to_string(CentralityKind kind) {
    return kind == CentralityKind::Load ? "load" : "betweenness";
}

CentralityKind centrality_kind_from_string(std::string_view text) {
    if (text == "load") return CentralityKind::Load;
    if (text == "betweenness") return CentralityKind::Betweenness;
    throw ParseError("unknown centrality kind '" + std::string(text) +
                     "' (expected load or betweenness)");
}

int effective_threads(int requested) {
    int threads = requested > 0 ? requested : omp_get_max_threads();
    if (const char* cap_env = std::getenv("CONDUIT_SCAN_THREADS")) {
        int cap = std::atoi(cap_env);
        if (cap > 0)
            threads = std::min(threads, cap);
    }
    return std::max(threads, 1);
}

namespace {

// Marks vertices that can reach `target` along DAG arcs.
void mark_reaches(const ShortestPathDag& dag, int target, std::vector<char>& reaches,
                  std::vector<int>& stack) {
    std::fill(reaches.begin(), reaches.end(), 0);
    reaches[static_cast<std::size_t>(target)] = 1;
    stack.assign(1, target);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : dag.preds[static_cast<std::size_t>(v)])
            if (!reaches[static_cast<std::size_t>(u)]) {
                reaches[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
    }
}

struct SourceScratch {
    std::vector<char> reaches;
    std::vector<int> stack;
    std::vector<double> flow;

    explicit SourceScratch(std::size_t n) : reaches(n), flow(n) {}
};

// Forward equal-split propagation for one (source, target) pair; flows are
// accumulated into `sink` for every intermediate vertex.
void accumulate_pair_load(const ShortestPathDag& dag, int target, SourceScratch& s,
                          std::vector<double>& sink) {
    mark_reaches(dag, target, s.reaches, s.stack);
    std::fill(s.flow.begin(), s.flow.end(), 0.0);
    s.flow[static_cast<std::size_t>(dag.source)] = 1.0;
    for (int v : dag.order) {
        if (!s.reaches[static_cast<std::size_t>(v)] || v == target)
            continue;
        double f = s.flow[static_cast<std::size_t>(v)];
        if (f == 0.0)
            continue;
        int forks = 0;
        for (int w : dag.succs[static_cast<std::size_t>(v)])
            if (s.reaches[static_cast<std::size_t>(w)])
                ++forks;
        double share = f / forks;
        for (int w : dag.succs[static_cast<std::size_t>(v)])
            if (s.reaches[static_cast<std::size_t>(w)])
                s.flow[static_cast<std::size_t>(w)] += share;
        if (v != dag.source)
            sink[static_cast<std::size_t>(v)] += f;
    }
}

// One source's contribution to load centrality: sum of pair flows over all
// reachable targets, intermediates only.
void load_source_kernel(const TaxGraph& graph, int source, std::vector<double>& row) {
    const int n = graph.size();
    ShortestPathDag dag = dijkstra_dag(graph, source);
    SourceScratch scratch(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        if (t == source || !dag.reachable(t))
            continue;
        accumulate_pair_load(dag, t, scratch, row);
    }
}

// Brandes: one source's dependency contribution over the exact tie DAG.
void betweenness_source_kernel(const TaxGraph& graph, int source, std::vector<double>& row) {
    const std::size_t n = static_cast<std::size_t>(graph.size());
    ShortestPathDag dag = dijkstra_dag(graph, source);

    std::vector<double> sigma(n, 0.0), delta(n, 0.0);
    sigma[static_cast<std::size_t>(source)] = 1.0;
    for (int v : dag.order)
        for (int u : dag.preds[static_cast<std::size_t>(v)])
            sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];

    for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
        int w = *it;
        for (int u : dag.preds[static_cast<std::size_t>(w)])
            delta[static_cast<std::size_t>(u)] += sigma[static_cast<std::size_t>(u)] /
                                                  sigma[static_cast<std::size_t>(w)] *
                                                  (1.0 + delta[static_cast<std::size_t>(w)]);
        if (w != source)
            row[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
    }
}

using SourceKernel = void (*)(const TaxGraph&, int, std::vector<double>&);

CentralityScores run_centrality(const TaxGraph& graph, CentralityKind kind, int threads,
                                bool parallel) {
    const int n = graph.size();
    SourceKernel kernel =
        kind == CentralityKind::Load ? load_source_kernel : betweenness_source_kernel;

    // One partial-sum row per source; the final reduction walks sources in
    // ascending id order, which makes the result schedule-independent.
    std::vector<std::vector<double>> contrib(static_cast<std::size_t>(n));
    if (parallel) {
        int nt = effective_threads(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (int s = 0; s < n; ++s) {
            contrib[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(n), 0.0);
            kernel(graph, s, contrib[static_cast<std::size_t>(s)]);
        }
    } else {
        for (int s = 0; s < n; ++s) {
            contrib[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(n), 0.0);
            kernel(graph, s, contrib[static_cast<std::size_t>(s)]);
        }
    }

    CentralityScores scores;
    scores.kind = kind;
    scores.meta = {graph.income_type(), graph.threshold(), n};
    scores.raw.assign(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s)
        for (int k = 0; k < n; ++k)
            scores.raw[static_cast<std::size_t>(k)] +=
                contrib[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)];

    scores.normalized.assign(static_cast<std::size_t>(n), 0.0);
    if (n >= 3) {
        double denom = static_cast<double>(n - 1) * (n - 2);
        for (int k = 0; k < n; ++k)
            scores.normalized[static_cast<std::size_t>(k)] =
                scores.raw[static_cast<std::size_t>(k)] / denom;
    }
    return scores;
}

} // namespace

std::vector<double> pair_load(const ShortestPathDag& dag, int target) {
    const std::size_t n = dag.dist.size();
    if (!dag.reachable(target))
        return std::vector<double>(n, 0.0);
    SourceScratch scratch(n);
    std::vector<double> sink(n, 0.0);
    accumulate_pair_load(dag, target, scratch, sink);
    // Full flow field: 1 at both endpoints, the l value between.
    return scratch.flow;
}

std::vector<double> pair_dependency(const ShortestPathDag& dag, int target) {
    const std::size_t n = dag.dist.size();
    std::vector<double> dep(n, 0.0);
    if (!dag.reachable(target))
        return dep;

    std::vector<char> reaches(n, 0);
    std::vector<int> stack;
    mark_reaches(dag, target, reaches, stack);

    std::vector<double> sigma(n, 0.0), sigma_to(n, 0.0);
    sigma[static_cast<std::size_t>(dag.source)] = 1.0;
    for (int v : dag.order)
        for (int u : dag.preds[static_cast<std::size_t>(v)])
            sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];
    sigma_to[static_cast<std::size_t>(target)] = 1.0;
    for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
        int v = *it;
        if (!reaches[static_cast<std::size_t>(v)] || v == target)
            continue;
        for (int w : dag.succs[static_cast<std::size_t>(v)])
            if (reaches[static_cast<std::size_t>(w)])
                sigma_to[static_cast<std::size_t>(v)] += sigma_to[static_cast<std::size_t>(w)];
    }

    double total = sigma[static_cast<std::size_t>(target)];
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<int>(v) == dag.source || static_cast<int>(v) == target ||
            !reaches[v])
            continue;
        dep[v] = sigma[v] * sigma_to[v] / total;
    }
    return dep;
}

CentralityScores load_centrality(const TaxGraph& graph, int threads) {
    return run_centrality(graph, CentralityKind::Load, threads, true);
}

CentralityScores betweenness_centrality(const TaxGraph& graph, int threads) {
    return run_centrality(graph, CentralityKind::Betweenness, threads, true);
}

CentralityScores load_centrality_serial(const TaxGraph& graph) {
    return run_centrality(graph, CentralityKind::Load, 1, false);
}

CentralityScores betweenness_centrality_serial(const TaxGraph& graph) {
    return run_centrality(graph, CentralityKind::Betweenness, 1, false);
}

std::vector<std::pair<Micro, CentralityScores>>
sweep_centrality(const RateMatrix& matrix, std::vector<Micro> thresholds,
                 CentralityKind kind, int threads) {
    if (thresholds.empty())
        throw DomainError("threshold sweep needs at least one threshold");
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    TaxGraph full = build_directed(matrix);
    std::vector<std::pair<Micro, CentralityScores>> out;
    out.reserve(thresholds.size());
    for (Micro t : thresholds) {
        TaxGraph g = apply_threshold(full, t);
        out.emplace_back(t, run_centrality(g, kind, threads, true));
    }
    return out;
}

std::vector<RankingRow> rank(const CentralityScores& scores,
                             const JurisdictionRegistry& registry,
                             std::optional<int> top_k) {
    const int n = scores.meta.n;
    std::vector<RankingRow> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        rows.push_back({registry.code(v), scores.raw[static_cast<std::size_t>(v)],
                        scores.normalized[static_cast<std::size_t>(v)]});
    std::sort(rows.begin(), rows.end(), [](const RankingRow& a, const RankingRow& b) {
        if (a.normalized != b.normalized)
            return a.normalized > b.normalized;
        return a.code < b.code;
    });
    if (top_k && *top_k >= 0 && rows.size() > static_cast<std::size_t>(*top_k))
        rows.resize(static_cast<std::size_t>(*top_k));
    return rows;
}

} // namespace conduit
