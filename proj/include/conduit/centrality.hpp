#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conduit/path_engine.hpp"
#include "conduit/registry.hpp"
#include "conduit/tax_graph.hpp"

namespace conduit {

enum class CentralityKind { Load, Betweenness };

std::string_view to_string(CentralityKind kind);
CentralityKind centrality_kind_from_string(std::string_view text);

struct GraphMeta {
    IncomeType income_type;
    std::optional<Micro> threshold;
    int n = 0;
};

struct CentralityScores {
    CentralityKind kind;
    std::vector<double> raw;
    std::vector<double> normalized; // raw / ((n-1)(n-2)); zero for n < 3
    GraphMeta meta;
};

/// Unit flow from dag.source toward target, split equally at each fork among
/// the DAG successors that can still reach the target. flow[target] == 1 for
/// reachable targets (conservation); zero everywhere when unreachable.
std::vector<double> pair_load(const ShortestPathDag& dag, int target);

/// Betweenness pair dependency: fraction of minimum-weight source->target
/// paths through each intermediate vertex. Endpoints score 0.
std::vector<double> pair_dependency(const ShortestPathDag& dag, int target);

/// Load centrality: for every ordered reachable pair (i, j), vertex k != i, j
/// accumulates the equal-split-at-fork flow through it. OpenMP-parallel over
/// sources; per-source partial sums are reduced in fixed vertex order, so the
/// result is bit-identical for any schedule or thread count.
CentralityScores load_centrality(const TaxGraph& graph, int threads = 0);

/// Freeman betweenness over the exact tie DAG (Brandes accumulation).
CentralityScores betweenness_centrality(const TaxGraph& graph, int threads = 0);

/// Serial reference implementations: same per-source kernels, no OpenMP.
/// Kept for correctness tests and as the benchmark baseline.
CentralityScores load_centrality_serial(const TaxGraph& graph);
CentralityScores betweenness_centrality_serial(const TaxGraph& graph);

/// One CentralityScores per threshold over the thresholded directed graph,
/// in descending threshold order (input is normalized to that order).
std::vector<std::pair<Micro, CentralityScores>>
sweep_centrality(const RateMatrix& matrix, std::vector<Micro> thresholds,
                 CentralityKind kind, int threads = 0);

struct RankingRow {
    std::string code;
    double raw;
    double normalized;
};

/// Descending by score, ties by code ascending.
std::vector<RankingRow> rank(const CentralityScores& scores,
                             const JurisdictionRegistry& registry,
                             std::optional<int> top_k = std::nullopt);

/// Thread count actually used: `requested` (0 = all hardware threads),
/// capped by the CONDUIT_SCAN_THREADS environment variable when set.
int effective_threads(int requested = 0);

} // namespace conduit
