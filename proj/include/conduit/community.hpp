#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conduit/centrality.hpp"
#include "conduit/registry.hpp"
#include "conduit/tax_graph.hpp"

namespace conduit {

enum class AffinityMode { Unweighted, RateAsWeight };

std::string_view to_string(AffinityMode mode);
AffinityMode affinity_mode_from_string(std::string_view text);

/// Symmetric non-negative affinity graph for modularity work. All weight
/// bookkeeping is 64-bit integer (edge count in Unweighted mode, 1e-6-percent
/// units in RateAsWeight mode); floating point enters only in the final Q and
/// gain formulas. Self-affinities carry aggregated intra-community mass
/// between Louvain levels.
class AffinityGraph {
public:
    struct Neighbor {
        int to;
        std::int64_t weight;
    };

    explicit AffinityGraph(int n)
        : adjacency_(static_cast<std::size_t>(n)), self_(static_cast<std::size_t>(n), 0),
          strength_(static_cast<std::size_t>(n), 0) {}

    /// Undirected edge with weight >= 0. Zero-weight edges stay in the
    /// adjacency (present but weightless).
    void add_edge(int a, int b, std::int64_t weight);
    /// Diagonal mass A_vv (counted once in the vertex strength).
    void add_self(int v, std::int64_t weight);

    int size() const { return static_cast<int>(adjacency_.size()); }
    const std::vector<Neighbor>& neighbors(int v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }
    std::int64_t self_affinity(int v) const { return self_[static_cast<std::size_t>(v)]; }
    /// k_i = A_ii + sum of incident edge weights.
    std::int64_t strength(int v) const { return strength_[static_cast<std::size_t>(v)]; }
    /// 2M = sum of strengths.
    std::int64_t total2m() const { return total2m_; }
    std::int64_t edge_count() const;

private:
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<std::int64_t> self_;
    std::vector<std::int64_t> strength_;
    std::int64_t total2m_ = 0;
};

/// Affinity of a thresholded undirected graph. Unweighted: a_ij = 1 per
/// surviving edge. RateAsWeight: a_ij = edge rate — note a 0% edge is then
/// present but weightless. Throws DomainError when no edge survives.
AffinityGraph to_affinity(const UndirectedTaxGraph& graph, AffinityMode mode);

struct Partition {
    std::vector<int> assignment; // dense 0-based community ids
    int community_count = 0;
    double modularity = 0.0;
};

/// Newman weighted modularity of an assignment, ordered-pair convention with
/// a_ii = 0 on flat graphs (self-pairs contribute only the expectation term).
/// Throws DomainError when total weight is zero or the assignment length is
/// wrong.
double modularity(const AffinityGraph& graph, const std::vector<int>& assignment);

/// Caches for incremental gain evaluation: the assignment plus each
/// community's total incident strength.
struct LouvainState {
    std::vector<int> assignment;
    std::vector<std::int64_t> community_strength;

    static LouvainState from_assignment(const AffinityGraph& graph, std::vector<int> assignment);
};

/// Modularity gain of moving `v` from its current community to `to`.
/// Equals modularity(after) - modularity(before) within 1e-12.
double delta_q(const AffinityGraph& graph, const LouvainState& state, int v, int from, int to);

struct LouvainConfig {
    std::uint64_t seed = 0;
    int max_passes = 64;
    double min_gain = 1e-9;
};

struct LouvainResult {
    Partition partition;
    bool converged = true;
    int passes = 0;
};

/// Two-phase greedy modularity optimization: seed-shuffled local moves until
/// no positive gain remains, then community aggregation; repeated until the
/// per-pass gain drops below min_gain. Deterministic for a given
/// (graph, seed, config). Communities are renumbered by descending size,
/// ties by smallest member id.
LouvainResult louvain(const AffinityGraph& graph, const LouvainConfig& config = {});

struct CurvePoint {
    Micro threshold;
    std::optional<double> modularity; // absent when the slice has no weight
    int community_count = 0;          // communities among linked vertices
    int isolate_count = 0;
};

struct ModularityCurve {
    std::vector<CurvePoint> points; // strictly descending thresholds
    std::optional<Micro> best_threshold() const;
};

/// Louvain per threshold over the undirected projection. Isolates stay in the
/// graph as singleton communities and are counted per point.
ModularityCurve sweep_modularity(const RateMatrix& matrix, std::vector<Micro> thresholds,
                                 AffinityMode mode, const LouvainConfig& config = {});

struct CommunityReport {
    struct Group {
        std::optional<int> community;   // nullopt = the "no link" isolate group
        std::vector<RankingRow> members; // descending centrality, ties by code
    };
    std::vector<Group> groups; // communities by descending size, isolates last
};

CommunityReport community_report(const Partition& partition, const CentralityScores& scores,
                                 const JurisdictionRegistry& registry,
                                 const std::vector<int>& isolates);

} // namespace conduit
