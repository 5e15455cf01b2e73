#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "conduit/rate.hpp"
#include "conduit/rate_matrix.hpp"

namespace conduit {

/// Fixed-point arc weight: rate in 1e-6-percent units plus the per-hop
/// sanction unit. Every present arc satisfies weight = rate + 1 exactly.
using Weight = std::int64_t;

struct WeightedArc {
    int from;
    int to;
    Weight weight; // >= 1
};

/// Weighted directed withholding-tax graph for one income type. Unfiltered
/// graphs are complete; thresholded graphs record the threshold that
/// produced them.
class TaxGraph {
public:
    static TaxGraph from_matrix(const RateMatrix& matrix);

    /// Arbitrary positive arc weights, bypassing the rate+sanction encoding.
    /// Used by graph import and by tests that need hand-built weights.
    static TaxGraph from_arcs(int n, IncomeType income_type,
                              const std::vector<WeightedArc>& arcs,
                              std::optional<Micro> threshold = std::nullopt);

    int size() const { return n_; }
    IncomeType income_type() const { return income_type_; }
    std::optional<Micro> threshold() const { return threshold_; }
    bool filtered() const { return threshold_.has_value(); }

    bool has_arc(int from, int to) const { return weight_at(from, to) >= 0; }
    Weight weight(int from, int to) const {
        assert(has_arc(from, to));
        return weight_at(from, to);
    }
    Micro rate(int from, int to) const { return weight(from, to) - kSanction; }

    std::int64_t arc_count() const;

    bool operator==(const TaxGraph& other) const = default;

private:
    TaxGraph(int n, IncomeType income_type, std::optional<Micro> threshold)
        : n_(n), income_type_(income_type), threshold_(threshold),
          weights_(static_cast<std::size_t>(n) * n, -1) {}

    Weight weight_at(int from, int to) const {
        return weights_[static_cast<std::size_t>(from) * n_ + to];
    }

    int n_;
    IncomeType income_type_;
    std::optional<Micro> threshold_;
    std::vector<Weight> weights_; // -1 = absent

    friend TaxGraph apply_threshold(const TaxGraph&, Micro);
};

/// Max-weight undirected projection: one edge per unordered pair carrying
/// the higher of the two directional rates. No sanction on edges.
class UndirectedTaxGraph {
public:
    UndirectedTaxGraph(int n, IncomeType income_type, std::optional<Micro> threshold)
        : n_(n), income_type_(income_type), threshold_(threshold),
          rates_(static_cast<std::size_t>(n) * (n - 1) / 2, -1) {}

    int size() const { return n_; }
    IncomeType income_type() const { return income_type_; }
    std::optional<Micro> threshold() const { return threshold_; }
    bool filtered() const { return threshold_.has_value(); }

    bool has_edge(int a, int b) const { return rates_[pair_index(a, b)] >= 0; }
    Micro edge_rate(int a, int b) const {
        assert(has_edge(a, b));
        return rates_[pair_index(a, b)];
    }

    void set_edge(int a, int b, Micro rate) { rates_[pair_index(a, b)] = rate; }
    void remove_edge(int a, int b) { rates_[pair_index(a, b)] = -1; }

    std::int64_t edge_count() const;

    bool operator==(const UndirectedTaxGraph& other) const = default;

private:
    std::size_t pair_index(int a, int b) const {
        assert(a != b);
        if (a > b)
            std::swap(a, b);
        // index of {a,b}, a < b, in the upper triangle laid out row by row
        return static_cast<std::size_t>(a) * n_ - static_cast<std::size_t>(a) * (a + 1) / 2 +
               (b - a - 1);
    }

    int n_;
    IncomeType income_type_;
    std::optional<Micro> threshold_;
    std::vector<Micro> rates_; // -1 = absent
};

/// Complete digraph with arc weight = rate + sanction.
TaxGraph build_directed(const RateMatrix& matrix);

/// Keeps arcs whose base rate is <= threshold (the sanction is excluded from
/// the comparison), removes the rest, records the threshold.
TaxGraph apply_threshold(const TaxGraph& graph, Micro threshold);

/// Max-rate undirected projection of the unfiltered complete digraph.
/// Throws DomainError on filtered input: projection precedes thresholding.
UndirectedTaxGraph to_undirected(const TaxGraph& graph);

UndirectedTaxGraph apply_threshold_undirected(const UndirectedTaxGraph& graph, Micro threshold);

/// Vertices with no incident arcs/edges, ascending.
std::vector<int> isolated_vertices(const TaxGraph& graph);
std::vector<int> isolated_vertices(const UndirectedTaxGraph& graph);

} // namespace conduit
