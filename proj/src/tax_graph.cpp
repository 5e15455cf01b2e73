#include "conduit/tax_graph.hpp"

#include <algorithm>

#include "conduit/errors.hpp"

namespace conduit {

TaxGraph TaxGraph::from_matrix(const RateMatrix& matrix) {
    const int n = matrix.size();
    TaxGraph g(n, matrix.income_type(), std::nullopt);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                g.weights_[static_cast<std::size_t>(i) * n + j] =
                    matrix.rate(i, j) + kSanction;
    return g;
}

TaxGraph TaxGraph::from_arcs(int n, IncomeType income_type,
                             const std::vector<WeightedArc>& arcs,
                             std::optional<Micro> threshold) {
    TaxGraph g(n, income_type, threshold);
    for (const auto& arc : arcs) {
        if (arc.from == arc.to)
            throw DomainError("self-arc at vertex " + std::to_string(arc.from));
        if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n)
            throw DomainError("arc endpoint out of range");
        if (arc.weight < 1)
            throw DomainError("non-positive arc weight");
        Weight& slot = g.weights_[static_cast<std::size_t>(arc.from) * n + arc.to];
        if (slot >= 0)
            throw DomainError("duplicate arc " + std::to_string(arc.from) + " -> " +
                              std::to_string(arc.to));
        slot = arc.weight;
    }
    return g;
}

std::int64_t TaxGraph::arc_count() const {
    return std::count_if(weights_.begin(), weights_.end(), [](Weight w) { return w >= 0; });
}

std::int64_t UndirectedTaxGraph::edge_count() const {
    return std::count_if(rates_.begin(), rates_.end(), [](Micro r) { return r >= 0; });
}

TaxGraph build_directed(const RateMatrix& matrix) {
    return TaxGraph::from_matrix(matrix);
}

TaxGraph apply_threshold(const TaxGraph& graph, Micro threshold) {
    if (threshold < 0)
        throw DomainError("negative threshold");
    TaxGraph out(graph.size(), graph.income_type(), threshold);
    const int n = graph.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && graph.has_arc(i, j) && graph.rate(i, j) <= threshold)
                out.weights_[static_cast<std::size_t>(i) * n + j] = graph.weight(i, j);
    return out;
}

UndirectedTaxGraph to_undirected(const TaxGraph& graph) {
    if (graph.filtered())
        throw DomainError("undirected projection requires the unfiltered graph; "
                          "apply thresholds after projecting");
    const int n = graph.size();
    UndirectedTaxGraph out(n, graph.income_type(), std::nullopt);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!graph.has_arc(a, b) || !graph.has_arc(b, a))
                throw DomainError("undirected projection requires a complete digraph");
            out.set_edge(a, b, std::max(graph.rate(a, b), graph.rate(b, a)));
        }
    return out;
}

UndirectedTaxGraph apply_threshold_undirected(const UndirectedTaxGraph& graph, Micro threshold) {
    if (threshold < 0)
        throw DomainError("negative threshold");
    const int n = graph.size();
    UndirectedTaxGraph out(n, graph.income_type(), threshold);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (graph.has_edge(a, b) && graph.edge_rate(a, b) <= threshold)
                out.set_edge(a, b, graph.edge_rate(a, b));
    return out;
}

std::vector<int> isolated_vertices(const TaxGraph& graph) {
    const int n = graph.size();
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        bool incident = false;
        for (int u = 0; u < n && !incident; ++u)
            if (u != v && (graph.has_arc(v, u) || graph.has_arc(u, v)))
                incident = true;
        if (!incident)
            out.push_back(v);
    }
    return out;
}

std::vector<int> isolated_vertices(const UndirectedTaxGraph& graph) {
    const int n = graph.size();
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        bool incident = false;
        for (int u = 0; u < n && !incident; ++u)
            if (u != v && graph.has_edge(v, u))
                incident = true;
        if (!incident)
            out.push_back(v);
    }
    return out;
}

} // namespace conduit
