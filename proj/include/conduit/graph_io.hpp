#pragma once

#include <iosfwd>
#include <string>

#include "conduit/registry.hpp"
#include "conduit/tax_graph.hpp"

namespace conduit {

/// GraphML with node attribute `code`, edge attribute `rate` (decimal percent
/// string), and a graph-level boolean `sanction_included` (true for directed
/// graphs, whose in-memory weights carry the per-hop sanction).
void write_graphml(std::ostream& out, const TaxGraph& graph,
                   const JurisdictionRegistry& registry);
void write_graphml(std::ostream& out, const UndirectedTaxGraph& graph,
                   const JurisdictionRegistry& registry);

/// JSON adjacency. Round-trips exactly: read_*(write_*(g)) == g.
void write_json_adjacency(std::ostream& out, const TaxGraph& graph,
                          const JurisdictionRegistry& registry);
void write_json_adjacency(std::ostream& out, const UndirectedTaxGraph& graph,
                          const JurisdictionRegistry& registry);

struct ImportedDirected {
    TaxGraph graph;
    std::vector<std::string> codes;
};
struct ImportedUndirected {
    UndirectedTaxGraph graph;
    std::vector<std::string> codes;
};

ImportedDirected read_json_directed(std::istream& in);
ImportedUndirected read_json_undirected(std::istream& in);

} // namespace conduit
