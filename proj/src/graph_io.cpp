#include "conduit/graph_io.hpp"

#include <ostream>

#include <json.hpp>

#include "conduit/errors.hpp"

namespace conduit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void graphml_prologue(std::ostream& out, bool directed, bool sanction) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"code\" for=\"node\" attr.name=\"code\" attr.type=\"string\"/>\n"
        << "  <key id=\"rate\" for=\"edge\" attr.name=\"rate\" attr.type=\"string\"/>\n"
        << "  <key id=\"sanction_included\" for=\"graph\" attr.name=\"sanction_included\""
           " attr.type=\"boolean\"/>\n"
        << "  <graph edgedefault=\"" << (directed ? "directed" : "undirected") << "\">\n"
        << "    <data key=\"sanction_included\">" << (sanction ? "true" : "false")
        << "</data>\n";
}

void graphml_nodes(std::ostream& out, const JurisdictionRegistry& registry, int n) {
    for (int v = 0; v < n; ++v)
        out << "    <node id=\"n" << v << "\"><data key=\"code\">"
            << xml_escape(registry.code(v)) << "</data></node>\n";
}

ordered_json json_header(std::string_view kind, const TaxGraph& g) {
    ordered_json j;
    j["format"] = "conduit-graph";
    j["version"] = 1;
    j["kind"] = kind;
    j["income_type"] = std::string(to_string(g.income_type()));
    j["threshold"] = g.threshold() ? ordered_json(format_rate(*g.threshold())) : ordered_json();
    return j;
}

} // namespace

void write_graphml(std::ostream& out, const TaxGraph& graph,
                   const JurisdictionRegistry& registry) {
    const int n = graph.size();
    graphml_prologue(out, true, true);
    graphml_nodes(out, registry, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && graph.has_arc(i, j))
                out << "    <edge source=\"n" << i << "\" target=\"n" << j
                    << "\"><data key=\"rate\">" << format_rate(graph.rate(i, j))
                    << "</data></edge>\n";
    out << "  </graph>\n</graphml>\n";
}

void write_graphml(std::ostream& out, const UndirectedTaxGraph& graph,
                   const JurisdictionRegistry& registry) {
    const int n = graph.size();
    graphml_prologue(out, false, false);
    graphml_nodes(out, registry, n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (graph.has_edge(a, b))
                out << "    <edge source=\"n" << a << "\" target=\"n" << b
                    << "\"><data key=\"rate\">" << format_rate(graph.edge_rate(a, b))
                    << "</data></edge>\n";
    out << "  </graph>\n</graphml>\n";
}

void write_json_adjacency(std::ostream& out, const TaxGraph& graph,
                          const JurisdictionRegistry& registry) {
    const int n = graph.size();
    ordered_json j = json_header("directed", graph);
    j["sanction_included"] = true;
    j["n"] = n;
    auto& codes = j["codes"] = ordered_json::array();
    for (int v = 0; v < n; ++v)
        codes.push_back(registry.code(v));
    auto& arcs = j["arcs"] = ordered_json::array();
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (i != k && graph.has_arc(i, k))
                arcs.push_back({{"from", registry.code(i)},
                                {"to", registry.code(k)},
                                {"rate", format_rate(graph.rate(i, k))}});
    out << j.dump(2) << '\n';
}

void write_json_adjacency(std::ostream& out, const UndirectedTaxGraph& graph,
                          const JurisdictionRegistry& registry) {
    const int n = graph.size();
    ordered_json j;
    j["format"] = "conduit-graph";
    j["version"] = 1;
    j["kind"] = "undirected";
    j["income_type"] = std::string(to_string(graph.income_type()));
    j["threshold"] =
        graph.threshold() ? ordered_json(format_rate(*graph.threshold())) : ordered_json();
    j["sanction_included"] = false;
    j["n"] = n;
    auto& codes = j["codes"] = ordered_json::array();
    for (int v = 0; v < n; ++v)
        codes.push_back(registry.code(v));
    auto& edges = j["edges"] = ordered_json::array();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (graph.has_edge(a, b))
                edges.push_back({{"a", registry.code(a)},
                                 {"b", registry.code(b)},
                                 {"rate", format_rate(graph.edge_rate(a, b))}});
    out << j.dump(2) << '\n';
}

namespace {

struct ParsedHeader {
    int n;
    IncomeType income_type;
    std::optional<Micro> threshold;
    std::vector<std::string> codes;
    std::unordered_map<std::string, int> index;
};

ParsedHeader parse_header(const ordered_json& j, std::string_view kind) {
    if (!j.is_object() || j.value("format", "") != "conduit-graph")
        throw ParseError("not a conduit-graph JSON document");
    if (j.value("kind", "") != kind)
        throw ParseError("expected a " + std::string(kind) + " graph, got '" +
                         j.value("kind", "?") + "'");
    ParsedHeader h;
    h.income_type = income_type_from_string(j.at("income_type").get<std::string>());
    if (!j.at("threshold").is_null())
        h.threshold = parse_rate(j.at("threshold").get<std::string>());
    h.n = j.at("n").get<int>();
    for (const auto& c : j.at("codes"))
        h.codes.push_back(c.get<std::string>());
    if (static_cast<int>(h.codes.size()) != h.n)
        throw ParseError("codes length does not match n");
    for (int v = 0; v < h.n; ++v)
        if (!h.index.emplace(h.codes[static_cast<std::size_t>(v)], v).second)
            throw ParseError("duplicate code '" + h.codes[static_cast<std::size_t>(v)] + "'");
    return h;
}

int id_or_throw(const ParsedHeader& h, const std::string& code) {
    auto it = h.index.find(code);
    if (it == h.index.end())
        throw ParseError("unknown code '" + code + "' in graph body");
    return it->second;
}

} // namespace

ImportedDirected read_json_directed(std::istream& in) {
    try {
        ordered_json j = ordered_json::parse(in);
        ParsedHeader h = parse_header(j, "directed");
        if (j.value("sanction_included", false) != true)
            throw ParseError("directed graphs must carry sanctioned weights");
        std::vector<WeightedArc> arcs;
        for (const auto& a : j.at("arcs")) {
            int from = id_or_throw(h, a.at("from").get<std::string>());
            int to = id_or_throw(h, a.at("to").get<std::string>());
            Micro rate = parse_rate(a.at("rate").get<std::string>());
            arcs.push_back({from, to, rate + kSanction});
        }
        return {TaxGraph::from_arcs(h.n, h.income_type, arcs, h.threshold),
                std::move(h.codes)};
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("invalid graph JSON: ") + e.what());
    }
}

ImportedUndirected read_json_undirected(std::istream& in) {
    try {
        ordered_json j = ordered_json::parse(in);
        ParsedHeader h = parse_header(j, "undirected");
        UndirectedTaxGraph g(h.n, h.income_type, h.threshold);
        for (const auto& e : j.at("edges")) {
            int a = id_or_throw(h, e.at("a").get<std::string>());
            int b = id_or_throw(h, e.at("b").get<std::string>());
            g.set_edge(a, b, parse_rate(e.at("rate").get<std::string>()));
        }
        return {std::move(g), std::move(h.codes)};
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("invalid graph JSON: ") + e.what());
    }
}

} // namespace conduit
