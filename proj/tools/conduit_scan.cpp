// conduit-scan: withholding-tax network analysis CLI.
//
// Subcommands: validate | centrality | betweenness | communities | sweep |
// route | export | synth. All randomness flows from --seed; identical inputs
// and flags reproduce byte-identical output trees.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conduit/centrality.hpp"
#include "conduit/community.hpp"
#include "conduit/errors.hpp"
#include "conduit/graph_io.hpp"
#include "conduit/manifest.hpp"
#include "conduit/path_engine.hpp"
#include "conduit/rate_matrix.hpp"
#include "conduit/registry.hpp"
#include "conduit/synthetic.hpp"
#include "conduit/version.hpp"

namespace fs = std::filesystem;
using conduit::IncomeType;
using conduit::Micro;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1; // domain/validation errors
constexpr int kExitParse = 2;  // I/O or parse errors

struct Options {
    std::string registry_path;
    std::map<IncomeType, std::string> matrix_paths;
    std::string thresholds = "35,30,25,20,15,10,5,0";
    std::string threshold; // single-slice commands; empty = unfiltered
    std::string income = "all";
    std::string kind = "load";
    std::string mode = "unweighted";
    std::string format = "both";

    bool want_csv() const { return format != "json"; }
    bool want_json() const { return format != "csv"; }
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int top = 0; // 0 = all
    int threads = 0;
    std::size_t max_routes = conduit::kDefaultRouteCap;

    std::string from_code, to_code; // route
    bool show_epsilon = false;      // include exact sanctioned weights in route output
    int synth_n = 12;               // synth
    std::string profile = "uniform";
    int blocks = 3;
    std::string emit_curve; // sweep curve override
};

void add_input_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--registry", opt.registry_path, "Registry CSV (header `code,name`)")
        ->required();
    cmd->add_option("--matrix-dividends", opt.matrix_paths[IncomeType::Dividends],
                    "Dividends rate matrix CSV");
    cmd->add_option("--matrix-interest", opt.matrix_paths[IncomeType::Interest],
                    "Interest rate matrix CSV");
    cmd->add_option("--matrix-royalties", opt.matrix_paths[IncomeType::Royalties],
                    "Royalties rate matrix CSV");
}

void add_output_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", opt.format, "Ranking/report files to write")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
}

std::vector<Micro> parse_threshold_list(const std::string& text) {
    std::vector<Micro> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(conduit::parse_rate(item));
    if (out.empty())
        throw conduit::ParseError("empty threshold list");
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IncomeType> selected_incomes(const Options& opt) {
    std::vector<IncomeType> incomes;
    if (opt.income == "all") {
        for (auto type : {IncomeType::Dividends, IncomeType::Interest, IncomeType::Royalties})
            if (opt.matrix_paths.count(type) && !opt.matrix_paths.at(type).empty())
                incomes.push_back(type);
        if (incomes.empty())
            throw conduit::DomainError("no rate matrix supplied (use --matrix-<income>)");
        return incomes;
    }
    IncomeType type = conduit::income_type_from_string(opt.income);
    if (!opt.matrix_paths.count(type) || opt.matrix_paths.at(type).empty())
        throw conduit::DomainError("no matrix supplied for income type '" + opt.income + "'");
    return {type};
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

double round6(double v) {
    return std::stod(fmt6(v));
}

std::string threshold_tag(const std::optional<Micro>& t) {
    return t ? "t" + conduit::format_rate(*t) : "full";
}

// Accumulates the run manifest: config echo, input hashes, files written.
class ManifestWriter {
public:
    ManifestWriter(std::string command, const Options& opt) : out_dir_(opt.out_dir) {
        doc_["tool"] = conduit::kToolName;
        doc_["version"] = conduit::kToolVersion;
        doc_["command"] = std::move(command);
        doc_["config"] = ordered_json::object();
        doc_["inputs"] = ordered_json::object();
        doc_["outputs"] = ordered_json::array();
    }

    ordered_json& config() { return doc_["config"]; }

    void add_input(const std::string& path) {
        doc_["inputs"][path] = conduit::file_hash_hex(path);
    }

    std::ofstream open_output(const std::string& name) {
        fs::create_directories(out_dir_);
        fs::path path = fs::path(out_dir_) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw conduit::ParseError("cannot write '" + path.string() + "'");
        doc_["outputs"].push_back(name);
        return out;
    }

    void finish() {
        fs::create_directories(out_dir_);
        std::ofstream out(fs::path(out_dir_) / "manifest.json", std::ios::binary);
        out << doc_.dump(2) << '\n';
    }

private:
    std::string out_dir_;
    ordered_json doc_;
};

struct LoadedIncome {
    IncomeType type;
    conduit::RateMatrix matrix;
};

std::vector<LoadedIncome> load_matrices(const Options& opt,
                                        const conduit::JurisdictionRegistry& registry,
                                        ManifestWriter* manifest) {
    std::vector<LoadedIncome> out;
    for (IncomeType type : selected_incomes(opt)) {
        const std::string& path = opt.matrix_paths.at(type);
        out.push_back({type, conduit::parse_rate_matrix(path, registry, type)});
        if (manifest)
            manifest->add_input(path);
    }
    return out;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& opt) {
    conduit::JurisdictionRegistry registry = conduit::load_registry(opt.registry_path);
    bool any_errors = false;
    for (auto type : {IncomeType::Dividends, IncomeType::Interest, IncomeType::Royalties}) {
        auto it = opt.matrix_paths.find(type);
        if (it == opt.matrix_paths.end() || it->second.empty())
            continue;
        conduit::ValidationReport report = conduit::validate_rate_file(it->second, registry);
        for (const auto& e : report.errors)
            std::cerr << it->second << ":" << e.line << ":" << e.column << ": error: "
                      << e.message << '\n';
        for (const auto& w : report.warnings)
            std::cerr << it->second << ": warning: [" << w.location << "] " << w.message
                      << '\n';
        std::cerr << it->second << ": " << report.errors.size() << " error(s), "
                  << report.warnings.size() << " warning(s)\n";
        any_errors = any_errors || !report.accepted();
    }
    return any_errors ? kExitDomain : kExitOk;
}

// --------------------------------------------------------------- rankings

void write_ranking_csv(std::ostream& out, const std::vector<conduit::RankingRow>& rows) {
    out << "rank,code,raw,normalized\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << i + 1 << ',' << rows[i].code << ',' << fmt6(rows[i].raw) << ','
            << fmt6(rows[i].normalized) << '\n';
}

ordered_json ranking_json(const conduit::CentralityScores& scores,
                          const std::vector<conduit::RankingRow>& rows) {
    ordered_json j;
    j["kind"] = std::string(to_string(scores.kind));
    j["income_type"] = std::string(to_string(scores.meta.income_type));
    j["threshold"] = scores.meta.threshold
                         ? ordered_json(conduit::format_rate(*scores.meta.threshold))
                         : ordered_json();
    j["n"] = scores.meta.n;
    auto& arr = j["ranking"] = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
        arr.push_back({{"rank", i + 1},
                       {"code", rows[i].code},
                       {"raw", round6(rows[i].raw)},
                       {"normalized", round6(rows[i].normalized)}});
    return j;
}

int cmd_centrality(const Options& opt, conduit::CentralityKind kind) {
    conduit::JurisdictionRegistry registry = conduit::load_registry(opt.registry_path);
    ManifestWriter manifest(kind == conduit::CentralityKind::Load ? "centrality"
                                                                  : "betweenness",
                            opt);
    manifest.add_input(opt.registry_path);
    manifest.config()["kind"] = std::string(to_string(kind));
    manifest.config()["threshold"] = opt.threshold.empty() ? ordered_json() : ordered_json(opt.threshold);
    manifest.config()["top"] = opt.top;
    manifest.config()["format"] = opt.format;

    std::optional<Micro> threshold;
    if (!opt.threshold.empty())
        threshold = conduit::parse_rate(opt.threshold);

    for (const auto& [type, matrix] : load_matrices(opt, registry, &manifest)) {
        conduit::TaxGraph graph = conduit::build_directed(matrix);
        if (threshold)
            graph = conduit::apply_threshold(graph, *threshold);
        conduit::CentralityScores scores =
            kind == conduit::CentralityKind::Load
                ? conduit::load_centrality(graph, opt.threads)
                : conduit::betweenness_centrality(graph, opt.threads);
        std::optional<int> top;
        if (opt.top > 0)
            top = opt.top;
        auto rows = conduit::rank(scores, registry, top);

        std::string base = std::string(to_string(type)) + "_" +
                           std::string(to_string(kind)) + "_" + threshold_tag(threshold);
        if (opt.want_csv()) {
            auto out = manifest.open_output(base + ".csv");
            write_ranking_csv(out, rows);
        }
        if (opt.want_json()) {
            auto out = manifest.open_output(base + ".json");
            out << ranking_json(scores, rows).dump(2) << '\n';
        }
        std::cout << to_string(type) << ": wrote " << base << '\n';
    }
    manifest.finish();
    return kExitOk;
}

// ------------------------------------------------------------- communities

void write_report_csv(std::ostream& out, const conduit::CommunityReport& report) {
    out << "community,code,raw,normalized\n";
    for (const auto& group : report.groups) {
        std::string label =
            group.community ? std::to_string(*group.community + 1) : std::string("no link");
        for (const auto& m : group.members)
            out << label << ',' << m.code << ',' << fmt6(m.raw) << ',' << fmt6(m.normalized)
                << '\n';
    }
}

ordered_json report_json(const conduit::CommunityReport& report, const conduit::Partition& p) {
    ordered_json j;
    j["modularity"] = round6(p.modularity);
    j["community_count"] = p.community_count;
    auto& groups = j["groups"] = ordered_json::array();
    for (const auto& group : report.groups) {
        ordered_json g;
        g["community"] =
            group.community ? ordered_json(*group.community + 1) : ordered_json("no link");
        auto& members = g["members"] = ordered_json::array();
        for (const auto& m : group.members)
            members.push_back({{"code", m.code}, {"centrality", round6(m.normalized)}});
        groups.push_back(std::move(g));
    }
    return j;
}

int cmd_communities(const Options& opt) {
    conduit::JurisdictionRegistry registry = conduit::load_registry(opt.registry_path);
    ManifestWriter manifest("communities", opt);
    manifest.add_input(opt.registry_path);
    manifest.config()["threshold"] = opt.threshold;
    manifest.config()["mode"] = opt.mode;
    manifest.config()["seed"] = opt.seed;

    if (opt.threshold.empty())
        throw conduit::DomainError("communities requires --threshold");
    Micro threshold = conduit::parse_rate(opt.threshold);
    conduit::AffinityMode mode = conduit::affinity_mode_from_string(opt.mode);
    conduit::LouvainConfig config;
    config.seed = opt.seed;

    for (const auto& [type, matrix] : load_matrices(opt, registry, &manifest)) {
        conduit::TaxGraph directed = conduit::build_directed(matrix);
        conduit::UndirectedTaxGraph sliced =
            conduit::apply_threshold_undirected(conduit::to_undirected(directed), threshold);
        std::vector<int> isolates = conduit::isolated_vertices(sliced);
        if (sliced.edge_count() == 0)
            throw conduit::DomainError("empty graph, modularity undefined (threshold " +
                                       conduit::format_rate(threshold) + ")");
        conduit::AffinityGraph aff = conduit::to_affinity(sliced, mode);
        conduit::LouvainResult res = conduit::louvain(aff, config);

        // Member ordering uses load centrality of the directed graph at the
        // same threshold.
        conduit::CentralityScores scores =
            conduit::load_centrality(conduit::apply_threshold(directed, threshold), opt.threads);
        conduit::CommunityReport report =
            conduit::community_report(res.partition, scores, registry, isolates);

        std::string base = std::string(to_string(type)) + "_communities_" +
                           threshold_tag(threshold) + "_" + std::string(to_string(mode));
        if (opt.want_csv()) {
            auto out = manifest.open_output(base + ".csv");
            write_report_csv(out, report);
        }
        if (opt.want_json()) {
            auto out = manifest.open_output(base + ".json");
            out << report_json(report, res.partition).dump(2) << '\n';
        }
        std::cout << to_string(type) << ": Q=" << fmt6(res.partition.modularity) << ", "
                  << report.groups.size() - (isolates.empty() ? 0 : 1)
                  << " linked communities, " << isolates.size() << " isolates"
                  << (res.converged ? "" : " (not converged)") << '\n';
    }
    manifest.finish();
    return kExitOk;
}

// ------------------------------------------------------------------ sweep

int cmd_sweep(const Options& opt) {
    conduit::JurisdictionRegistry registry = conduit::load_registry(opt.registry_path);
    ManifestWriter manifest("sweep", opt);
    manifest.add_input(opt.registry_path);
    manifest.config()["thresholds"] = opt.thresholds;
    manifest.config()["kind"] = opt.kind;
    manifest.config()["mode"] = opt.mode;
    manifest.config()["seed"] = opt.seed;

    std::vector<Micro> thresholds = parse_threshold_list(opt.thresholds);
    conduit::CentralityKind kind = conduit::centrality_kind_from_string(opt.kind);
    conduit::AffinityMode mode = conduit::affinity_mode_from_string(opt.mode);
    conduit::LouvainConfig config;
    config.seed = opt.seed;

    for (const auto& [type, matrix] : load_matrices(opt, registry, &manifest)) {
        auto sweep = conduit::sweep_centrality(matrix, thresholds, kind, opt.threads);
        {
            auto out = manifest.open_output(std::string(to_string(type)) + "_" + opt.kind +
                                            "_sweep.csv");
            out << "threshold,code,raw,normalized\n";
            for (const auto& [t, scores] : sweep)
                for (int v = 0; v < scores.meta.n; ++v)
                    out << conduit::format_rate(t) << ',' << registry.code(v) << ','
                        << fmt6(scores.raw[static_cast<std::size_t>(v)]) << ','
                        << fmt6(scores.normalized[static_cast<std::size_t>(v)]) << '\n';
        }

        conduit::ModularityCurve curve =
            conduit::sweep_modularity(matrix, thresholds, mode, config);
        {
            std::string name = opt.emit_curve.empty()
                                   ? std::string(to_string(type)) + "_modularity_curve_" +
                                         std::string(to_string(mode)) + ".csv"
                                   : opt.emit_curve;
            auto out = manifest.open_output(name);
            out << "threshold,modularity,communities,isolates\n";
            for (const auto& p : curve.points) {
                out << conduit::format_rate(p.threshold) << ',';
                if (p.modularity)
                    out << fmt6(*p.modularity);
                out << ',' << p.community_count << ',' << p.isolate_count << '\n';
            }
        }
        if (auto best = curve.best_threshold()) {
            double q = 0.0;
            for (const auto& p : curve.points)
                if (p.threshold == *best && p.modularity)
                    q = *p.modularity;
            std::cout << to_string(type) << ": peak modularity " << fmt6(q)
                      << " at threshold " << conduit::format_rate(*best) << '\n';
        } else {
            std::cout << to_string(type) << ": no threshold produced a defined modularity\n";
        }
    }
    manifest.finish();
    return kExitOk;
}

// ------------------------------------------------------------------ route

int cmd_route(const Options& opt) {
    conduit::JurisdictionRegistry registry = conduit::load_registry(opt.registry_path);

    auto resolve = [&](const std::string& code) {
        auto id = registry.id_of(code);
        if (!id)
            throw conduit::DomainError("unknown code '" + code + "' (did you mean '" +
                                       conduit::nearest_code(registry, code) + "'?)");
        return *id;
    };
    int from = resolve(opt.from_code);
    int to = resolve(opt.to_code);
    if (from == to)
        throw conduit::DomainError("degenerate query: --from and --to are both '" +
                                   opt.from_code + "'");

    auto loaded = load_matrices(opt, registry, nullptr);
    if (loaded.size() != 1)
        throw conduit::DomainError("route needs exactly one income type (use --income)");
    conduit::TaxGraph graph = conduit::build_directed(loaded.front().matrix);
    if (!opt.threshold.empty())
        graph = conduit::apply_threshold(graph, conduit::parse_rate(opt.threshold));

    std::vector<conduit::Route> routes =
        conduit::best_routes(graph, from, to, opt.max_routes);

    ordered_json j;
    j["from"] = opt.from_code;
    j["to"] = opt.to_code;
    j["income_type"] = std::string(to_string(loaded.front().type));
    j["threshold"] = opt.threshold.empty() ? ordered_json() : ordered_json(opt.threshold);
    auto& arr = j["routes"] = ordered_json::array();
    for (const auto& r : routes) {
        ordered_json item;
        auto& path = item["path"] = ordered_json::array();
        for (int v : r.path)
            path.push_back(registry.code(v));
        item["total_rate"] = conduit::format_rate(r.total_rate);
        item["hops"] = r.hops;
        item["direct_rate"] =
            r.direct_rate ? ordered_json(conduit::format_rate(*r.direct_rate)) : ordered_json();
        item["saving"] = r.saving ? ordered_json(conduit::format_rate(*r.saving)) : ordered_json();
        if (opt.show_epsilon) // rate plus one 1e-6 sanction unit per hop
            item["weight"] = conduit::format_rate(r.total_rate + r.hops * conduit::kSanction);
        arr.push_back(std::move(item));
    }
    std::cout << j.dump(2) << '\n';

    if (routes.empty()) {
        std::cerr << "no route from " << opt.from_code << " to " << opt.to_code << '\n';
    } else {
        const auto& r = routes.front();
        std::cerr << opt.from_code;
        for (std::size_t i = 1; i < r.path.size(); ++i)
            std::cerr << " -> " << registry.code(r.path[i]);
        std::cerr << ": total rate " << conduit::format_rate(r.total_rate) << "%, " << r.hops
                  << (r.hops == 1 ? " hop" : " hops");
        if (r.saving)
            std::cerr << ", saves " << conduit::format_rate(*r.saving) << "% vs direct "
                      << conduit::format_rate(*r.direct_rate) << "%";
        if (routes.size() > 1)
            std::cerr << " (" << routes.size() << " tied routes)";
        std::cerr << '\n';
    }
    return kExitOk;
}

// ----------------------------------------------------------------- export

int cmd_export(const Options& opt) {
    conduit::JurisdictionRegistry registry = conduit::load_registry(opt.registry_path);
    ManifestWriter manifest("export", opt);
    manifest.add_input(opt.registry_path);
    manifest.config()["threshold"] = opt.threshold;

    std::optional<Micro> threshold;
    if (!opt.threshold.empty())
        threshold = conduit::parse_rate(opt.threshold);

    for (const auto& [type, matrix] : load_matrices(opt, registry, &manifest)) {
        conduit::TaxGraph directed = conduit::build_directed(matrix);
        conduit::UndirectedTaxGraph undirected = conduit::to_undirected(directed);
        if (threshold) {
            directed = conduit::apply_threshold(directed, *threshold);
            undirected = conduit::apply_threshold_undirected(undirected, *threshold);
        }
        std::string base = std::string(to_string(type)) + "_" + threshold_tag(threshold);
        {
            auto out = manifest.open_output(base + "_directed.graphml");
            conduit::write_graphml(out, directed, registry);
        }
        {
            auto out = manifest.open_output(base + "_directed.json");
            conduit::write_json_adjacency(out, directed, registry);
        }
        {
            auto out = manifest.open_output(base + "_undirected.graphml");
            conduit::write_graphml(out, undirected, registry);
        }
        {
            auto out = manifest.open_output(base + "_undirected.json");
            conduit::write_json_adjacency(out, undirected, registry);
        }
        std::cout << to_string(type) << ": exported " << base << "_{directed,undirected}"
                  << ".{graphml,json}\n";
    }
    manifest.finish();
    return kExitOk;
}

// ------------------------------------------------------------------ synth

int cmd_synth(const Options& opt) {
    ManifestWriter manifest("synth", opt);
    manifest.config()["n"] = opt.synth_n;
    manifest.config()["seed"] = opt.seed;
    manifest.config()["profile"] = opt.profile;
    manifest.config()["blocks"] = opt.blocks;

    conduit::SyntheticProfile profile = conduit::synthetic_profile_from_string(opt.profile);
    IncomeType type = opt.income == "all" ? IncomeType::Dividends
                                          : conduit::income_type_from_string(opt.income);
    conduit::RateMatrix matrix =
        conduit::generate_synthetic(opt.synth_n, opt.seed, profile, type, opt.blocks);
    conduit::JurisdictionRegistry registry = conduit::synthetic_registry(opt.synth_n);
    {
        auto out = manifest.open_output("synthetic_registry.csv");
        conduit::write_registry(out, registry);
    }
    {
        auto out = manifest.open_output("synthetic_matrix.csv");
        conduit::write_rate_matrix(out, matrix, registry);
    }
    manifest.finish();
    std::cout << "wrote synthetic_registry.csv and synthetic_matrix.csv (n=" << opt.synth_n
              << ", profile=" << opt.profile << ", seed=" << opt.seed << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Withholding-tax network analysis: conduit jurisdictions via load "
                 "centrality on minimum-weight paths, community structure via weighted "
                 "modularity and Louvain."};
    app.set_version_flag("--app-version", conduit::kToolVersion);
    app.require_subcommand(1);

    Options opt;

    auto* validate = app.add_subcommand("validate", "Validate registry + rate matrices");
    add_input_options(validate, opt);

    auto* centrality = app.add_subcommand("centrality", "Rank jurisdictions by centrality");
    add_input_options(centrality, opt);
    add_output_options(centrality, opt);
    centrality->add_option("--income", opt.income, "dividends|interest|royalties|all")
        ->capture_default_str();
    centrality->add_option("--threshold", opt.threshold, "Rate ceiling (percent); empty = unfiltered");
    centrality->add_option("--kind", opt.kind, "load|betweenness")->capture_default_str();
    centrality->add_option("--top", opt.top, "Keep only the top K rows (0 = all)");
    centrality->add_option("--threads", opt.threads, "Thread cap (0 = all)");

    auto* betweenness = app.add_subcommand("betweenness", "Rank by Freeman betweenness");
    add_input_options(betweenness, opt);
    add_output_options(betweenness, opt);
    betweenness->add_option("--income", opt.income)->capture_default_str();
    betweenness->add_option("--threshold", opt.threshold);
    betweenness->add_option("--top", opt.top);
    betweenness->add_option("--threads", opt.threads);

    auto* communities = app.add_subcommand("communities", "Louvain communities at one threshold");
    add_input_options(communities, opt);
    add_output_options(communities, opt);
    communities->add_option("--income", opt.income)->capture_default_str();
    communities->add_option("--threshold", opt.threshold, "Rate ceiling (percent)")->required();
    communities->add_option("--mode", opt.mode, "unweighted|rate")->capture_default_str();
    communities->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
    communities->add_option("--threads", opt.threads);

    auto* sweep = app.add_subcommand("sweep", "Centrality + modularity threshold sweeps");
    add_input_options(sweep, opt);
    add_output_options(sweep, opt);
    sweep->add_option("--income", opt.income)->capture_default_str();
    sweep->add_option("--thresholds", opt.thresholds, "Descending percent list")
        ->capture_default_str();
    sweep->add_option("--kind", opt.kind, "load|betweenness")->capture_default_str();
    sweep->add_option("--mode", opt.mode, "unweighted|rate")->capture_default_str();
    sweep->add_option("--seed", opt.seed)->capture_default_str();
    sweep->add_option("--emit-curve", opt.emit_curve, "Modularity curve CSV filename");
    sweep->add_option("--threads", opt.threads);

    auto* route = app.add_subcommand("route", "Minimum-tax routes between two jurisdictions");
    add_input_options(route, opt);
    route->add_option("--from", opt.from_code, "Source code")->required();
    route->add_option("--to", opt.to_code, "Destination code")->required();
    route->add_option("--income", opt.income)->capture_default_str();
    route->add_option("--threshold", opt.threshold);
    route->add_option("--max-routes", opt.max_routes, "Tie-set cap")->capture_default_str();
    route->add_flag("--show-epsilon", opt.show_epsilon,
                    "Also emit the exact weight including per-hop sanction units");

    auto* export_cmd = app.add_subcommand("export", "GraphML + JSON adjacency export");
    add_input_options(export_cmd, opt);
    add_output_options(export_cmd, opt);
    export_cmd->add_option("--income", opt.income)->capture_default_str();
    export_cmd->add_option("--threshold", opt.threshold);

    auto* synth = app.add_subcommand("synth", "Deterministic synthetic fixtures");
    add_output_options(synth, opt);
    synth->add_option("--n", opt.synth_n, "Vertex count")->capture_default_str();
    synth->add_option("--seed", opt.seed)->capture_default_str();
    synth->add_option("--profile", opt.profile, "uniform|planted|zero_heavy")
        ->capture_default_str();
    synth->add_option("--blocks", opt.blocks, "Planted block count")->capture_default_str();
    synth->add_option("--income", opt.income)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(validate))
            return cmd_validate(opt);
        if (app.got_subcommand(centrality))
            return cmd_centrality(opt, conduit::centrality_kind_from_string(opt.kind));
        if (app.got_subcommand(betweenness))
            return cmd_centrality(opt, conduit::CentralityKind::Betweenness);
        if (app.got_subcommand(communities))
            return cmd_communities(opt);
        if (app.got_subcommand(sweep))
            return cmd_sweep(opt);
        if (app.got_subcommand(route))
            return cmd_route(opt);
        if (app.got_subcommand(export_cmd))
            return cmd_export(opt);
        if (app.got_subcommand(synth))
            return cmd_synth(opt);
    } catch (const conduit::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const conduit::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}
