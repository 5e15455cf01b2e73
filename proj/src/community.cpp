#include "conduit/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "conduit/errors.hpp"

namespace conduit {

std::string_view to_string(AffinityMode mode) {
    return mode == AffinityMode::Unweighted ? "unweighted" : "rate";
}

AffinityMode affinity_mode_from_string(std::string_view text) {
    if (text == "unweighted") return AffinityMode::Unweighted;
    if (text == "rate" || text == "rate_as_weight") return AffinityMode::RateAsWeight;
    throw ParseError("unknown affinity mode '" + std::string(text) +
                     "' (expected unweighted or rate)");
}

void AffinityGraph::add_edge(int a, int b, std::int64_t weight) {
    if (a == b)
        throw DomainError("affinity self-edge; use add_self");
    if (weight < 0)
        throw DomainError("negative affinity weight");
    adjacency_[static_cast<std::size_t>(a)].push_back({b, weight});
    adjacency_[static_cast<std::size_t>(b)].push_back({a, weight});
    strength_[static_cast<std::size_t>(a)] += weight;
    strength_[static_cast<std::size_t>(b)] += weight;
    total2m_ += 2 * weight;
}

void AffinityGraph::add_self(int v, std::int64_t weight) {
    if (weight < 0)
        throw DomainError("negative affinity weight");
    self_[static_cast<std::size_t>(v)] += weight;
    strength_[static_cast<std::size_t>(v)] += weight;
    total2m_ += weight;
}

std::int64_t AffinityGraph::edge_count() const {
    std::int64_t twice = 0;
    for (const auto& nbs : adjacency_)
        twice += static_cast<std::int64_t>(nbs.size());
    return twice / 2;
}

AffinityGraph to_affinity(const UndirectedTaxGraph& graph, AffinityMode mode) {
    const int n = graph.size();
    AffinityGraph out(n);
    std::int64_t edges = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!graph.has_edge(a, b))
                continue;
            ++edges;
            out.add_edge(a, b, mode == AffinityMode::Unweighted ? 1 : graph.edge_rate(a, b));
        }
    if (edges == 0)
        throw DomainError("empty graph, modularity undefined");
    return out;
}

namespace {

int community_upper_bound(const std::vector<int>& assignment) {
    int top = 0;
    for (int c : assignment) {
        if (c < 0)
            throw DomainError("negative community id");
        top = std::max(top, c + 1);
    }
    return top;
}

} // namespace

double modularity(const AffinityGraph& graph, const std::vector<int>& assignment) {
    const int n = graph.size();
    if (assignment.size() != static_cast<std::size_t>(n))
        throw DomainError("assignment length " + std::to_string(assignment.size()) +
                          " does not match vertex count " + std::to_string(n));
    if (graph.total2m() <= 0)
        throw DomainError("modularity undefined: total weight is zero");

    const int top = community_upper_bound(assignment);
    // Integer per-community sums; rounding happens once, in the return line.
    std::vector<std::int64_t> internal(static_cast<std::size_t>(top), 0);
    std::vector<std::int64_t> strength(static_cast<std::size_t>(top), 0);
    for (int v = 0; v < n; ++v) {
        int c = assignment[static_cast<std::size_t>(v)];
        strength[static_cast<std::size_t>(c)] += graph.strength(v);
        internal[static_cast<std::size_t>(c)] += graph.self_affinity(v);
        for (const auto& nb : graph.neighbors(v))
            if (assignment[static_cast<std::size_t>(nb.to)] == c)
                internal[static_cast<std::size_t>(c)] += nb.weight; // both directions once
    }

    const double two_m = static_cast<double>(graph.total2m());
    double q = 0.0;
    for (int c = 0; c < top; ++c) {
        double tot = static_cast<double>(strength[static_cast<std::size_t>(c)]);
        q += static_cast<double>(internal[static_cast<std::size_t>(c)]) / two_m -
             (tot / two_m) * (tot / two_m);
    }
    return q;
}

LouvainState LouvainState::from_assignment(const AffinityGraph& graph,
                                           std::vector<int> assignment) {
    if (assignment.size() != static_cast<std::size_t>(graph.size()))
        throw DomainError("assignment length does not match vertex count");
    LouvainState state;
    state.community_strength.assign(static_cast<std::size_t>(community_upper_bound(assignment)), 0);
    for (int v = 0; v < graph.size(); ++v)
        state.community_strength[static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)])] +=
            graph.strength(v);
    state.assignment = std::move(assignment);
    return state;
}

double delta_q(const AffinityGraph& graph, const LouvainState& state, int v, int from, int to) {
    if (state.assignment[static_cast<std::size_t>(v)] != from)
        throw DomainError("delta_q: vertex is not in the stated source community");
    if (from == to)
        return 0.0;

    std::int64_t to_from = 0, to_target = 0; // links v -> community, v excluded
    for (const auto& nb : graph.neighbors(v)) {
        int c = state.assignment[static_cast<std::size_t>(nb.to)];
        if (c == from)
            to_from += nb.weight;
        else if (c == to)
            to_target += nb.weight;
    }

    const std::int64_t k = graph.strength(v);
    const std::int64_t tot_from = state.community_strength[static_cast<std::size_t>(from)];
    const std::int64_t tot_to = to < static_cast<int>(state.community_strength.size())
                                    ? state.community_strength[static_cast<std::size_t>(to)]
                                    : 0;

    const double two_m = static_cast<double>(graph.total2m());
    return 2.0 * static_cast<double>(to_target - to_from) / two_m -
           2.0 * static_cast<double>(k) *
               (static_cast<double>(tot_to) - static_cast<double>(tot_from - k)) /
               (two_m * two_m);
}

namespace {

// One local-moving phase over the level graph. Returns true if any vertex
// moved. Sweep order is reshuffled from `rng` each sweep.
bool local_moving(const AffinityGraph& graph, LouvainState& state, std::mt19937_64& rng) {
    const int n = graph.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    // Community-indexed scratch: weight of v's links into each touched
    // community, -1 = untouched.
    std::vector<std::int64_t> link(state.community_strength.size(), -1);
    std::vector<int> touched;

    const double two_m = static_cast<double>(graph.total2m());
    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        std::shuffle(order.begin(), order.end(), rng);
        for (int v : order) {
            const int from = state.assignment[static_cast<std::size_t>(v)];
            touched.clear();
            auto touch = [&](int c) {
                if (link[static_cast<std::size_t>(c)] < 0) {
                    link[static_cast<std::size_t>(c)] = 0;
                    touched.push_back(c);
                }
            };
            touch(from);
            for (const auto& nb : graph.neighbors(v)) {
                int c = state.assignment[static_cast<std::size_t>(nb.to)];
                touch(c);
                link[static_cast<std::size_t>(c)] += nb.weight;
            }

            const std::int64_t k = graph.strength(v);
            const std::int64_t base_from =
                state.community_strength[static_cast<std::size_t>(from)] - k;
            const std::int64_t link_from = link[static_cast<std::size_t>(from)];

            int best = from;
            double best_gain = 0.0;
            for (int c : touched) {
                if (c == from)
                    continue;
                double gain =
                    2.0 * static_cast<double>(link[static_cast<std::size_t>(c)] - link_from) /
                        two_m -
                    2.0 * static_cast<double>(k) *
                        (static_cast<double>(
                             state.community_strength[static_cast<std::size_t>(c)]) -
                         static_cast<double>(base_from)) /
                        (two_m * two_m);
                if (gain > best_gain || (gain == best_gain && best != from && c < best)) {
                    best_gain = gain;
                    best = c;
                }
            }

            for (int c : touched)
                link[static_cast<std::size_t>(c)] = -1;

            if (best != from) {
                state.assignment[static_cast<std::size_t>(v)] = best;
                state.community_strength[static_cast<std::size_t>(from)] -= k;
                state.community_strength[static_cast<std::size_t>(best)] += k;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Renumbers communities to dense ids in first-appearance order; returns the
// community count.
int densify(std::vector<int>& assignment) {
    std::vector<int> remap(assignment.size(), -1);
    int next = 0;
    for (int& c : assignment) {
        if (remap[static_cast<std::size_t>(c)] < 0)
            remap[static_cast<std::size_t>(c)] = next++;
        c = remap[static_cast<std::size_t>(c)];
    }
    return next;
}

// Phase 2: communities become super-vertices. Intra-community mass (twice
// each internal edge plus member self-affinities) becomes self-affinity, so
// strengths and 2M are preserved exactly.
AffinityGraph aggregate(const AffinityGraph& graph, const std::vector<int>& assignment,
                        int community_count) {
    AffinityGraph out(community_count);
    std::vector<std::int64_t> self(static_cast<std::size_t>(community_count), 0);
    std::vector<std::int64_t> cross(
        static_cast<std::size_t>(community_count) * community_count, 0);
    for (int v = 0; v < graph.size(); ++v) {
        int cv = assignment[static_cast<std::size_t>(v)];
        self[static_cast<std::size_t>(cv)] += graph.self_affinity(v);
        for (const auto& nb : graph.neighbors(v)) {
            int cw = assignment[static_cast<std::size_t>(nb.to)];
            if (cv == cw)
                self[static_cast<std::size_t>(cv)] += nb.weight;
            else
                cross[static_cast<std::size_t>(cv) * community_count + cw] += nb.weight;
        }
    }
    for (int c = 0; c < community_count; ++c)
        out.add_self(c, self[static_cast<std::size_t>(c)]);
    for (int c = 0; c < community_count; ++c)
        for (int d = c + 1; d < community_count; ++d) {
            std::int64_t w = cross[static_cast<std::size_t>(c) * community_count + d];
            if (w > 0)
                out.add_edge(c, d, w);
        }
    return out;
}

} // namespace

LouvainResult louvain(const AffinityGraph& graph, const LouvainConfig& config) {
    if (graph.total2m() <= 0)
        throw DomainError("modularity undefined: total weight is zero");

    const int n = graph.size();
    std::mt19937_64 rng(config.seed);

    // flat[v] = community of original vertex v in the current level graph
    std::vector<int> flat(static_cast<std::size_t>(n));
    std::iota(flat.begin(), flat.end(), 0);

    AffinityGraph level = graph;
    LouvainResult result;
    result.converged = false;

    double prev_q = modularity(graph, flat);
    for (int pass = 0; pass < config.max_passes; ++pass) {
        std::vector<int> assignment(static_cast<std::size_t>(level.size()));
        std::iota(assignment.begin(), assignment.end(), 0);
        LouvainState state = LouvainState::from_assignment(level, std::move(assignment));

        bool any_move = local_moving(level, state, rng);
        result.passes = pass + 1;
        if (!any_move) {
            result.converged = true;
            break;
        }

        int count = densify(state.assignment);
        for (int& c : flat)
            c = state.assignment[static_cast<std::size_t>(c)];
        level = aggregate(level, state.assignment, count);

        double q = modularity(graph, flat);
        if (q - prev_q < config.min_gain) {
            result.converged = true;
            break;
        }
        prev_q = q;
    }

    // Stable final numbering: by descending community size, ties by the
    // smallest original member id.
    int count = densify(flat);
    std::vector<std::int64_t> size(static_cast<std::size_t>(count), 0);
    std::vector<int> first(static_cast<std::size_t>(count), n);
    for (int v = 0; v < n; ++v) {
        int c = flat[static_cast<std::size_t>(v)];
        ++size[static_cast<std::size_t>(c)];
        first[static_cast<std::size_t>(c)] = std::min(first[static_cast<std::size_t>(c)], v);
    }
    std::vector<int> by_rank(static_cast<std::size_t>(count));
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
        if (size[static_cast<std::size_t>(a)] != size[static_cast<std::size_t>(b)])
            return size[static_cast<std::size_t>(a)] > size[static_cast<std::size_t>(b)];
        return first[static_cast<std::size_t>(a)] < first[static_cast<std::size_t>(b)];
    });
    std::vector<int> rank_of(static_cast<std::size_t>(count));
    for (int r = 0; r < count; ++r)
        rank_of[static_cast<std::size_t>(by_rank[static_cast<std::size_t>(r)])] = r;
    for (int& c : flat)
        c = rank_of[static_cast<std::size_t>(c)];

    result.partition.assignment = std::move(flat);
    result.partition.community_count = count;
    result.partition.modularity = modularity(graph, result.partition.assignment);
    return result;
}

std::optional<Micro> ModularityCurve::best_threshold() const {
    // Exact ties go to the smaller threshold: the extra edges admitted by the
    // looser ceiling contributed nothing.
    std::optional<Micro> best;
    double best_q = 0.0;
    for (const auto& p : points)
        if (p.modularity && (!best || *p.modularity >= best_q)) {
            best = p.threshold;
            best_q = *p.modularity;
        }
    return best;
}

ModularityCurve sweep_modularity(const RateMatrix& matrix, std::vector<Micro> thresholds,
                                 AffinityMode mode, const LouvainConfig& config) {
    if (thresholds.empty())
        throw DomainError("threshold sweep needs at least one threshold");
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    UndirectedTaxGraph projected = to_undirected(build_directed(matrix));
    ModularityCurve curve;
    for (Micro t : thresholds) {
        UndirectedTaxGraph g = apply_threshold_undirected(projected, t);
        std::vector<int> isolates = isolated_vertices(g);
        CurvePoint point{t, std::nullopt, 0, static_cast<int>(isolates.size())};
        if (g.edge_count() > 0) {
            AffinityGraph aff = to_affinity(g, mode);
            if (aff.total2m() > 0) {
                LouvainResult res = louvain(aff, config);
                point.modularity = res.partition.modularity;
                std::vector<char> isolate(static_cast<std::size_t>(g.size()), 0);
                for (int v : isolates)
                    isolate[static_cast<std::size_t>(v)] = 1;
                std::vector<char> seen(
                    static_cast<std::size_t>(res.partition.community_count), 0);
                for (int v = 0; v < g.size(); ++v)
                    if (!isolate[static_cast<std::size_t>(v)])
                        seen[static_cast<std::size_t>(
                            res.partition.assignment[static_cast<std::size_t>(v)])] = 1;
                point.community_count =
                    static_cast<int>(std::count(seen.begin(), seen.end(), 1));
            }
        }
        curve.points.push_back(std::move(point));
    }
    return curve;
}

CommunityReport community_report(const Partition& partition, const CentralityScores& scores,
                                 const JurisdictionRegistry& registry,
                                 const std::vector<int>& isolates) {
    const int n = static_cast<int>(partition.assignment.size());
    if (scores.meta.n != n || registry.size() != n)
        throw DomainError("community report inputs disagree on vertex count");

    std::vector<char> isolate(static_cast<std::size_t>(n), 0);
    for (int v : isolates)
        isolate[static_cast<std::size_t>(v)] = 1;

    std::vector<std::vector<int>> members(static_cast<std::size_t>(partition.community_count));
    for (int v = 0; v < n; ++v)
        if (!isolate[static_cast<std::size_t>(v)])
            members[static_cast<std::size_t>(partition.assignment[static_cast<std::size_t>(v)])]
                .push_back(v);

    std::vector<int> group_order;
    for (int c = 0; c < partition.community_count; ++c)
        if (!members[static_cast<std::size_t>(c)].empty())
            group_order.push_back(c);
    std::sort(group_order.begin(), group_order.end(), [&](int a, int b) {
        const auto& ma = members[static_cast<std::size_t>(a)];
        const auto& mb = members[static_cast<std::size_t>(b)];
        if (ma.size() != mb.size())
            return ma.size() > mb.size();
        return ma.front() < mb.front();
    });

    auto row_of = [&](int v) {
        return RankingRow{registry.code(v), scores.raw[static_cast<std::size_t>(v)],
                          scores.normalized[static_cast<std::size_t>(v)]};
    };
    auto by_score = [](const RankingRow& a, const RankingRow& b) {
        if (a.normalized != b.normalized)
            return a.normalized > b.normalized;
        return a.code < b.code;
    };

    CommunityReport report;
    for (std::size_t g = 0; g < group_order.size(); ++g) {
        CommunityReport::Group group;
        group.community = static_cast<int>(g);
        for (int v : members[static_cast<std::size_t>(group_order[g])])
            group.members.push_back(row_of(v));
        std::sort(group.members.begin(), group.members.end(), by_score);
        report.groups.push_back(std::move(group));
    }
    if (!isolates.empty()) {
        CommunityReport::Group no_link;
        for (int v : isolates)
            no_link.members.push_back(row_of(v));
        std::sort(no_link.members.begin(), no_link.members.end(), by_score);
        report.groups.push_back(std::move(no_link));
    }
    return report;
}

} // namespace conduit
