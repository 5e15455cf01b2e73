#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "conduit/community.hpp"
#include "conduit/errors.hpp"
#include "conduit/synthetic.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace conduit;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

AffinityGraph two_k4_cliques() {
    // vertices 0..3 and 4..7 as K4s, one bridge 3-4
    AffinityGraph g(8);
    for (int base : {0, 4})
        for (int a = base; a < base + 4; ++a)
            for (int b = a + 1; b < base + 4; ++b)
                g.add_edge(a, b, 1);
    g.add_edge(3, 4, 1);
    return g;
}

// Random affinity graph with integer weights.
AffinityGraph random_affinity(std::mt19937_64& rng, int n, double p, int max_w) {
    AffinityGraph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> w(1, max_w);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng) < p)
                g.add_edge(a, b, w(rng));
    return g;
}

std::vector<int> random_assignment(std::mt19937_64& rng, int n, int communities) {
    std::uniform_int_distribution<int> pick(0, communities - 1);
    std::vector<int> a(static_cast<std::size_t>(n));
    for (int& c : a)
        c = pick(rng);
    return a;
}

} // namespace

TEST_CASE("to_affinity") {
    SUBCASE("unweighted: one unit per surviving edge") {
        UndirectedTaxGraph u(3, IncomeType::Dividends, 10 * kMicroPerPercent);
        u.set_edge(0, 1, 5 * kMicroPerPercent);
        u.set_edge(1, 2, 0);
        AffinityGraph aff = to_affinity(u, AffinityMode::Unweighted);
        CHECK(aff.total2m() == 4); // M = 2 edges
        CHECK(aff.strength(1) == 2);
    }
    SUBCASE("rate mode: a zero-rate edge is present but weightless") {
        UndirectedTaxGraph u(3, IncomeType::Dividends, 10 * kMicroPerPercent);
        u.set_edge(0, 1, 0);
        u.set_edge(1, 2, 5 * kMicroPerPercent);
        AffinityGraph aff = to_affinity(u, AffinityMode::RateAsWeight);
        CHECK(aff.total2m() == 2 * 5 * kMicroPerPercent); // M = 5 percent
        CHECK(aff.neighbors(0).size() == 1);              // edge exists
        CHECK(aff.neighbors(0)[0].weight == 0);           // but carries nothing
    }
    SUBCASE("no surviving edge is an error") {
        UndirectedTaxGraph u(3, IncomeType::Dividends, 0);
        CHECK_THROWS_WITH_AS(to_affinity(u, AffinityMode::Unweighted),
                             doctest::Contains("modularity undefined"), DomainError);
    }
}

TEST_CASE("modularity identities") {
    SUBCASE("everything in one community is exactly zero") {
        std::mt19937_64 rng(1);
        for (int trial = 0; trial < 20; ++trial) {
            AffinityGraph g = random_affinity(rng, 5 + static_cast<int>(rng() % 6), 0.6, 9);
            if (g.total2m() == 0)
                continue;
            std::vector<int> one(static_cast<std::size_t>(g.size()), 0);
            CHECK(modularity(g, one) == 0.0);
        }
    }
    SUBCASE("two disjoint edges, matching partition: Q = 0.5") {
        AffinityGraph g(4);
        g.add_edge(0, 1, 1);
        g.add_edge(2, 3, 1);
        CHECK(modularity(g, {0, 0, 1, 1}) == 0.5);
        CHECK(close(oracle::modularity_direct(g, {0, 0, 1, 1}), 0.5));
    }
    SUBCASE("single edge split into singletons: Q = -0.5") {
        AffinityGraph g(2);
        g.add_edge(0, 1, 1);
        CHECK(modularity(g, {0, 1}) == -0.5);
        CHECK(close(oracle::modularity_direct(g, {0, 1}), -0.5));
    }
    SUBCASE("wrong assignment length is an error") {
        AffinityGraph g(2);
        g.add_edge(0, 1, 1);
        CHECK_THROWS_AS(modularity(g, {0}), DomainError);
    }
    SUBCASE("agrees with the per-pair oracle on random weighted graphs; Q <= 1") {
        std::mt19937_64 rng(2);
        for (int trial = 0; trial < 30; ++trial) {
            AffinityGraph g = random_affinity(rng, 8, 0.5, 7);
            if (g.total2m() == 0)
                continue;
            std::vector<int> a = random_assignment(rng, 8, 3);
            double q = modularity(g, a);
            CHECK(close(q, oracle::modularity_direct(g, a)));
            CHECK(q <= 1.0);
        }
    }
    SUBCASE("permutation equivariance") {
        std::mt19937_64 rng(3);
        AffinityGraph g = random_affinity(rng, 7, 0.6, 5);
        std::vector<int> perm{2, 5, 0, 6, 1, 3, 4};
        AffinityGraph pg(7);
        for (int v = 0; v < 7; ++v)
            for (const auto& nb : g.neighbors(v))
                if (v < nb.to)
                    pg.add_edge(perm[static_cast<std::size_t>(v)],
                                perm[static_cast<std::size_t>(nb.to)], nb.weight);
        std::vector<int> a = random_assignment(rng, 7, 3);
        std::vector<int> pa(7);
        for (int v = 0; v < 7; ++v)
            pa[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
                a[static_cast<std::size_t>(v)];
        CHECK(modularity(g, a) == modularity(pg, pa));
    }
}

TEST_CASE("delta_q") {
    SUBCASE("identity move is zero") {
        AffinityGraph g = two_k4_cliques();
        LouvainState st = LouvainState::from_assignment(g, {0, 0, 0, 0, 1, 1, 1, 1});
        CHECK(delta_q(g, st, 2, 0, 0) == 0.0);
    }
    SUBCASE("random moves match the direct re-evaluation") {
        std::mt19937_64 rng(8);
        int checked = 0;
        while (checked < 300) {
            AffinityGraph g = random_affinity(rng, 8, 0.55, 6);
            if (g.total2m() == 0)
                continue;
            std::vector<int> a = random_assignment(rng, 8, 4);
            LouvainState st = LouvainState::from_assignment(g, a);
            int v = static_cast<int>(rng() % 8);
            int to = static_cast<int>(rng() % 4);
            int from = a[static_cast<std::size_t>(v)];
            double incremental = delta_q(g, st, v, from, to);
            double before = modularity(g, a);
            std::vector<int> after = a;
            after[static_cast<std::size_t>(v)] = to;
            CHECK(close(incremental, modularity(g, after) - before));
            ++checked;
        }
    }
    SUBCASE("lone vertex joining its adjacent clique gains") {
        AffinityGraph g = two_k4_cliques();
        // vertex 3 exiled to its own community
        LouvainState st = LouvainState::from_assignment(g, {0, 0, 0, 2, 1, 1, 1, 1});
        CHECK(delta_q(g, st, 3, 2, 0) > 0.0);
    }
}

TEST_CASE("louvain: two K4 cliques — exhaustively verified optimum") {
    AffinityGraph g = two_k4_cliques();
    LouvainResult res = louvain(g);
    CHECK(res.converged);
    CHECK(res.partition.community_count == 2);
    for (int v = 0; v < 4; ++v)
        CHECK(res.partition.assignment[static_cast<std::size_t>(v)] ==
              res.partition.assignment[0]);
    for (int v = 4; v < 8; ++v)
        CHECK(res.partition.assignment[static_cast<std::size_t>(v)] ==
              res.partition.assignment[4]);
    CHECK(res.partition.assignment[0] != res.partition.assignment[4]);

    CHECK(close(res.partition.modularity,
                oracle::modularity_direct(g, res.partition.assignment)));

    // exhaustive search over all 4140 partitions of 8 vertices
    double best = -1.0;
    std::vector<int> best_assignment;
    oracle::for_each_partition(8, [&](const std::vector<int>& a) {
        double q = oracle::modularity_direct(g, a);
        if (q > best) {
            best = q;
            best_assignment = a;
        }
    });
    CHECK(close(res.partition.modularity, best));
    CHECK(best_assignment == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("louvain: single edge merges into one community") {
    AffinityGraph g(2);
    g.add_edge(0, 1, 1);
    LouvainResult res = louvain(g);
    CHECK(res.partition.community_count == 1);
    CHECK(res.partition.modularity == 0.0);
}

TEST_CASE("louvain: recovers planted blocks for all generator seeds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RateMatrix m = generate_synthetic(12, seed, SyntheticProfile::PlantedCommunities,
                                          IncomeType::Dividends, 3);
        UndirectedTaxGraph u =
            apply_threshold_undirected(to_undirected(build_directed(m)), 5 * kMicroPerPercent);
        AffinityGraph aff = to_affinity(u, AffinityMode::Unweighted);
        LouvainResult res = louvain(aff);
        REQUIRE(res.partition.community_count == 3);
        for (int v = 0; v < 12; ++v)
            for (int w = 0; w < 12; ++w) {
                bool same_block = planted_block_of(v, 12, 3) == planted_block_of(w, 12, 3);
                bool same_comm = res.partition.assignment[static_cast<std::size_t>(v)] ==
                                 res.partition.assignment[static_cast<std::size_t>(w)];
                CHECK(same_block == same_comm);
            }
    }
}

TEST_CASE("louvain: determinism and quality floor") {
    std::mt19937_64 rng(44);
    AffinityGraph g = random_affinity(rng, 20, 0.3, 4);
    LouvainConfig cfg;
    cfg.seed = 7;
    LouvainResult a = louvain(g, cfg);
    LouvainResult b = louvain(g, cfg);
    CHECK(a.partition.assignment == b.partition.assignment);
    CHECK(a.partition.modularity == b.partition.modularity);

    std::vector<int> singletons(20);
    std::iota(singletons.begin(), singletons.end(), 0);
    CHECK(a.partition.modularity >= modularity(g, singletons));
    CHECK(a.partition.modularity <= 1.0);
}

TEST_CASE("louvain: exhausted pass budget returns best-so-far, flagged") {
    AffinityGraph g = two_k4_cliques();
    LouvainConfig cfg;
    cfg.max_passes = 0;
    LouvainResult res = louvain(g, cfg);
    CHECK_FALSE(res.converged);
    CHECK(res.partition.community_count == 8); // untouched singletons
    CHECK(res.partition.modularity == modularity(g, res.partition.assignment));
}

TEST_CASE("phase-2 style aggregation preserves modularity exactly") {
    std::mt19937_64 rng(45);
    AffinityGraph g = random_affinity(rng, 10, 0.5, 5);
    std::vector<int> a = random_assignment(rng, 10, 3);

    // aggregate by hand through the public surface
    AffinityGraph agg(3);
    std::vector<std::int64_t> self(3, 0);
    std::vector<std::vector<std::int64_t>> cross(3, std::vector<std::int64_t>(3, 0));
    for (int v = 0; v < 10; ++v)
        for (const auto& nb : g.neighbors(v)) {
            if (v > nb.to)
                continue;
            int cv = a[static_cast<std::size_t>(v)];
            int cw = a[static_cast<std::size_t>(nb.to)];
            if (cv == cw)
                self[static_cast<std::size_t>(cv)] += 2 * nb.weight;
            else
                cross[static_cast<std::size_t>(std::min(cv, cw))]
                     [static_cast<std::size_t>(std::max(cv, cw))] += nb.weight;
        }
    for (int c = 0; c < 3; ++c) {
        agg.add_self(c, self[static_cast<std::size_t>(c)]);
        for (int d = c + 1; d < 3; ++d)
            if (cross[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] > 0)
                agg.add_edge(c, d, cross[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)]);
    }
    std::vector<int> identity{0, 1, 2};
    CHECK(modularity(agg, identity) == modularity(g, a)); // exact, not approximate
}

TEST_CASE("sweep_modularity") {
    SUBCASE("single threshold yields a single point") {
        RateMatrix m = generate_synthetic(8, 2, SyntheticProfile::Uniform);
        ModularityCurve curve = sweep_modularity(m, {kMaxRate}, AffinityMode::Unweighted);
        REQUIRE(curve.points.size() == 1);
        CHECK(curve.points[0].modularity.has_value());
    }
    SUBCASE("planted synthetic peaks at the separating threshold") {
        RateMatrix m = generate_synthetic(12, 5, SyntheticProfile::PlantedCommunities,
                                          IncomeType::Dividends, 3);
        std::vector<Micro> ladder;
        for (Micro t : {35, 30, 25, 20, 15, 10, 5, 0})
            ladder.push_back(t * kMicroPerPercent);
        ModularityCurve curve = sweep_modularity(m, ladder, AffinityMode::Unweighted);
        REQUIRE(curve.best_threshold().has_value());
        CHECK(*curve.best_threshold() == 5 * kMicroPerPercent);
        for (const auto& p : curve.points)
            if (p.threshold == 5 * kMicroPerPercent) {
                CHECK(p.community_count == 3);
                CHECK(p.isolate_count == 0);
            }
    }
    SUBCASE("a threshold with zero surviving edges records an undefined point") {
        RateMatrix m = support::uniform_matrix(4, 10 * kMicroPerPercent);
        ModularityCurve curve =
            sweep_modularity(m, {0, 20 * kMicroPerPercent}, AffinityMode::Unweighted);
        REQUIRE(curve.points.size() == 2);
        CHECK(curve.points[0].threshold == 20 * kMicroPerPercent);
        CHECK(curve.points[0].modularity.has_value());
        CHECK_FALSE(curve.points[1].modularity.has_value());
        CHECK(curve.points[1].isolate_count == 4);
        CHECK(*curve.best_threshold() == 20 * kMicroPerPercent);
    }
}

TEST_CASE("community_report") {
    JurisdictionRegistry reg = synthetic_registry(4);

    SUBCASE("all isolates collapse into the single no-link group") {
        Partition p{{0, 1, 2, 3}, 4, 0.0};
        CentralityScores s{CentralityKind::Load,
                           {0, 0, 0, 0},
                           {0, 0, 0, 0},
                           {IncomeType::Dividends, std::nullopt, 4}};
        CommunityReport rep = community_report(p, s, reg, {0, 1, 2, 3});
        REQUIRE(rep.groups.size() == 1);
        CHECK_FALSE(rep.groups[0].community.has_value());
        CHECK(rep.groups[0].members.size() == 4);
    }
    SUBCASE("two communities, members descending by centrality") {
        Partition p{{0, 0, 1, 1}, 2, 0.4};
        CentralityScores s{CentralityKind::Load,
                           {1.0, 2.0, 0.5, 3.0},
                           {0.1, 0.2, 0.05, 0.3},
                           {IncomeType::Dividends, std::nullopt, 4}};
        CommunityReport rep = community_report(p, s, reg, {});
        REQUIRE(rep.groups.size() == 2);
        CHECK(rep.groups[0].members[0].code == "J001"); // 0.2 > 0.1
        CHECK(rep.groups[0].members[1].code == "J000");
        CHECK(rep.groups[1].members[0].code == "J003"); // 0.3 > 0.05
    }
}
