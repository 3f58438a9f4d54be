#include "ikit/gen.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace ikit;

TEST(Graph, Basics) {
    Graph g(70, {{0, 1}, {1, 69}});
    EXPECT_TRUE(g.adjacent(69, 1));
    EXPECT_FALSE(g.adjacent(0, 69));
    EXPECT_EQ(g.degree(1), 2);
    EXPECT_EQ(g.edge_count(), 2U);
    EXPECT_THROW(g.add_edge(3, 3), InputError);
    EXPECT_THROW(g.add_edge(0, 70), InputError);
}

TEST(VertexCover, FourVertexExample) {
    // 1-2, 2-3, vertex 4 isolated
    Graph g(4, {{0, 1}, {1, 2}});
    auto c = solve_vertex_cover(g, 2);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(is_vertex_cover(g, *c));
    EXPECT_LE(c->size(), 2U);
    auto one = solve_vertex_cover(g, 1);
    ASSERT_TRUE(one.has_value());
    EXPECT_EQ(*one, std::vector<int>{1});
    EXPECT_FALSE(solve_vertex_cover(g, 0).has_value());
}

TEST(Clique, Goldens) {
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    EXPECT_TRUE(solve_clique(k4, 4).has_value());
    EXPECT_FALSE(solve_clique(k4, 5).has_value());
    Graph path(3, {{0, 1}, {1, 2}});
    EXPECT_FALSE(solve_clique(path, 3).has_value());
    EXPECT_TRUE(solve_clique(path, 0).has_value());
}

TEST(Solvers, AgreeWithBruteForce) {
    gen::Rng rng(31);
    for (int t = 0; t < 400; ++t) {
        int n = gen::uniform(rng, 1, 8);
        auto g = gen::random_graph(rng, n, gen::uniform(rng, 1, 9) / 10.0);
        int k = gen::uniform(rng, 0, n);
        auto c = solve_clique(g, k);
        ASSERT_EQ(c.has_value(), oracle::has_clique(g, k));
        if (c) {
            EXPECT_EQ(static_cast<int>(c->size()), k);
            EXPECT_TRUE(is_clique(g, *c));
        }
        auto vc = solve_vertex_cover(g, k);
        ASSERT_EQ(vc.has_value(), oracle::has_vertex_cover(g, k));
        if (vc) {
            EXPECT_LE(static_cast<int>(vc->size()), k);
            EXPECT_TRUE(is_vertex_cover(g, *vc));
        }
        auto ds = solve_dominating_set(g, k);
        ASSERT_EQ(ds.has_value(), oracle::has_dominating_set(g, k));
        if (ds) { EXPECT_TRUE(is_dominating_set(g, *ds)); }
    }
}

TEST(Solvers, HittingSetAgainstBruteForce) {
    gen::Rng rng(32);
    for (int t = 0; t < 300; ++t) {
        int n = gen::uniform(rng, 1, 7);
        auto h = gen::random_hypergraph(rng, n, gen::uniform(rng, 0, 6), 3);
        int k = gen::uniform(rng, 0, n);
        auto s = solve_hitting_set(h, k);
        ASSERT_EQ(s.has_value(), oracle::has_hitting_set(h, k));
        if (s) { EXPECT_TRUE(is_hitting_set(h, *s)); }
    }
}

TEST(Solvers, MulticoloredCliqueAgainstBruteForce) {
    gen::Rng rng(33);
    int yes = 0;
    for (int t = 0; t < 300; ++t) {
        auto mg = gen::random_multicolored(rng, gen::uniform(rng, 1, 4), 3, 0.6);
        auto c = solve_multicolored_clique(mg);
        ASSERT_EQ(c.has_value(), oracle::has_multicolored_clique(mg));
        if (!c) continue;
        ++yes;
        ASSERT_EQ(c->size(), mg.classes.size());
        for (std::size_t i = 0; i < c->size(); ++i) {
            const auto& cls = mg.classes[i];
            EXPECT_NE(std::find(cls.begin(), cls.end(), (*c)[i]), cls.end());
        }
        EXPECT_TRUE(is_clique(mg.graph, *c));
    }
    EXPECT_GT(yes, 30);
}

TEST(Solvers, SatAgainstBruteForce) {
    gen::Rng rng(34);
    for (int t = 0; t < 300; ++t) {
        auto f = gen::random_cnf(rng, gen::uniform(rng, 1, 6), gen::uniform(rng, 0, 10));
        auto a = solve_sat_brute(f);
        ASSERT_EQ(a.has_value(), oracle::satisfiable(f));
        if (a) { EXPECT_TRUE(f.satisfied_by(*a)); }
    }
}

TEST(Solvers, Validation) {
    MulticoloredGraph mg{Graph(2), {{0}, {0}}};
    EXPECT_THROW(mg.validate(), InputError);
    Hypergraph h{2, {{0, 2}}};
    EXPECT_THROW(h.validate(), InputError);
    CnfFormula f{2, {{1, 0}}};
    EXPECT_THROW(f.validate(), InputError);
}
