#include <gtest/gtest.h>

#include <random>
#include <set>

#include "coarsewire/host.hpp"

using namespace cwire;

namespace {

// Edge set by brute force over all pairs using adjacent() only.
std::size_t count_edges_pairwise(const Host& h) {
    std::size_t e = 0;
    for (VertexId a = 0; a < h.vertex_count(); ++a)
        for (VertexId b = a + 1; b < h.vertex_count(); ++b) e += h.adjacent(a, b);
    return e;
}

}  // namespace

TEST(Grid, CountsAndBoundaryNeighbors) {
    Host g = grid(2, 3);
    EXPECT_EQ(g.vertex_count(), 9u);
    EXPECT_EQ(materialize_all(g).graph.edge_count(), 12u);
    EXPECT_EQ(count_edges_pairwise(g), 12u);
    auto nb = g.neighbors(g.vertex_at({0, 0}));
    std::set<VertexId> got(nb.begin(), nb.end()), want{g.vertex_at({1, 0}), g.vertex_at({0, 1})};
    EXPECT_EQ(got, want);
}

TEST(Grid, OneDimensionalIsPath) {
    auto m = materialize_all(grid(1, 6)).graph;
    EXPECT_EQ(m, path_graph(6));
}

TEST(Grid, EdgeCountFormula) {
    for (std::uint32_t n = 1; n <= 4; ++n)
        for (std::uint64_t r = 1; r <= 6; ++r) {
            Host g = grid(n, r);
            if (g.vertex_count() > 10000) continue;
            std::uint64_t expect = n;
            for (std::uint32_t i = 0; i + 1 < n; ++i) expect *= r;
            expect *= r - 1;
            EXPECT_EQ(materialize_all(g).graph.edge_count(), expect) << n << " " << r;
        }
}

TEST(Grid, CodesAreLexicographic) {
    Host g = grid(3, 4);
    EXPECT_LT(g.vertex_at({0, 3, 3}), g.vertex_at({1, 0, 0}));
    EXPECT_EQ(g.coords(g.vertex_at({2, 1, 3})), (std::vector<std::int64_t>{2, 1, 3}));
    EXPECT_THROW(g.vertex_at({4, 0, 0}), ValidationError);
}

TEST(Grid, DistanceMatchesBfs) {
    Host g = grid(3, 4);
    auto m = materialize_all(g);
    for (VertexId a = 0; a < g.vertex_count(); a += 7) {
        auto d = bfs_distances(m.graph, static_cast<Vertex>(a));
        for (VertexId b = 0; b < g.vertex_count(); ++b) EXPECT_EQ(g.distance(a, b), d[b]);
    }
}

TEST(Grid, BadParameters) {
    EXPECT_THROW(grid(0, 3), ValidationError);
    EXPECT_THROW(grid(2, 0), ValidationError);
}

TEST(Lamplighter, BallOfRadiusOne) {
    Host h = lamplighter_ball(1);
    EXPECT_EQ(h.vertex_count(), 8u);
    auto m = materialize_all(h);
    EXPECT_EQ(m.graph.edge_count(), 8u);
    EXPECT_EQ(count_edges_pairwise(h), 8u);
}

TEST(Lamplighter, InteriorDegreeIsThree) {
    Host h = lamplighter_ball(3);
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        auto s = h.lamp_state(v);
        std::size_t want = (s.pos == 0 || s.pos == 5) ? 2 : 3;
        EXPECT_EQ(h.neighbors(v).size(), want);
    }
}

TEST(Lamplighter, EncodeRoundTripAndLabel) {
    Host h = lamplighter_ball(2);
    LampState s{0b0110, 2};
    VertexId v = h.encode(s);
    EXPECT_EQ(h.lamp_state(v).lamps, s.lamps);
    EXPECT_EQ(h.lamp_state(v).pos, 2u);
    EXPECT_EQ(h.label(v), "01^10");
}

TEST(Lamplighter, ClosedFormDistanceMatchesBfs) {
    for (std::uint32_t k = 1; k <= 3; ++k) {
        Host h = lamplighter_ball(k);
        auto m = materialize_all(h);
        std::int64_t diam = 0;
        for (VertexId a = 0; a < h.vertex_count(); ++a) {
            auto d = bfs_distances(m.graph, static_cast<Vertex>(a));
            for (VertexId b = 0; b < h.vertex_count(); ++b) {
                ASSERT_EQ(h.distance(a, b), d[b]) << k << " " << h.label(a) << " " << h.label(b);
                diam = std::max(diam, d[b]);
            }
        }
        EXPECT_EQ(diam, h.diameter_bound());
        EXPECT_LE(diam, 6 * static_cast<std::int64_t>(k));
    }
}

TEST(Z2Box, SameShapeAsGrid) {
    EXPECT_EQ(materialize_all(z2_box(3)).graph, materialize_all(grid(2, 3)).graph);
    EXPECT_EQ(z2_box(1).vertex_count(), 1u);
    Host b = z2_box(5);
    EXPECT_EQ(b.neighbors(b.vertex_at({4, 4})).size(), 2u);
    EXPECT_THROW(z2_box(0), ValidationError);
}

TEST(Thicken, SingleVertexGivesClique) {
    Host t = thicken(Host::from_graph(edgeless_graph(1)), 3);
    EXPECT_EQ(materialize_all(t).graph, complete_graph(3));
}

TEST(Thicken, TIsOneIsIdentity) {
    Host t = thicken(Host::from_graph(path_graph(2)), 1);
    EXPECT_EQ(materialize_all(t).graph, path_graph(2));
}

TEST(Thicken, DegreeOnPathTwoByEnumeration) {
    Host y = Host::from_graph(path_graph(2));
    Host t = thicken(y, 2);
    auto m = materialize_all(t);
    // Each (v,i) meets the other layer of its fiber and both layers over the other endpoint.
    for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(m.graph.degree(v), 3u);
    EXPECT_EQ(t.max_degree(), 3u);
    EXPECT_EQ(count_edges_pairwise(t), m.graph.edge_count());
}

TEST(Thicken, FibersAreCliquesAndDistanceMatchesBfs) {
    Host t = thicken(grid(2, 3), 4);
    auto m = materialize_all(t);
    for (VertexId b = 0; b < 9; ++b)
        for (std::uint32_t i = 1; i <= 4; ++i)
            for (std::uint32_t j = i + 1; j <= 4; ++j)
                EXPECT_TRUE(t.adjacent(t.encode(Layered{b, i}), t.encode(Layered{b, j})));
    for (VertexId a = 0; a < t.vertex_count(); a += 5) {
        auto d = bfs_distances(m.graph, static_cast<Vertex>(a));
        for (VertexId b = 0; b < t.vertex_count(); ++b) EXPECT_EQ(t.distance(a, b), d[b]);
    }
    EXPECT_THROW(thicken(grid(1, 2), 0), ValidationError);
}

TEST(Hosts, AdjacencyIsSymmetricUnderSampling) {
    std::vector<Host> hosts{grid(3, 5), lamplighter_ball(3), z2_box(4), thicken(lamplighter_ball(2), 3),
                            Host::from_graph(cycle_graph(7))};
    std::mt19937_64 rng(11);
    for (const auto& h : hosts) {
        std::uniform_int_distribution<VertexId> pick(0, h.vertex_count() - 1);
        for (int i = 0; i < 300; ++i) {
            VertexId v = pick(rng);
            for (VertexId w : h.neighbors(v)) {
                auto back = h.neighbors(w);
                EXPECT_TRUE(std::binary_search(back.begin(), back.end(), v));
                EXPECT_TRUE(h.adjacent(v, w));
                EXPECT_TRUE(h.adjacent(w, v));
            }
            EXPECT_LE(h.neighbors(v).size(), h.max_degree());
        }
    }
}

TEST(Materialize, Examples) {
    Host g = grid(3, 244);
    auto m = materialize(g, {g.vertex_at({0, 0, 0}), g.vertex_at({1, 0, 0})});
    EXPECT_EQ(m.graph.vertex_count(), 2u);
    EXPECT_EQ(m.graph.edge_count(), 1u);
    EXPECT_EQ(materialize(g, {}).graph.vertex_count(), 0u);
    EXPECT_THROW(materialize(grid(2, 2), {4}), ValidationError);
}

TEST(Materialize, ThickenedSubsetMatchesPairwise) {
    Host t = thicken(grid(2, 4), 5);
    std::vector<VertexId> used;
    for (VertexId v = 0; v < t.vertex_count(); v += 3) used.push_back(v);
    auto m = materialize(t, used);
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < used.size(); ++i)
        for (std::size_t j = i + 1; j < used.size(); ++j) pairs += t.adjacent(used[i], used[j]);
    EXPECT_EQ(m.graph.edge_count(), pairs);
}
