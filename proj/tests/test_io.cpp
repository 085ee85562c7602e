#include <gtest/gtest.h>

#include "coarsewire/coarsewire.hpp"

using namespace cwire;

namespace {

template <class T, class Parse>
void expect_round_trip(const T& x, Parse parse) {
    const auto text = io::dump(io::to_json(x));
    const auto back = parse(io::parse_json(text));
    EXPECT_EQ(io::dump(io::to_json(back)), text);
}

}  // namespace

TEST(Io, GraphFormat) {
    const Graph g(4, {{2, 1}, {0, 3}, {1, 0}});
    EXPECT_EQ(io::to_json(g).dump(), R"({"n":4,"edges":[[0,1],[0,3],[1,2]]})");
    EXPECT_EQ(io::graph_from_json(io::to_json(g)), g);
    EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"n":2,"edges":[[0,2]]})")), ValidationError);
    EXPECT_THROW(io::graph_from_json(io::parse_json(R"({"edges":[]})")), ValidationError);
}

TEST(Io, HostDescriptors) {
    for (const Host& h : {grid(3, 244), z2_box(5), lamplighter_ball(3), thicken(grid(2, 3), 4),
                          Host::from_graph(cycle_graph(5))}) {
        EXPECT_EQ(io::host_from_json(io::to_json(h)), h);
    }
    EXPECT_EQ(io::to_json(grid(3, 244)).dump(), R"({"kind":"grid","n":3,"r":244})");
    EXPECT_EQ(io::to_json(thicken(grid(2, 3), 4)).dump(), R"({"kind":"thickened","base":{"kind":"grid","n":2,"r":3},"t":4})");
    EXPECT_THROW(io::host_from_json(io::parse_json(R"({"kind":"torus"})")), ValidationError);
}

TEST(Io, VertexEncodings) {
    const Host lamp = lamplighter_ball(2);
    LampState s;
    s.lamps = 0b0101;
    s.pos = 2;
    const VertexId v = lamp.encode(s);
    EXPECT_EQ(io::vertex_to_json(lamp, v).dump(), R"({"lamps":"1010","pos":2})");
    EXPECT_EQ(io::vertex_from_json(lamp, io::vertex_to_json(lamp, v)), v);
    const Host g = grid(3, 4);
    EXPECT_EQ(io::vertex_to_json(g, g.vertex_at({1, 2, 3})).dump(), "[1,2,3]");
    const Host t = thicken(g, 3);
    const VertexId x = t.encode(Layered{g.vertex_at({0, 1, 2}), 3});
    EXPECT_EQ(io::vertex_to_json(t, x).dump(), R"({"base":[0,1,2],"layer":3})");
    EXPECT_EQ(io::vertex_from_json(t, io::vertex_to_json(t, x)), x);
    EXPECT_THROW(io::vertex_from_json(g, io::parse_json("[1,2,9]")), ValidationError);
}

TEST(Io, WiringRoundTrips) {
    const Graph k5 = complete_graph(5);
    auto lamp = lamplighter_wiring(k5);
    auto diag = diagonal_wiring_z2(k5);
    auto kb = kb_wiring(k5, kb_params(k5, 3, 1)).wiring;
    auto inj = make_injective(lamp, 4, verify_coarse_wiring(lamp).k);
    for (const auto& w : {lamp, diag, kb, inj, identity_wiring(cycle_graph(4))}) {
        expect_round_trip(w, io::wiring_from_json);
        const auto back = io::wiring_from_json(io::to_json(w));
        EXPECT_EQ(io::to_json(verify_coarse_wiring(back)), io::to_json(verify_coarse_wiring(w)));
    }
    auto j = io::to_json(diag);
    EXPECT_TRUE(j["walks"].contains("0-1"));
    j["walks"].erase("0-1");
    EXPECT_THROW(io::wiring_from_json(j), ValidationError);
}

TEST(Io, EmbeddingRoundTripsExactly) {
    using namespace cwire::geo;
    for (const auto& e : {complete_slab_embedding(4), slab_to_h3(complete_slab_embedding(3)),
                          slab_to_h2xr(complete_slab_embedding(3)), h2slab_complete_wiring(4)}) {
        expect_round_trip(e, io::embedding_from_json);
        const auto back = io::embedding_from_json(io::to_json(e));
        EXPECT_EQ(back.vertex_points, e.vertex_points);
        EXPECT_EQ(back.edge_paths, e.edge_paths);
        EXPECT_EQ(back.space, e.space);
        const auto a = io::to_json(verify_thickness(e, 1, 1e-3), e);
        const auto b = io::to_json(verify_thickness(back, 1, 1e-3), back);
        EXPECT_EQ(a, b);
    }
}

TEST(Io, CertificateAndTrace) {
    using namespace cwire::geo;
    ThickEmbedding single{edgeless_graph(1), Space::euclidean(2), {{0, 0}}, {}};
    auto j = io::to_json(verify_thickness(single, 1, 0), single);
    EXPECT_TRUE(j["certified_lower_bound"].is_null());
    EXPECT_EQ(j["status"], "pass");
    auto w = diagonal_wiring_z2(complete_graph(4));
    auto tr = pullback_cut(w, CutMode::exact);
    auto tj = io::to_json(tr, w.host);
    EXPECT_EQ(tj["lhs"], tr.lhs);
    EXPECT_EQ(tj["levels"].size(), tr.levels.size());
    EXPECT_TRUE(tj["cut_set_valid"].get<bool>());
}

TEST(Io, SvgScenes) {
    auto e = geo::slab_to_h3(geo::complete_slab_embedding(3));
    const auto s = svg::scene(e);
    EXPECT_NE(s.find("<svg"), std::string::npos);
    EXPECT_NE(s.find("log height"), std::string::npos);
    std::size_t lines = 0;
    for (std::size_t p = s.find("<polyline"); p != std::string::npos; p = s.find("<polyline", p + 1)) ++lines;
    EXPECT_EQ(lines, 3u);
    EXPECT_NE(svg::scene(diagonal_wiring_z2(complete_graph(4))).find("<circle"), std::string::npos);
    EXPECT_THROW(svg::scene(lamplighter_wiring(complete_graph(3))), ValidationError);
}
