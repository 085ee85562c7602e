#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "coarsewire/construct.hpp"
#include "coarsewire/geometry/bridge.hpp"

using namespace cwire;
using namespace cwire::geo;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Half-space distance in 50-digit arithmetic, straight from the acosh formula.
double oracle_hyperbolic(const Point& p, const Point& q) {
    Big s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (Big(p[i]) - Big(q[i])) * (Big(p[i]) - Big(q[i]));
    return static_cast<double>(acosh(1 + s / (2 * Big(p.back()) * Big(q.back()))));
}

Point random_point(const Space& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3, 3), h(0.05, 3), iv(0, 1);
    Point p;
    std::function<void(const Space&)> fill = [&](const Space& f) {
        if (f.is_product()) {
            for (const auto& g : f.parts) fill(g);
            return;
        }
        for (std::size_t i = 0; i < f.dim; ++i) {
            if (f.interval)
                p.push_back(f.interval->first + iv(rng) * (f.interval->second - f.interval->first));
            else if (f.kind == SpaceKind::halfspace && i + 1 == f.dim)
                p.push_back(h(rng));
            else
                p.push_back(u(rng));
        }
    };
    fill(s);
    return p;
}

std::vector<Space> all_spaces() {
    return {Space::euclidean(3),
            Space::linf(3),
            Space::halfspace(2),
            Space::halfspace(3),
            Space::product_l2({Space::euclidean(1), Space::halfspace(2)}),
            Space::product_max({Space::halfspace(2), Space::segment(0, 1)})};
}

// Minimum over a dense parameter grid: an upper bound on the segment distance.
double sampled_segment_distance(const Space& s, const Point& a0, const Point& a1, const Point& b0, const Point& b1,
                                int steps) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = a0.size();
    Point p(m), q(m);
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j) {
            geo::detail::lerp(m, a0.data(), a1.data(), double(i) / steps, p.data());
            geo::detail::lerp(m, b0.data(), b1.data(), double(j) / steps, q.data());
            best = std::min(best, distance(s, p, q));
        }
    return best;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4 : 2);
    return acc * h / 3;
}

// Hexagonal cycle of radius 3 in the plane, scaled by sqrt 2.
ThickEmbedding hexagon() {
    ThickEmbedding e{cycle_graph(6), Space::euclidean(2), {}, {}};
    for (int i = 0; i < 6; ++i) {
        const double a = i * std::numbers::pi / 3;
        e.vertex_points.push_back({3 * std::sqrt(2.0) * std::cos(a), 3 * std::sqrt(2.0) * std::sin(a)});
    }
    for (auto [u, v] : e.graph.edges()) e.edge_paths.push_back({e.vertex_points[u], e.vertex_points[v]});
    return e;
}

}  // namespace

// ---- spaces ----

TEST(Space, HyperbolicPlaneExample) {
    const Space h2 = Space::halfspace(2);
    EXPECT_NEAR(distance(h2, {0, 1}, {1, 1}), std::acosh(1.5), 1e-15);
    EXPECT_NEAR(distance(h2, {0, 1}, {1, 1}), 0.9624236501192069, 1e-15);
    std::mt19937_64 rng(5);
    for (const Space& s : {Space::halfspace(2), Space::halfspace(3)})
        for (int t = 0; t < 500; ++t) {
            auto p = random_point(s, rng), q = random_point(s, rng);
            EXPECT_NEAR(distance(s, p, q), oracle_hyperbolic(p, q), 1e-12 * (1 + oracle_hyperbolic(p, q)));
        }
}

TEST(Space, HorosphereHeightIdentity) {
    EXPECT_NEAR(std::cosh(1.0), 1 + 1 / (2 * h0 * h0), 1e-15);
    EXPECT_NEAR(distance(Space::halfspace(3), {0, 0, h0}, {1, 0, h0}), 1.0, 1e-15);
    EXPECT_NEAR(distance(Space::halfspace(2), {0, h0}, {0, h0 * std::exp(-1.0)}), 1.0, 1e-15);
}

TEST(Space, MetricAxioms) {
    std::mt19937_64 rng(11);
    for (const auto& s : all_spaces())
        for (int t = 0; t < 2000; ++t) {
            auto x = random_point(s, rng), y = random_point(s, rng), z = random_point(s, rng);
            const double xy = distance(s, x, y), yz = distance(s, y, z), xz = distance(s, x, z);
            EXPECT_EQ(distance(s, x, x), 0) << s.describe();
            EXPECT_NEAR(xy, distance(s, y, x), 1e-12) << s.describe();
            EXPECT_LE(xz, xy + yz + 1e-12) << s.describe();
        }
}

TEST(Space, HyperbolicIsometries) {
    std::mt19937_64 rng(3);
    const Space h3 = Space::halfspace(3);
    for (int t = 0; t < 500; ++t) {
        auto p = random_point(h3, rng), q = random_point(h3, rng);
        const double d = distance(h3, p, q);
        Point tp = p, tq = q, sp = p, sq = q;
        tp[0] += 1.7, tq[0] += 1.7, tp[1] -= 0.4, tq[1] -= 0.4;
        for (auto& c : sp) c *= 3.25;
        for (auto& c : sq) c *= 3.25;
        EXPECT_NEAR(distance(h3, tp, tq), d, 1e-10);
        EXPECT_NEAR(distance(h3, sp, sq), d, 1e-10);
    }
}

TEST(Space, RejectsBadPoints) {
    EXPECT_THROW(distance(Space::halfspace(2), {0, 0}, {0, 1}), ValidationError);
    EXPECT_THROW(distance(Space::euclidean(2), {0}, {0, 1}), ValidationError);
    const Space hs = Space::product_max({Space::halfspace(2), Space::segment(0, 1)});
    EXPECT_THROW(distance(hs, {0, 1, 2}, {0, 1, 0}), ValidationError);
    EXPECT_THROW(Space::halfspace(1), ValidationError);
}

TEST(Space, BallVolumes) {
    using std::numbers::pi;
    for (double r : {0.5, 1.0, 2.5}) {
        EXPECT_NEAR(ball_volume(Space::euclidean(3), r), 4.0 / 3 * pi * r * r * r, 1e-12);
        EXPECT_NEAR(ball_volume(Space::euclidean(2), r), pi * r * r, 1e-12);
        EXPECT_NEAR(ball_volume(Space::linf(3), r), 8 * r * r * r, 1e-12);
        const double h2 = simpson([](double t) { return 2 * pi * std::sinh(t); }, 0, r);
        const double h3 = simpson([](double t) { return 4 * pi * std::sinh(t) * std::sinh(t); }, 0, r);
        EXPECT_NEAR(ball_volume(Space::halfspace(2), r), h2, 1e-9 * h2);
        EXPECT_NEAR(ball_volume(Space::halfspace(3), r), h3, 1e-9 * h3);
    }
    EXPECT_DOUBLE_EQ(ball_volume(Space::segment(0, 1), 2), 1);
    EXPECT_THROW(ball_volume(Space::halfspace(4), 1), UnsupportedError);
    EXPECT_NEAR(h3_volume_constant(), 2038.858, 1e-3);
    EXPECT_LE(h3_volume_constant(), 2039);
}

// ---- segment distances ----

TEST(Segments, EuclideanAgainstSampling) {
    std::mt19937_64 rng(7);
    const Space e3 = Space::euclidean(3);
    for (int t = 0; t < 200; ++t) {
        auto a0 = random_point(e3, rng), a1 = random_point(e3, rng), b0 = random_point(e3, rng),
             b1 = random_point(e3, rng);
        const double d = geo::detail::segment_distance_l2(3, a0.data(), a1.data(), b0.data(), b1.data());
        const double sampled = sampled_segment_distance(e3, a0, a1, b0, b1, 200);
        EXPECT_LE(d, sampled + 1e-12);
        EXPECT_GE(d, sampled - 0.05);
        const double ex = std::sqrt(
            geo::detail::segment_distance_sq_exact(3, a0.data(), a1.data(), b0.data(), b1.data()).convert_to<double>());
        EXPECT_NEAR(d, ex, 1e-9);
    }
}

TEST(Segments, LinfProgramAgainstSampling) {
    std::mt19937_64 rng(8);
    const Space l3 = Space::linf(3);
    for (int t = 0; t < 100; ++t) {
        auto a0 = random_point(l3, rng), a1 = random_point(l3, rng), b0 = random_point(l3, rng),
             b1 = random_point(l3, rng);
        const double d =
            geo::detail::segment_distance_linf_exact(3, a0.data(), a1.data(), b0.data(), b1.data()).convert_to<double>();
        const double sampled = sampled_segment_distance(l3, a0, a1, b0, b1, 200);
        EXPECT_LE(d, sampled + 1e-12);
        EXPECT_GE(d, sampled - 0.05);
    }
}

TEST(Segments, LinfFastPathMatchesEnumeration) {
    std::mt19937_64 rng(18);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_real_distribution<double> real(-4, 4);
    for (int t = 0; t < 600; ++t) {
        // Integer points give parallel, touching and degenerate segments.
        std::array<std::array<double, 3>, 4> p;
        for (auto& q : p)
            for (auto& c : q) c = t % 2 ? small(rng) : real(rng);
        if (t % 5 == 0) p[1] = p[0];
        if (t % 7 == 0) p[3] = p[2];
        const auto fast = geo::detail::segment_distance_linf_exact(3, p[0].data(), p[1].data(), p[2].data(), p[3].data());
        const auto slow =
            geo::detail::segment_distance_linf_enumerate(3, p[0].data(), p[1].data(), p[2].data(), p[3].data());
        EXPECT_EQ(fast, slow) << t;
    }
}

TEST(Segments, SharedEndOverlapIntegerPathMatchesRational) {
    // An affine change with a half-integer offset preserves the answer and
    // forces the rational path.
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> small(-2, 2);
    std::size_t overlaps = 0;
    for (int t = 0; t < 2000; ++t) {
        std::array<double, 3> P, A, B, P2, A2, B2;
        for (std::size_t c = 0; c < 3; ++c) {
            P[c] = small(rng) * 1e11;
            A[c] = P[c] + small(rng) * 3;
            B[c] = t % 3 ? P[c] + (A[c] - P[c]) * small(rng) : P[c] + small(rng);
            P2[c] = P[c] / 2 + 0.25, A2[c] = A[c] / 2 + 0.25, B2[c] = B[c] / 2 + 0.25;
        }
        if (A == P || B == P) continue;
        const bool fast = geo::detail::shared_end_overlap(3, P.data(), A.data(), B.data());
        EXPECT_EQ(fast, geo::detail::shared_end_overlap(3, P2.data(), A2.data(), B2.data())) << t;
        overlaps += fast;
    }
    EXPECT_GT(overlaps, 100u);
}

TEST(Segments, LowerBoundsAreSound) {
    std::mt19937_64 rng(9);
    for (const auto& s : all_spaces())
        for (int t = 0; t < 100; ++t) {
            auto a0 = random_point(s, rng), a1 = random_point(s, rng), b0 = random_point(s, rng),
                 b1 = random_point(s, rng);
            const double lb = geo::detail::segment_lower_bound(s, a0.data(), a1.data(), b0.data(), b1.data());
            const double ub = geo::detail::segment_upper_bound(s, a0.data(), a1.data(), b0.data(), b1.data());
            const double sampled = sampled_segment_distance(s, a0, a1, b0, b1, 60);
            EXPECT_LE(lb, sampled * (1 + 1e-12) + 1e-12) << s.describe();
            EXPECT_GE(ub, sampled) << s.describe();
        }
}

TEST(Segments, IntegerLineFilter) {
    const double p0[] = {0, 0, 0}, p1[] = {10, 0, 0}, q0[] = {5, 3, -4}, q1[] = {5, 3, 4};
    EXPECT_TRUE(geo::detail::int_lines_apart(p0, p1, q0, q1, 2.999));  // distance exactly 3
    EXPECT_FALSE(geo::detail::int_lines_apart(p0, p1, q0, q1, 3.0001));
    EXPECT_TRUE(geo::detail::int_lines_apart(p0, p1, q0, q1, 0));
    const double r0[] = {0, 0, 0}, r1[] = {0, 5, 0};
    EXPECT_FALSE(geo::detail::int_lines_apart(p0, p1, r0, r1, 0));  // the lines meet
    const double s0[] = {0, 2, 0}, s1[] = {7, 2, 0};
    EXPECT_TRUE(geo::detail::int_lines_apart(p0, p1, s0, s1, 1.999));  // parallel, 2 apart
    EXPECT_FALSE(geo::detail::int_lines_apart(p0, p1, s0, s1, 2.001));
}

// ---- thickness certificates ----

TEST(Thickness, SingleVertexIsInfinitelyThick) {
    ThickEmbedding e{edgeless_graph(1), Space::halfspace(3), {{0, 0, 1}}, {}};
    auto c = verify_thickness(e, 1, 0);
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(std::isinf(c.certified_lower_bound));
}

TEST(Thickness, SlabSmallCases) {
    auto k2 = complete_slab_embedding(2);
    auto c = verify_thickness(k2, 1, 0);
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.exact);
    EXPECT_GE(c.certified_lower_bound, 1);
    auto k3 = complete_slab_embedding(3);
    EXPECT_EQ(k3.edge_paths[0].size(), 5u);
    EXPECT_DOUBLE_EQ(distance(k3.space, k3.vertex_points[0], k3.vertex_points[2]), 2);
}

TEST(Thickness, SlabExactUpToTwelve) {
    for (std::size_t N = 1; N <= 12; ++N) {
        auto c = verify_thickness(complete_slab_embedding(N), 1, 0);
        EXPECT_TRUE(c.passed()) << N;
        EXPECT_TRUE(c.simple) << N;
        EXPECT_GE(c.certified_lower_bound, 1) << N;
    }
}

TEST(Thickness, SlabIncidentPathsOverlap) {
    ThicknessOptions opt;
    opt.check_incident = true;
    auto c = verify_thickness(complete_slab_embedding(3), 1, 0, opt);
    EXPECT_FALSE(c.simple);
    EXPECT_FALSE(c.problem.empty());
}

TEST(Thickness, DetectsThinEmbedding) {
    auto e = complete_slab_embedding(4);
    auto thin = scale_embedding(e, 0.5);
    auto c = verify_thickness(thin, 1, 1e-3);
    EXPECT_EQ(c.status, CertStatus::fail);
    EXPECT_NEAR(c.certified_lower_bound, 0.5, 1e-12);
    auto h = verify_thickness(slab_to_h3(thin), 1, 1e-3);
    EXPECT_EQ(h.status, CertStatus::fail);
    EXPECT_FALSE(h.worst.empty());
    EXPECT_LT(h.worst.front().sampled, 1 - 1e-3);
}

TEST(Thickness, DetectsSelfCrossingPath) {
    ThickEmbedding e{complete_graph(2), Space::euclidean(2), {{0, 0}, {4, 0}}, {}};
    e.edge_paths.push_back({{0, 0}, {2, 2}, {2, -1}, {1, 1}, {4, 0}});
    auto c = verify_thickness(e, 1, 0);
    EXPECT_FALSE(c.simple);
    EXPECT_EQ(c.status, CertStatus::fail);
}

TEST(Thickness, BudgetExhaustionIsInconclusive) {
    // Vertex 0 is 2.4426 from the bend (5,3) of the second path; with a
    // target just below that and a single box nothing can be decided.
    ThickEmbedding e{path_graph(3), Space::halfspace(2), {}, {}};
    e.vertex_points = {{0, 1}, {5, 1}, {10, 1}};
    for (auto [u, v] : e.graph.edges()) e.edge_paths.push_back({e.vertex_points[u], e.vertex_points[v]});
    e.edge_paths[1] = {{5, 1}, {5, 3}, {10, 1}};
    ThicknessOptions opt;
    opt.box_budget = 1;
    auto c = verify_thickness(e, 2.44, 0, opt);
    EXPECT_TRUE(verify_thickness(e, 2.44, 0).passed());
    EXPECT_EQ(c.status, CertStatus::inconclusive);
}

TEST(Thickness, H3Embedding) {
    for (std::size_t N = 1; N <= 8; ++N) {
        auto e = slab_to_h3(complete_slab_embedding(N));
        auto c = verify_thickness(e, 1, 1e-3);
        EXPECT_TRUE(c.passed()) << N;
        EXPECT_GE(c.certified_lower_bound, 1 - 1e-3) << N;
        auto d = embedding_diameter(e, 1e-3);
        EXPECT_LE(d.upper, h3_diameter_bound(N)) << N;
        auto v = estimate_volume(e, 0.5);
        EXPECT_LE(v.volume, 2039.0 * N * N) << N;
    }
}

TEST(Thickness, H2TimesLineEmbedding) {
    auto e = slab_to_h2xr(complete_slab_embedding(4));
    EXPECT_EQ(e.space.describe(), "L2(E1 x H2)");
    auto c = verify_thickness(e, 1, 1e-3);
    EXPECT_TRUE(c.passed());
}

TEST(Thickness, H2SlabWiring) {
    for (std::size_t N = 1; N <= 6; ++N) {
        auto e = h2slab_complete_wiring(N);
        auto c = verify_thickness(e, 1, 1e-3);
        EXPECT_TRUE(c.passed()) << N;
        auto v = estimate_volume(e, 0.5);
        EXPECT_LE(v.volume, h2slab_volume_bound(N)) << N;
        EXPECT_LE(embedding_diameter(e, 1e-3).upper, h2slab_diameter_bound(N) + 1) << N;
    }
}

TEST(Thickness, HoroproductOfThickPlaneEmbedding) {
    auto e = hexagon();
    ASSERT_TRUE(verify_thickness(e, std::sqrt(2.0), 1e-12).passed());
    for (auto [q, r] : {std::pair<std::size_t, std::size_t>{3, 0}, {2, 1}}) {
        auto h = horoproduct_embed(e, q, r);
        EXPECT_EQ(h.space, horoproduct_space(q, r));
        EXPECT_TRUE(verify_thickness(h, 1, 1e-3).passed()) << q << "," << r;
    }
    EXPECT_THROW(horoproduct_embed(e, 3, 1), ValidationError);
}

TEST(Thickness, HoroproductRandomPointPairs) {
    // √2-separated points of R^{q+r-1} stay ≥ 1 apart after the map.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-5, 5);
    for (auto [q, r] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 0}, {2, 2}, {3, 1}}) {
        const Space s = horoproduct_space(q, r);
        for (int t = 0; t < 2000; ++t) {
            Point a(q + r - 1), b(q + r - 1);
            double e2 = 0;
            for (std::size_t c = 0; c < a.size(); ++c) a[c] = u(rng), b[c] = u(rng), e2 += (a[c] - b[c]) * (a[c] - b[c]);
            if (e2 < 2) continue;
            EXPECT_GE(distance(s, horoproduct_point(a, q, r), horoproduct_point(b, q, r)), 1 - 1e-12);
        }
    }
}

TEST(Thickness, SlabRangeChecked) {
    auto e = complete_slab_embedding(3);
    e.vertex_points[0] = e.edge_paths[0][0] = e.edge_paths[1][0] = {0, 0, -1};
    EXPECT_THROW(slab_to_h3(e), ValidationError);
}

TEST(Thickness, InvariantUnderIsometry) {
    auto e = slab_to_h3(complete_slab_embedding(4));
    auto moved = push_forward(
        e, e.space, [](const Point& p) { return Point{2.5 * (p[0] - 3), 2.5 * p[1], 2.5 * p[2]}; }, 1);
    auto a = verify_thickness(e, 1, 1e-3), b = verify_thickness(moved, 1, 1e-3);
    EXPECT_TRUE(a.passed());
    EXPECT_TRUE(b.passed());
    EXPECT_NEAR(a.sampled_min, b.sampled_min, 1e-9);
}

// ---- measurement ----

TEST(Measure, DiameterAgainstSampling) {
    for (const auto& e : {slab_to_h3(complete_slab_embedding(3)), h2slab_complete_wiring(3)}) {
        auto d = embedding_diameter(e, 1e-6);
        double sampled = 0;
        std::vector<Point> pts;
        Point p(e.space.arity());
        for (const auto& path : e.edge_paths)
            for (std::size_t s = 0; s + 1 < path.size(); ++s)
                for (int k = 0; k <= 20; ++k) {
                    geo::detail::lerp(p.size(), path[s].data(), path[s + 1].data(), k / 20.0, p.data());
                    pts.push_back(p);
                }
        for (const auto& a : pts)
            for (const auto& b : pts) sampled = std::max(sampled, distance(e.space, a, b));
        EXPECT_GE(d.upper, sampled);
        EXPECT_LE(d.lower, d.upper);
        EXPECT_LE(d.upper - d.lower, 1e-6 + 1e-12);
        EXPECT_GE(d.lower, sampled - 1e-9);
    }
    auto slab = complete_slab_embedding(5);
    auto d = embedding_diameter(slab);
    EXPECT_DOUBLE_EQ(d.lower, 4);
    EXPECT_DOUBLE_EQ(d.upper, 4);
}

TEST(Measure, VolumeIsAnUpperBound) {
    using std::numbers::pi;
    ThickEmbedding pt{edgeless_graph(1), Space::euclidean(2), {{0, 0}}, {}};
    auto v = estimate_volume(pt, 0.5);
    EXPECT_EQ(v.net_points, 1u);
    EXPECT_GE(v.volume, pi);
    ThickEmbedding seg{complete_graph(2), Space::euclidean(2), {{0, 0}, {10, 0}}, {{{0, 0}, {10, 0}}}};
    for (double spacing : {0.25, 0.5, 1.0}) {
        auto w = estimate_volume(seg, spacing);
        EXPECT_GE(w.volume, 2 * 10 + pi);
        EXPECT_TRUE(w.upper_bound);
    }
    EXPECT_THROW(estimate_volume(seg, 0), ValidationError);
    ThickEmbedding h4{edgeless_graph(1), Space::halfspace(4), {{0, 0, 0, 1}}, {}};
    EXPECT_THROW(estimate_volume(h4, 0.5), UnsupportedError);
}

// ---- coarsening ----

TEST(Coarsen, SlabOntoLattice) {
    auto e = complete_slab_embedding(3);
    auto net = lattice_net({0, 0, 0}, {2, 2, 1});
    ASSERT_EQ(net.positions.size(), 18u);
    auto r = coarsen_embedding(e, net, 1);
    EXPECT_FALSE(r.report.disconnected);
    EXPECT_EQ(r.wiring.vertex_map, (std::vector<VertexId>{0, 8, 16}));
    auto b = coarsening_instance_bound(net, e.space, 1, max_degree(e.graph));
    EXPECT_GE(b.lambda, 1);
    EXPECT_LE(static_cast<double>(r.report.k), b.k_bound);
    std::size_t links = 0;
    for (auto n : r.chain_lengths) links += n - 1;
    EXPECT_LE(r.report.volume, e.graph.vertex_count() + static_cast<std::size_t>(r.max_step) * links);
    // Every walk step is a net edge and walks join the right images.
    for (std::size_t i = 0; i < r.wiring.walks.size(); ++i) {
        const auto& w = r.wiring.walks[i];
        EXPECT_EQ(w.front(), r.wiring.vertex_map[e.graph.edges()[i].first]);
        EXPECT_EQ(w.back(), r.wiring.vertex_map[e.graph.edges()[i].second]);
        for (std::size_t s = 0; s + 1 < w.size(); ++s) EXPECT_TRUE(net.host.adjacent(w[s], w[s + 1]));
    }
}

TEST(Coarsen, SingleVertex) {
    ThickEmbedding e{edgeless_graph(1), Space::linf(3), {{1, 1, 0}}, {}};
    auto r = coarsen_embedding(e, lattice_net({0, 0, 0}, {2, 2, 1}), 1);
    EXPECT_EQ(r.report.volume, 1u);
    EXPECT_EQ(r.report.k, 1u);
}

TEST(Coarsen, UncoveredImage) {
    auto e = complete_slab_embedding(4);
    EXPECT_THROW(coarsen_embedding(e, lattice_net({0, 0, 0}, {1, 1, 1}), 1), ValidationError);
}

// ---- realization ----

TEST(Realize, SingleEdgeInGrid) {
    Wiring w{complete_graph(2), grid(3, 2), {0, 1}, {{0, 1}}};
    auto r = realize_grid_wiring(w, 1, 1, 7);
    EXPECT_EQ(r.tmpl.T, 2u);
    EXPECT_GE(r.eps, 1);
    auto c = verify_thickness(r.embedding, 1, 0);
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.exact);
    EXPECT_EQ(r.embedding.edge_paths[0].size(), 3u);
}

TEST(Realize, DoublingScaleDoublesThickness) {
    auto t = build_grid_template(3, 3, 2);
    t.shift = 0;
    const double e0 = geo::detail::window_min_distance(geo::detail::template_window(t));
    t.shift = 1;
    const double e1 = geo::detail::window_min_distance(geo::detail::template_window(t));
    EXPECT_DOUBLE_EQ(e1, 2 * e0);
    EXPECT_DOUBLE_EQ(e0, t.eps_estimate);
}

TEST(Realize, TemplateIsCertifiedAtFinalScale) {
    auto t = build_grid_template(3, 4, 1);
    auto w = geo::detail::template_window(t);
    w.anchors.check_incident = true;
    auto c = verify_thickness(w.emb, 1, 0, w.anchors);
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.simple);
    EXPECT_GE(t.eps_estimate * t.scale(), 1);
}

TEST(Realize, KolmogorovBarzdinPipeline) {
    const Graph g = complete_graph(8);
    auto kb = kb_wiring(g, kb_params(g, 3, 0));
    auto rep = verify_coarse_wiring(kb.wiring);
    auto r = realize_grid_wiring(kb.wiring, rep.k, max_degree(g), 1);
    std::string why;
    EXPECT_TRUE(is_injective_wiring(r.injective, &why)) << why;
    auto c = verify_thickness(r.embedding, 1, 0);
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.simple);
    auto d = embedding_diameter(r.embedding);
    EXPECT_LE(d.upper, r.c_diam * std::max<double>(rep.diameter, 1));
    auto v = estimate_volume(r.embedding, 2 * std::ldexp(double(r.tmpl.s0), int(r.tmpl.shift)));
    EXPECT_GT(v.volume, 0);
}

TEST(Realize, RejectsUnsupportedHosts) {
    Wiring flat{complete_graph(2), grid(2, 2), {0, 1}, {{0, 1}}};
    EXPECT_THROW(realize_grid_wiring(flat, 1, 1, 0), ValidationError);
    Wiring lamp = identity_wiring(complete_graph(2));
    EXPECT_THROW(realize_grid_wiring(lamp, 1, 1, 0), ValidationError);
    Wiring w{complete_graph(2), grid(3, 2), {0, 1}, {{0, 1}}};
    auto t = build_grid_template(3, 5, 0);
    EXPECT_THROW(realize_grid_wiring(w, 1, 1, t), ValidationError);
}
