#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "../graph.hpp"
#include "space.hpp"

namespace cwire::geo {

using Polyline = std::vector<Point>;

/// Vertex points and one coordinate polyline per edge of graph. edge_paths[i]
/// belongs to graph.edges()[i] = (u, v) and runs from vertex_points[u] to
/// vertex_points[v]. Images of segments are straight in coordinates.
struct ThickEmbedding {
    Graph graph;
    Space space;
    std::vector<Point> vertex_points;
    std::vector<Polyline> edge_paths;
};

/// Endpoints match, points valid, no zero-length segments.
inline void validate_embedding(const ThickEmbedding& e) {
    const auto n = e.graph.vertex_count();
    if (e.vertex_points.size() != n)
        throw ValidationError("embedding has " + std::to_string(e.vertex_points.size()) + " vertex points for " +
                              std::to_string(n) + " vertices");
    if (e.edge_paths.size() != e.graph.edge_count())
        throw ValidationError("embedding has " + std::to_string(e.edge_paths.size()) + " paths for " +
                              std::to_string(e.graph.edge_count()) + " edges");
    for (const auto& p : e.vertex_points) validate_point(e.space, p);
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
        const auto& path = e.edge_paths[i];
        auto [u, v] = e.graph.edges()[i];
        const std::string name = "edge " + std::to_string(u) + "-" + std::to_string(v);
        if (path.size() < 2) throw ValidationError(name + ": path needs at least two points");
        if (path.front() != e.vertex_points[u] || path.back() != e.vertex_points[v])
            throw ValidationError(name + ": path endpoints differ from the vertex points");
        for (std::size_t s = 0; s < path.size(); ++s) {
            validate_point(e.space, path[s]);
            if (s > 0 && path[s] == path[s - 1]) throw ValidationError(name + ": zero-length segment");
        }
    }
}

/// Apply a point map to every vertex point and polyline vertex. Segments
/// along which more than one coordinate changes are first split into
/// `pieces` parts, since the map may bend them.
inline ThickEmbedding push_forward(const ThickEmbedding& e, const Space& target,
                                   const std::function<Point(const Point&)>& f, std::size_t pieces = 32) {
    ThickEmbedding out{e.graph, target, {}, {}};
    for (const auto& p : e.vertex_points) out.vertex_points.push_back(f(p));
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
        const auto& path = e.edge_paths[i];
        Polyline q{out.vertex_points[e.graph.edges()[i].first]};
        for (std::size_t s = 1; s < path.size(); ++s) {
            const Point &a = path[s - 1], &b = path[s];
            std::size_t moving = 0;
            for (std::size_t c = 0; c < a.size(); ++c) moving += a[c] != b[c];
            const std::size_t k = moving > 1 ? pieces : 1;
            for (std::size_t j = 1; j < k; ++j) {
                Point m(a.size());
                const double t = static_cast<double>(j) / static_cast<double>(k);
                for (std::size_t c = 0; c < a.size(); ++c) m[c] = a[c] + t * (b[c] - a[c]);
                q.push_back(f(m));
            }
            q.push_back(s + 1 == path.size() ? out.vertex_points[e.graph.edges()[i].second] : f(b));
        }
        out.edge_paths.push_back(std::move(q));
    }
    validate_embedding(out);
    return out;
}

/// Multiply every coordinate by factor (Euclidean spaces only).
inline ThickEmbedding scale_embedding(const ThickEmbedding& e, double factor) {
    if (!e.space.is_euclidean()) throw ValidationError("scaling needs a Euclidean space");
    if (!(factor > 0)) throw ValidationError("scale factor must be positive");
    return push_forward(
        e, e.space,
        [factor](const Point& p) {
            Point q = p;
            for (auto& x : q) x *= factor;
            return q;
        },
        1);
}

/// K_N in [0,N-1]^2 x [0,1] under L∞: v_k -> (k,k,0) and, for k < l,
/// (k,k,0) -> (l,k,0) -> (l,k,1) -> (l,l,1) -> (l,l,0).
inline ThickEmbedding complete_slab_embedding(std::size_t N) {
    if (N < 1) throw ValidationError("slab embedding needs N >= 1");
    ThickEmbedding e{complete_graph(N), Space::linf(3), {}, {}};
    for (std::size_t k = 0; k < N; ++k) {
        const double x = static_cast<double>(k);
        e.vertex_points.push_back({x, x, 0});
    }
    for (auto [k, l] : e.graph.edges()) {
        const double a = k, b = l;
        e.edge_paths.push_back({{a, a, 0}, {b, a, 0}, {b, a, 1}, {b, b, 1}, {b, b, 0}});
    }
    return e;
}

namespace detail {

inline void require_slab(const ThickEmbedding& e) {
    if (e.space.arity() != 3 || !e.space.is_euclidean()) throw ValidationError("expected a slab embedding in R^3");
    const double top = std::max<double>(0, static_cast<double>(e.graph.vertex_count()) - 1);
    auto check = [&](const Point& p) {
        if (p[0] < 0 || p[0] > top || p[1] < 0 || p[1] > top || p[2] < 0 || p[2] > 1)
            throw ValidationError("point outside the slab [0," + std::to_string(top) + "]^2 x [0,1]");
    };
    for (const auto& p : e.vertex_points) check(p);
    for (const auto& path : e.edge_paths)
        for (const auto& p : path) check(p);
}

}  // namespace detail

/// (x, y, a) -> (x, y; h0·e^{-a}) into the upper half-space model of H^3.
inline ThickEmbedding slab_to_h3(const ThickEmbedding& e) {
    detail::require_slab(e);
    return push_forward(e, Space::halfspace(3),
                        [](const Point& p) { return Point{p[0], p[1], h0 * std::exp(-p[2])}; });
}

/// (x, y, z) -> (x; y, h0·e^{-z}) into R x H^2 with the L2 product metric.
inline ThickEmbedding slab_to_h2xr(const ThickEmbedding& e) {
    detail::require_slab(e);
    return push_forward(e, Space::product_l2({Space::euclidean(1), Space::halfspace(2)}),
                        [](const Point& p) { return Point{p[0], p[1], h0 * std::exp(-p[2])}; });
}

/// Horospherical map R^r x R^{q-1} -> R^r x H^q, (x, y) -> (x, (y; h0)).
inline Point horoproduct_point(const Point& p, std::size_t q, std::size_t r) {
    if (p.size() != q + r - 1) throw ValidationError("horoproduct point needs q + r - 1 coordinates");
    Point out(p);
    out.push_back(h0);
    return out;
}

inline Space horoproduct_space(std::size_t q, std::size_t r) {
    if (r == 0) return Space::halfspace(q);
    return Space::product_l2({Space::euclidean(r), Space::halfspace(q)});
}

/// Push a Euclidean embedding into R^r x H^q. The input should be
/// √2-thick; see scale_embedding.
inline ThickEmbedding horoproduct_embed(const ThickEmbedding& e, std::size_t q, std::size_t r) {
    if (q < 2) throw ValidationError("horoproduct needs q >= 2");
    if (e.space != Space::euclidean(q + r - 1))
        throw ValidationError("horoproduct of " + e.space.describe() + " needs E" + std::to_string(q + r - 1));
    return push_forward(e, horoproduct_space(q, r), [=](const Point& p) { return horoproduct_point(p, q, r); }, 1);
}

/// K_N in H^2 x [0,1] with the max product metric: v_i -> (i, h0·e^{-i}; 0)
/// and, for i < j, the path along the horocycle at height h0·e^{-i}, up to
/// level 1, down the vertical geodesic to height h0·e^{-j}, and back to level 0.
inline ThickEmbedding h2slab_complete_wiring(std::size_t N) {
    if (N < 1) throw ValidationError("H2 x [0,1] embedding needs N >= 1");
    ThickEmbedding e{complete_graph(N), Space::product_max({Space::halfspace(2), Space::segment(0, 1)}), {}, {}};
    auto height = [](std::size_t i) { return h0 * std::exp(-static_cast<double>(i)); };
    for (std::size_t i = 0; i < N; ++i) e.vertex_points.push_back({static_cast<double>(i), height(i), 0});
    for (auto [i, j] : e.graph.edges()) {
        const double x = i, y = j, hi = height(i), hj = height(j);
        e.edge_paths.push_back({{x, hi, 0}, {y, hi, 0}, {y, hi, 1}, {y, hj, 1}, {y, hj, 0}});
    }
    return e;
}

// Closed-form bounds quoted for the constructions above.

inline double h3_diameter_bound(std::size_t N) { return 2 * std::log(static_cast<double>(N)) + 9; }

/// π(sinh 2(λ+1) − 2(λ+1)) with λ = cosh⁻¹(1 + e² cosh(1) / 2).
inline double h3_volume_constant() {
    const double lambda = std::acosh(1 + std::exp(2.0) * std::cosh(1.0) / 2);
    const double r = 2 * (lambda + 1);
    return std::numbers::pi * (std::sinh(r) - r);
}

inline double h2slab_diameter_bound(std::size_t N) {
    const double n = static_cast<double>(N);
    return n + 2 * std::log(n);
}

inline double h2slab_volume_bound(std::size_t N) {
    const double n = static_cast<double>(N);
    return std::exp(1.0) * std::numbers::pi * n * n * std::exp(n);
}

}  // namespace cwire::geo
