#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "../wiring.hpp"
#include "certify.hpp"

// Passing between thick embeddings and coarse wirings: snapping an embedding
// onto a net graph, and realizing a grid wiring as a thick polyline embedding.

namespace cwire::geo {

// ---------------------------------------------------------------------------
// Embedding -> coarse wiring
// ---------------------------------------------------------------------------

/// A host graph together with a point for every vertex code.
struct NetHost {
    Host host = Host::grid(1, 1);
    std::vector<Point> positions;
};

/// Unit lattice on the integer box lo..hi, as an explicit graph with
/// axis-neighbour edges. Vertex codes are lexicographic in the coordinates.
inline NetHost lattice_net(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
    if (lo.empty() || lo.size() != hi.size()) throw ValidationError("lattice box needs matching nonempty corners");
    const std::size_t m = lo.size();
    std::vector<std::size_t> side(m);
    std::size_t count = 1;
    for (std::size_t c = 0; c < m; ++c) {
        if (hi[c] < lo[c]) throw ValidationError("lattice box has hi < lo");
        side[c] = static_cast<std::size_t>(hi[c] - lo[c] + 1);
        count *= side[c];
        if (count > (1u << 22)) throw CapacityError("lattice net above 2^22 points");
    }
    NetHost net;
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < count; ++v) {
        Point p(m);
        std::size_t x = v, stride = 1;
        for (std::size_t c = m; c-- > 0;) {
            p[c] = static_cast<double>(lo[c] + static_cast<std::int64_t>(x % side[c]));
            if (x % side[c] + 1 < side[c]) edges.emplace_back(v, v + stride);
            x /= side[c];
            stride *= side[c];
        }
        net.positions.push_back(std::move(p));
    }
    net.host = Host::from_graph(Graph(count, std::move(edges)));
    return net;
}

struct CoarsenResult {
    Wiring wiring;
    WiringReport report;
    std::vector<std::size_t> chain_lengths;  ///< chain points per edge, endpoints included
    std::int64_t max_step = 0;               ///< largest host distance between consecutive snaps
};

struct CoarsenOptions {
    double snap_radius = -1;  ///< largest allowed snap distance; negative means T
};

/// Snap an embedding onto a net. Each path is cut into a greedy chain of
/// points with consecutive metric gaps ≤ 2T; the snaps of consecutive chain
/// points are joined by least host shortest paths.
inline CoarsenResult coarsen_embedding(const ThickEmbedding& e, const NetHost& net, double T,
                                       const CoarsenOptions& opt = {}) {
    validate_embedding(e);
    if (!(T > 0)) throw ValidationError("coarsening scale T must be positive");
    if (net.positions.size() != net.host.vertex_count())
        throw ValidationError("net needs one position per host vertex");
    for (const auto& p : net.positions) validate_point(e.space, p);
    const double radius = opt.snap_radius < 0 ? T : opt.snap_radius;
    const std::size_t m = e.space.arity();

    auto snap = [&](const double* p) {
        VertexId best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (VertexId v = 0; v < net.positions.size(); ++v) {
            const double d = detail::distance_at(e.space, p, net.positions[v].data());
            if (d < bd) bd = d, best = v;  // strict: the least code wins ties
        }
        if (bd > radius) {
            std::string at;
            for (std::size_t c = 0; c < m; ++c) at += (c ? "," : "") + std::to_string(p[c]);
            throw ValidationError("net does not cover (" + at + ") within snap radius " + std::to_string(radius));
        }
        return best;
    };

    CoarsenResult r;
    Wiring& w = r.wiring;
    w.domain = e.graph;
    w.host = net.host;
    for (const auto& p : e.vertex_points) w.vertex_map.push_back(snap(p.data()));

    Point q(m);
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
        const auto& path = e.edge_paths[i];
        // Dense samples along the path, then the greedy chain.
        std::vector<Point> samples{path.front()};
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
            const double L = speed_bound(e.space, path[s].data(), path[s + 1].data());
            const auto steps = static_cast<std::size_t>(std::ceil(L * 8 / T)) + 1;
            for (std::size_t k = 1; k <= steps; ++k) {
                detail::lerp(m, path[s].data(), path[s + 1].data(), static_cast<double>(k) / steps, q.data());
                samples.push_back(q);
            }
        }
        samples.back() = path.back();
        std::vector<const Point*> chain{&samples.front()};
        for (std::size_t k = 1; k < samples.size(); ++k)
            if (detail::distance_at(e.space, chain.back()->data(), samples[k].data()) > 2 * T) chain.push_back(&samples[k - 1]);
        if (chain.back() != &samples.back()) chain.push_back(&samples.back());
        r.chain_lengths.push_back(chain.size());

        auto [u, v] = e.graph.edges()[i];
        Walk walk{w.vertex_map[u]};
        for (std::size_t k = 1; k < chain.size(); ++k) {
            const VertexId to = k + 1 == chain.size() ? w.vertex_map[v] : snap(chain[k]->data());
            if (to == walk.back()) continue;
            r.max_step = std::max(r.max_step, net.host.distance(walk.back(), to));
            const Walk hop = host_shortest_path(net.host, walk.back(), to);
            walk.insert(walk.end(), hop.begin() + 1, hop.end());
        }
        w.walks.push_back(std::move(walk));
    }
    r.report = verify_coarse_wiring(w);
    return r;
}

/// Instance constants for snapping onto a net: quasi-isometry constant λ
/// between net graph distance and metric distance, net density counts
/// c_r / C_r (fewest / most net points in an r-ball around a net point), and
/// the resulting bound on the multiplicity k of a coarsened T-thick embedding
/// of a graph with maximal degree d.
struct CoarseningBound {
    double lambda = 1;
    double L = 0;
    double c_small = 0;  ///< c_{T/2}
    double C_vertex = 0; ///< C_{3λ+T/2}
    double C_edge = 0;   ///< C_{λ(L+2)+T/2}
    double k_bound = 0;
};

inline CoarseningBound coarsening_instance_bound(const NetHost& net, const Space& space, double T, std::size_t d) {
    const std::size_t n = net.positions.size();
    if (n == 0) throw ValidationError("empty net");
    if (n > 4096) throw CapacityError("net too large for pairwise constants");
    CoarseningBound b;
    std::vector<std::vector<double>> dm(n, std::vector<double>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) dm[x][y] = detail::distance_at(space, net.positions[x].data(), net.positions[y].data());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const std::int64_t dy = net.host.distance(x, y);
            if (dy < 0) throw StructuralError("net graph is disconnected");
            const double dY = static_cast<double>(dy), dM = dm[x][y];
            // d_M ≤ λ(d_Y + 1) and d_Y ≤ λ d_M + λ².
            b.lambda = std::max({b.lambda, dM / (dY + 1), (-dM + std::sqrt(dM * dM + 4 * dY)) / 2});
        }
    b.L = 1 + 2 * b.lambda * T + b.lambda * b.lambda;
    auto count = [&](double r, bool most) {
        std::size_t best = most ? 0 : n;
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t c = 0;
            for (std::size_t y = 0; y < n; ++y) c += dm[x][y] <= r;
            best = most ? std::max(best, c) : std::min(best, c);
        }
        return static_cast<double>(best);
    };
    b.c_small = count(T / 2, false);
    b.C_vertex = count(3 * b.lambda + T / 2, true);
    b.C_edge = count(b.lambda * (b.L + 2) + T / 2, true);
    b.k_bound = std::max(b.C_vertex / b.c_small, 2 * static_cast<double>(d) * b.C_edge / b.c_small);
    return b;
}

// ---------------------------------------------------------------------------
// Grid wiring -> thick embedding in R^n
// ---------------------------------------------------------------------------

/// Periodic straight-line model of the thickening K_T(Z^n). Layer i of cell g
/// sits at scale·(s0·g + o_i); the edge of a given type anchored at cell g is
/// the two-segment polyline through scale·(floor((A+B)/2) + p_type) where A, B
/// are its endpoints at base scale. All base coordinates are integers and the
/// scale is a power of two, so every coordinate is an exact double.
struct GridTemplate {
    std::uint32_t n = 0, T = 0;
    std::int64_t s0 = std::int64_t{1} << 20;
    std::uint32_t shift = 0;            ///< scale = 2^shift
    std::vector<std::int64_t> offsets;  ///< T x n
    /// Edge type key = axis·T² + i·T + j; axis n marks a fiber edge i < j in
    /// one cell, axis a < n joins layer i of g to layer j of g + e_a.
    std::vector<std::int32_t> type_index;
    std::vector<std::uint32_t> types;   ///< keys of realized types
    std::vector<std::int64_t> perturb;  ///< per realized type, n entries
    double eps_estimate = 0;  ///< minimum feature distance at base scale (floating point)
    double certified_eps = 0; ///< exact lower bound at the final scale
    std::size_t attempts = 0;

    double scale() const { return std::ldexp(1.0, static_cast<int>(shift)); }
    std::size_t key(std::uint32_t axis, std::uint32_t i, std::uint32_t j) const {
        return (std::size_t{axis} * T + i) * T + j;
    }
    bool has(std::size_t k) const { return k < type_index.size() && type_index[k] >= 0; }

    Point vertex_point(const std::vector<std::int64_t>& g, std::uint32_t layer) const {
        Point p(n);
        for (std::uint32_t c = 0; c < n; ++c)
            p[c] = std::ldexp(static_cast<double>(s0 * g[c] + offsets[layer * n + c]), static_cast<int>(shift));
        return p;
    }
    Point midpoint(std::size_t k, const std::vector<std::int64_t>& g) const {
        const std::uint32_t axis = static_cast<std::uint32_t>(k / (std::size_t{T} * T));
        const std::uint32_t i = static_cast<std::uint32_t>(k / T % T), j = static_cast<std::uint32_t>(k % T);
        const std::int64_t* P = perturb.data() + static_cast<std::size_t>(type_index[k]) * n;
        Point p(n);
        for (std::uint32_t c = 0; c < n; ++c) {
            const std::int64_t a = s0 * g[c] + offsets[i * n + c];
            const std::int64_t b = s0 * (g[c] + (axis == c)) + offsets[j * n + c];
            const std::int64_t sum = a + b;
            const std::int64_t mid = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
            p[c] = std::ldexp(static_cast<double>(mid + P[c]), static_cast<int>(shift));
        }
        return p;
    }
};

struct TemplateOptions {
    double min_relative_eps = 1e-12;  ///< resample when eps_estimate / s0 is smaller
    std::size_t max_attempts = 8;
    double target = 1;                ///< thickness after scaling
};

namespace detail {

/// Cells [-2, 3]^n carry vertices; edges are anchored in [-2, 2]^n. Features
/// anchored at cell 0 are marked. Any feature anchored at g lies within
/// 1.25·scale·s0 of scale·s0·g in every coordinate, so features whose anchors
/// differ by ≥ 3 in some coordinate are ≥ 0.5·scale·s0 apart; the window
/// therefore holds every pair that can come closer.
struct TemplateWindow {
    ThickEmbedding emb;
    ThicknessOptions anchors;
};

inline TemplateWindow template_window(const GridTemplate& t) {
    const std::uint32_t n = t.n, T = t.T;
    const std::int64_t lo = -2, side = 6;
    std::size_t cells = 1;
    for (std::uint32_t c = 0; c < n; ++c) cells *= side;
    auto cell_coords = [&](std::size_t id) {
        std::vector<std::int64_t> g(n);
        for (std::uint32_t c = n; c-- > 0;) {
            g[c] = lo + static_cast<std::int64_t>(id % side);
            id /= side;
        }
        return g;
    };
    auto cell_id = [&](const std::vector<std::int64_t>& g) {
        std::size_t id = 0;
        for (std::uint32_t c = 0; c < n; ++c) id = id * side + static_cast<std::size_t>(g[c] - lo);
        return id;
    };
    const std::size_t origin = cell_id(std::vector<std::int64_t>(n, 0));

    std::vector<Edge> edges;
    for (std::size_t id = 0; id < cells; ++id) {
        const auto g = cell_coords(id);
        if (std::any_of(g.begin(), g.end(), [](std::int64_t x) { return x > 2; })) continue;
        for (std::uint32_t k : t.types) {
            const std::uint32_t axis = k / (T * T), i = k / T % T, j = k % T;
            auto h = g;
            if (axis < n) ++h[axis];
            edges.emplace_back(static_cast<Vertex>(id * T + i), static_cast<Vertex>(cell_id(h) * T + j));
        }
    }
    TemplateWindow w;
    w.emb.graph = Graph(cells * T, std::move(edges));
    w.emb.space = Space::euclidean(n);
    for (std::size_t v = 0; v < cells * T; ++v)
        w.emb.vertex_points.push_back(t.vertex_point(cell_coords(v / T), static_cast<std::uint32_t>(v % T)));
    w.anchors.anchor_vertices.assign(cells * T, 0);
    for (std::uint32_t i = 0; i < T; ++i) w.anchors.anchor_vertices[origin * T + i] = 1;
    for (auto [u, v] : w.emb.graph.edges()) {
        const std::size_t cu = u / T, cv = v / T;
        const std::uint32_t iu = static_cast<std::uint32_t>(u % T), iv = static_cast<std::uint32_t>(v % T);
        std::size_t k;
        std::size_t anchor = cu;
        if (cu == cv) {
            k = t.key(n, iu, iv);
        } else {
            const auto gu = cell_coords(cu), gv = cell_coords(cv);
            std::uint32_t axis = 0;
            while (gu[axis] == gv[axis]) ++axis;
            k = t.key(axis, iu, iv);  // u < v, so u is in the lower cell
        }
        const auto g = cell_coords(anchor);
        w.emb.edge_paths.push_back({w.emb.vertex_points[u], t.midpoint(k, g), w.emb.vertex_points[v]});
        w.anchors.anchor_edges.push_back(anchor == origin);
    }
    return w;
}

/// Smallest distance over thickness pairs with an anchored feature, in
/// floating point.
inline double window_min_distance(const TemplateWindow& w) {
    const auto t = segments_of(w.emb);
    const Bvh bvh(t);
    double best = std::numeric_limits<double>::infinity();
    double radius = std::numeric_limits<double>::infinity();
    bool pruned = false;
    auto anchored = [&](std::size_t seg) {
        const std::size_t f = t.owner[seg];
        return f < t.n ? w.anchors.anchor_vertices[f] != 0 : w.anchors.anchor_edges[f - t.n] != 0;
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!anchored(i)) continue;
        bvh.query(w.emb.space, t.Lo(i), t.Hi(i), radius, pruned, [&](std::uint32_t j) {
            if (j == i) return;
            if (relate(w.emb, t, i, j, false).rel != Relation::thickness) return;
            const double d = segment_distance_l2(t.m, t.A(i), t.B(i), t.A(j), t.B(j));
            if (d < best) best = radius = d;
        });
    }
    return best;
}

}  // namespace detail

/// Sample and certify a periodic template for the thickening K_T(Z^n),
/// realizing the given edge types (all types when empty). Offsets are
/// uniform in the ball of radius s0/4, midpoint perturbations uniform in the
/// ball of radius s0/8. The configuration is then scaled by a power of two
/// until the exact window check certifies thickness ≥ target.
inline GridTemplate build_grid_template(std::uint32_t n, std::uint32_t T, std::uint64_t seed,
                                        std::vector<std::uint32_t> types = {}, const TemplateOptions& opt = {}) {
    if (n < 1 || n > kMaxArity) throw ValidationError("template dimension out of range");
    if (T < 1) throw ValidationError("template needs T >= 1");
    GridTemplate t;
    t.n = n;
    t.T = T;
    t.type_index.assign(std::size_t{n + 1} * T * T, -1);
    if (types.empty()) {
        for (std::uint32_t a = 0; a <= n; ++a)
            for (std::uint32_t i = 0; i < T; ++i)
                for (std::uint32_t j = 0; j < T; ++j)
                    if (a < n || i < j) types.push_back(static_cast<std::uint32_t>(t.key(a, i, j)));
    }
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    for (std::uint32_t k : types) {
        if (k >= t.type_index.size() || (k / (T * T) == n && k / T % T >= k % T))
            throw ValidationError("invalid template edge type " + std::to_string(k));
        t.type_index[k] = static_cast<std::int32_t>(t.types.size());
        t.types.push_back(k);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto ball = [&](double r) {
        std::vector<std::int64_t> v(n);
        for (;;) {
            double s = 0;
            std::vector<double> x(n);
            for (auto& c : x) c = unit(rng), s += c * c;
            if (s > 1) continue;
            for (std::uint32_t c = 0; c < n; ++c) v[c] = std::llround(x[c] * r);
            return v;
        }
    };
    const double s0 = static_cast<double>(t.s0);
    for (t.attempts = 1; t.attempts <= opt.max_attempts; ++t.attempts) {
        t.offsets.clear();
        t.perturb.clear();
        t.shift = 0;
        for (std::uint32_t i = 0; i < T; ++i) {
            const auto o = ball(s0 / 4);
            t.offsets.insert(t.offsets.end(), o.begin(), o.end());
        }
        for (std::size_t k = 0; k < t.types.size(); ++k) {
            const auto p = ball(s0 / 8);
            t.perturb.insert(t.perturb.end(), p.begin(), p.end());
        }
        auto window = detail::template_window(t);
        try {
            validate_embedding(window.emb);
        } catch (const ValidationError&) {
            continue;  // coincident points
        }
        t.eps_estimate = detail::window_min_distance(window);
        if (!(t.eps_estimate >= opt.min_relative_eps * s0)) continue;
        if (!std::isfinite(t.eps_estimate)) {
            t.certified_eps = std::numeric_limits<double>::infinity();
            return t;
        }
        t.shift = static_cast<std::uint32_t>(std::max(0.0, std::ceil(std::log2(1.01 * opt.target / t.eps_estimate))));
        for (int tries = 0; tries < 3; ++tries, ++t.shift) {
            window = detail::template_window(t);
            window.anchors.check_incident = true;
            const auto cert = verify_thickness(window.emb, opt.target, 0, window.anchors);
            if (!cert.simple) break;
            if (cert.passed()) {
                t.certified_eps = cert.certified_lower_bound;
                return t;
            }
        }
    }
    throw BudgetExhausted("grid template: no certified sample after " + std::to_string(opt.max_attempts) +
                          " attempts");
}

struct RealizeResult {
    ThickEmbedding embedding;
    Wiring injective;      ///< the wiring into K_T(grid) that was realized
    GridTemplate tmpl;
    double eps = 0;        ///< thickness guaranteed by the template certificate
    double c_diam = 0;     ///< diam(embedding) ≤ c_diam · max(diam(w), 1)
    double c_vol = 0;      ///< vol(embedding) ≤ c_vol · vol(w)
};

namespace detail {

inline std::size_t grid_step_type(const GridTemplate& t, const Host& thick, VertexId x, VertexId y,
                                  std::vector<std::int64_t>& anchor) {
    const Host& grid = thick.base();
    auto lx = thick.layered(x), ly = thick.layered(y);
    if (lx.base == ly.base) {
        anchor = grid.coords(lx.base);
        return t.key(t.n, std::min(lx.layer, ly.layer) - 1, std::max(lx.layer, ly.layer) - 1);
    }
    auto gx = grid.coords(lx.base), gy = grid.coords(ly.base);
    std::uint32_t axis = 0;
    while (gx[axis] == gy[axis]) ++axis;
    if (gx[axis] > gy[axis]) std::swap(lx, ly), std::swap(gx, gy);
    anchor = gx;
    return t.key(axis, lx.layer - 1, ly.layer - 1);
}

inline Wiring injective_grid_wiring(const Wiring& w, std::size_t k, std::size_t d) {
    if (w.host.kind() != HostKind::grid) throw ValidationError("realization needs a grid host");
    if (w.host.dim() < 3) throw ValidationError("realization needs grid dimension n >= 3");
    return make_injective(w, d, k);
}

}  // namespace detail

/// Realize a coarse k-wiring into grid(n, r) as a thick embedding in E^n
/// using a certified template for K_T(Z^n), T = k(d+1).
inline RealizeResult realize_grid_wiring(const Wiring& w, std::size_t k, std::size_t d, const GridTemplate& tmpl) {
    RealizeResult r;
    r.injective = detail::injective_grid_wiring(w, k, d);
    const Host& thick = r.injective.host;
    if (tmpl.n != w.host.dim() || tmpl.T != thick.t())
        throw ValidationError("template is for n = " + std::to_string(tmpl.n) + ", T = " + std::to_string(tmpl.T) +
                              "; wiring needs n = " + std::to_string(w.host.dim()) +
                              ", T = " + std::to_string(thick.t()));
    r.tmpl = tmpl;
    r.eps = tmpl.certified_eps;
    auto point = [&](VertexId x) {
        const auto l = thick.layered(x);
        return tmpl.vertex_point(thick.base().coords(l.base), l.layer - 1);
    };
    ThickEmbedding& e = r.embedding;
    e.graph = w.domain;
    e.space = Space::euclidean(tmpl.n);
    for (VertexId x : r.injective.vertex_map) e.vertex_points.push_back(point(x));
    std::vector<std::int64_t> g;
    for (const auto& walk : r.injective.walks) {
        Polyline path{point(walk.front())};
        for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
            const std::size_t key = detail::grid_step_type(tmpl, thick, walk[s], walk[s + 1], g);
            if (!tmpl.has(key)) throw ValidationError("template lacks an edge type used by the wiring");
            path.push_back(tmpl.midpoint(key, g));
            path.push_back(point(walk[s + 1]));
        }
        e.edge_paths.push_back(std::move(path));
    }

    // A priori constants. Every feature anchored at g lies within 1.25·s of
    // s·g (s = cell size) in each coordinate, and each template edge is a
    // polyline of length at most ℓ.
    const auto rep = verify_coarse_wiring(w);
    const double s = std::ldexp(static_cast<double>(tmpl.s0), static_cast<int>(tmpl.shift));
    const double sqn = std::sqrt(static_cast<double>(tmpl.n));
    const double diam_w = static_cast<double>(rep.diameter);
    r.c_diam = s * (diam_w + 2.5 * sqn) / std::max(diam_w, 1.0);
    const double ell = 2 * (1.25 + 1.25) * s * sqn;
    const double tube = std::numbers::pi * ell + 4.0 / 3.0 * std::numbers::pi;
    r.c_vol = (1 + static_cast<double>(d) / 2) * tmpl.T * tube;
    return r;
}

/// As above, sampling a template for exactly the edge types the wiring uses.
inline RealizeResult realize_grid_wiring(const Wiring& w, std::size_t k, std::size_t d, std::uint64_t seed,
                                         const TemplateOptions& opt = {}) {
    const Wiring inj = detail::injective_grid_wiring(w, k, d);
    const Host& thick = inj.host;
    GridTemplate probe;
    probe.n = w.host.dim();
    probe.T = thick.t();
    std::vector<std::uint32_t> types;
    std::vector<std::int64_t> g;
    for (const auto& walk : inj.walks)
        for (std::size_t s = 0; s + 1 < walk.size(); ++s)
            types.push_back(static_cast<std::uint32_t>(detail::grid_step_type(probe, thick, walk[s], walk[s + 1], g)));
    if (types.empty()) types.push_back(static_cast<std::uint32_t>(probe.key(0, 0, 0)));
    return realize_grid_wiring(w, k, d, build_grid_template(probe.n, probe.T, seed, std::move(types), opt));
}

}  // namespace cwire::geo
