#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "host.hpp"

namespace cwire {

using Walk = std::vector<VertexId>;

/// Vertex map plus one walk per domain edge. walks[i] belongs to
/// domain.edges()[i] = (u, v) with u < v and runs from vertex_map[u] to
/// vertex_map[v].
struct Wiring {
    Graph domain;
    Host host = Host::grid(1, 1);
    std::vector<VertexId> vertex_map;
    std::vector<Walk> walks;
};

struct WiringReport {
    std::size_t max_vertex_multiplicity = 0;
    std::size_t max_edge_multiplicity = 0;
    std::size_t k = 0;
    std::size_t volume = 0;
    std::int64_t diameter = 0;
    bool disconnected = false;  ///< some image pair has no host path
    std::vector<VertexId> image_vertices;  ///< sorted

    friend bool operator==(const WiringReport&, const WiringReport&) = default;
};

inline std::string edge_key(Edge e) { return std::to_string(e.first) + "-" + std::to_string(e.second); }

/// Walk endpoints, adjacency of consecutive entries, no stationary steps.
/// Walks given in reverse orientation are flipped in place.
inline void normalize_and_check(Wiring& w) {
    const auto& edges = w.domain.edges();
    if (w.vertex_map.size() != w.domain.vertex_count())
        throw StructuralError("vertex map has " + std::to_string(w.vertex_map.size()) + " entries for " +
                              std::to_string(w.domain.vertex_count()) + " domain vertices");
    if (w.walks.size() != edges.size())
        throw StructuralError("expected one walk per domain edge");
    for (VertexId x : w.vertex_map) w.host.require(x);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto& walk = w.walks[i];
        auto [u, v] = edges[i];
        if (walk.empty()) throw StructuralError("empty walk for edge " + edge_key(edges[i]));
        VertexId a = w.vertex_map[u], b = w.vertex_map[v];
        if (walk.front() != a || walk.back() != b) {
            if (walk.front() == b && walk.back() == a)
                std::reverse(walk.begin(), walk.end());
            else
                throw StructuralError("walk of edge " + edge_key(edges[i]) + " does not join its endpoint images");
        }
        for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
            if (walk[s] == walk[s + 1])
                throw StructuralError("stationary step in walk of edge " + edge_key(edges[i]));
            if (!w.host.adjacent(walk[s], walk[s + 1]))
                throw StructuralError("walk of edge " + edge_key(edges[i]) + " jumps between non-adjacent " +
                                      w.host.label(walk[s]) + " and " + w.host.label(walk[s + 1]));
        }
    }
}

inline std::vector<VertexId> image_vertices(const Wiring& w) {
    std::vector<VertexId> img(w.vertex_map);
    for (const auto& walk : w.walks) img.insert(img.end(), walk.begin(), walk.end());
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    return img;
}

/// Image graph: image vertices with exactly the host edges traversed by walks.
inline InducedSubgraph image_subgraph(const Wiring& w) {
    InducedSubgraph out;
    out.labels = image_vertices(w);
    std::vector<Edge> edges;
    for (const auto& walk : w.walks)
        for (std::size_t s = 0; s + 1 < walk.size(); ++s)
            edges.emplace_back(static_cast<Vertex>(out.index_of(walk[s])), static_cast<Vertex>(out.index_of(walk[s + 1])));
    out.graph = Graph(out.labels.size(), std::move(edges));
    return out;
}

namespace detail {

inline DiameterResult grid_set_diameter(const Host& h, const std::vector<VertexId>& pts) {
    const std::uint32_t n = h.dim();
    DiameterResult r;
    for (std::uint32_t signs = 0; signs < (1u << n); ++signs) {
        std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
        for (VertexId p : pts) {
            std::int64_t s = 0;
            VertexId x = p;
            for (std::uint32_t i = 0; i < n; ++i) {
                auto c = static_cast<std::int64_t>(x % h.side());
                x /= h.side();
                s += (signs >> i & 1) ? c : -c;
            }
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        r.value = std::max(r.value, hi - lo);
    }
    return r;
}

inline DiameterResult pairwise_set_diameter(const Host& h, const std::vector<VertexId>& pts) {
    DiameterResult r;
    const std::int64_t cap = h.diameter_bound();
    // Double sweep usually finds the extreme pair quickly.
    VertexId a = pts.front();
    for (int sweep = 0; sweep < 3 && r.value < cap; ++sweep) {
        VertexId far = a;
        for (VertexId p : pts) {
            auto d = h.distance(a, p);
            if (d > r.value) {
                r.value = d;
                far = p;
            }
        }
        a = far;
    }
    for (std::size_t i = 0; i < pts.size() && r.value < cap; ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) r.value = std::max(r.value, h.distance(pts[i], pts[j]));
    return r;
}

inline DiameterResult explicit_set_diameter(const Host& h, const std::vector<VertexId>& pts) {
    DiameterResult r;
    for (VertexId p : pts) {
        auto dist = bfs_distances(h.graph(), static_cast<Vertex>(p));
        for (VertexId q : pts) {
            if (dist[q] == kUnreachable)
                r.disconnected = true;
            else
                r.value = std::max(r.value, dist[q]);
        }
    }
    return r;
}

}  // namespace detail

/// Largest host distance between two vertices of `pts`.
inline DiameterResult set_diameter(const Host& h, std::vector<VertexId> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) return {};
    switch (h.kind()) {
        case HostKind::grid:
        case HostKind::z2box: return detail::grid_set_diameter(h, pts);
        case HostKind::lamplighter: return detail::pairwise_set_diameter(h, pts);
        case HostKind::explicit_graph: return detail::explicit_set_diameter(h, pts);
        case HostKind::thickened: {
            std::vector<VertexId> bases;
            bool fiber_pair = false;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                VertexId b = pts[i] / h.t();
                if (!bases.empty() && bases.back() == b)
                    fiber_pair = true;
                else
                    bases.push_back(b);
            }
            DiameterResult r = set_diameter(h.base(), bases);
            if (fiber_pair) r.value = std::max<std::int64_t>(r.value, 1);
            return r;
        }
    }
    return {};
}

/// Multiplicities, volume and host-metric diameter of a wiring. The reported
/// k is the least k for which the wiring is a coarse k-wiring.
inline WiringReport verify_coarse_wiring(const Wiring& input) {
    Wiring w = input;
    normalize_and_check(w);
    WiringReport rep;

    std::vector<VertexId> vm(w.vertex_map);
    std::sort(vm.begin(), vm.end());
    for (std::size_t i = 0; i < vm.size();) {
        std::size_t j = i;
        while (j < vm.size() && vm[j] == vm[i]) ++j;
        rep.max_vertex_multiplicity = std::max(rep.max_vertex_multiplicity, j - i);
        i = j;
    }

    // A domain edge counts once per host edge however often its walk uses it.
    std::vector<std::pair<VertexId, VertexId>> keys, local;
    for (const auto& walk : w.walks) {
        local.clear();
        for (std::size_t s = 0; s + 1 < walk.size(); ++s)
            local.emplace_back(std::min(walk[s], walk[s + 1]), std::max(walk[s], walk[s + 1]));
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        keys.insert(keys.end(), local.begin(), local.end());
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        rep.max_edge_multiplicity = std::max(rep.max_edge_multiplicity, j - i);
        i = j;
    }
    rep.k = std::max(rep.max_vertex_multiplicity, rep.max_edge_multiplicity);
    rep.image_vertices = image_vertices(w);
    rep.volume = rep.image_vertices.size();
    auto diam = set_diameter(w.host, rep.image_vertices);
    rep.diameter = diam.value;
    rep.disconnected = diam.disconnected;
    return rep;
}

/// Identity wiring of g into itself viewed as an explicit host.
inline Wiring identity_wiring(const Graph& g) {
    Wiring w{g, Host::from_graph(g), {}, {}};
    for (Vertex v = 0; v < g.vertex_count(); ++v) w.vertex_map.push_back(v);
    for (auto [u, v] : g.edges()) w.walks.push_back({u, v});
    return w;
}

/// Compose w1 (Γ into Y) with w2 (a graph containing im(w1) into Z).
/// labels[i] is the Y-vertex represented by w2's domain vertex i.
inline Wiring compose(const Wiring& w1, const Wiring& w2, const std::vector<VertexId>& labels) {
    if (labels.size() != w2.domain.vertex_count())
        throw ValidationError("compose: label count does not match the second wiring's domain");
    std::unordered_map<VertexId, Vertex> index;
    for (Vertex i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    auto idx = [&](VertexId y) {
        auto it = index.find(y);
        if (it == index.end())
            throw ValidationError("compose: image vertex " + w1.host.label(y) + " missing from second wiring");
        return it->second;
    };
    Wiring out{w1.domain, w2.host, {}, {}};
    for (VertexId y : w1.vertex_map) out.vertex_map.push_back(w2.vertex_map[idx(y)]);
    for (const auto& walk : w1.walks) {
        Walk composed{w2.vertex_map[idx(walk.front())]};
        for (std::size_t s = 0; s + 1 < walk.size(); ++s) {
            Vertex a = idx(walk[s]), b = idx(walk[s + 1]);
            auto e = w2.domain.edge_index(a, b);
            if (!e)
                throw ValidationError("compose: image edge " + w1.host.label(walk[s]) + "-" +
                                      w1.host.label(walk[s + 1]) + " missing from second wiring");
            const Walk& piece = w2.walks[*e];
            if (a < b)
                composed.insert(composed.end(), piece.begin() + 1, piece.end());
            else
                composed.insert(composed.end(), piece.rbegin() + 1, piece.rend());
        }
        out.walks.push_back(std::move(composed));
    }
    return out;
}

/// Compose where w2's domain is materialize(w1.host, image of w1).
inline Wiring compose(const Wiring& w1, const Wiring& w2) {
    auto img = image_vertices(w1);
    if (img.size() != w2.domain.vertex_count())
        throw ValidationError("compose: second wiring's domain is not the image of the first");
    return compose(w1, w2, img);
}

/// Injective wiring into K_T(host), T = k(d+1). Vertex images sit in layers
/// 1..k by rank among their preimages; the m-th interior visit of a host
/// vertex (counted across walks in edge order, m from 0) sits in layer m+k+1.
inline Wiring make_injective(const Wiring& input, std::size_t d, std::size_t k) {
    Wiring w = input;
    normalize_and_check(w);
    if (max_degree(w.domain) > d)
        throw ValidationError("make_injective: domain degree " + std::to_string(max_degree(w.domain)) +
                              " exceeds d = " + std::to_string(d));
    auto rep = verify_coarse_wiring(w);
    if (rep.k > k)
        throw PropertyError("make_injective: wiring is a coarse " + std::to_string(rep.k) +
                            "-wiring, not a coarse " + std::to_string(k) + "-wiring");
    const std::size_t T = k * (d + 1);
    if (T == 0) {
        if (w.domain.vertex_count() == 0) return Wiring{w.domain, thicken(w.host, 1), {}, {}};
        throw ValidationError("make_injective: T = k(d+1) must be positive");
    }
    Host thick = thicken(w.host, static_cast<std::uint32_t>(T));

    Wiring out{w.domain, thick, std::vector<VertexId>(w.domain.vertex_count()), {}};
    std::unordered_map<VertexId, std::uint32_t> rank, visits;
    for (Vertex v = 0; v < w.domain.vertex_count(); ++v) {
        std::uint32_t l = ++rank[w.vertex_map[v]];
        out.vertex_map[v] = thick.encode(Layered{w.vertex_map[v], l});
    }
    for (std::size_t i = 0; i < w.walks.size(); ++i) {
        const auto& walk = w.walks[i];
        auto [u, v] = w.domain.edges()[i];
        Walk lifted{out.vertex_map[u]};
        // Coincident endpoint images collapse to a single fiber edge.
        if (walk.front() != walk.back()) {
            for (std::size_t s = 1; s + 1 < walk.size(); ++s) {
                std::uint32_t layer = visits[walk[s]]++ + static_cast<std::uint32_t>(k) + 1;
                if (layer > T)
                    throw ConsistencyError("make_injective: layer " + std::to_string(layer) + " at " +
                                           w.host.label(walk[s]) + " exceeds T = " + std::to_string(T));
                lifted.push_back(thick.encode(Layered{walk[s], layer}));
            }
        }
        lifted.push_back(out.vertex_map[v]);
        out.walks.push_back(std::move(lifted));
    }
    return out;
}

/// Vertex images distinct; walks simple; interior vertices used by one walk
/// only and never by a vertex image.
inline bool is_injective_wiring(const Wiring& w, std::string* why = nullptr) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    std::unordered_map<VertexId, std::int64_t> owner;  // -1: vertex image, else edge index
    for (VertexId x : w.vertex_map)
        if (!owner.emplace(x, -1).second) return fail("vertex image " + w.host.label(x) + " used twice");
    for (std::size_t i = 0; i < w.walks.size(); ++i) {
        const auto& walk = w.walks[i];
        for (std::size_t s = 1; s + 1 < walk.size(); ++s)
            if (!owner.emplace(walk[s], static_cast<std::int64_t>(i)).second)
                return fail("walk vertex " + w.host.label(walk[s]) + " of edge " + edge_key(w.domain.edges()[i]) +
                            " already used");
    }
    return true;
}

struct RegularMapReport {
    std::size_t max_preimage = 0;
    std::size_t max_walk_vertices = 0;
    double volume_bound = 0;  ///< (kappa + 1/2) * max(Δ,1) * |V|
    bool volume_bound_holds = false;
};

/// Lexicographically least shortest path in the host (least code at each step).
inline Walk host_shortest_path(const Host& h, VertexId a, VertexId b) {
    if (h.kind() == HostKind::explicit_graph) {
        auto p = shortest_path(h.graph(), static_cast<Vertex>(a), static_cast<Vertex>(b));
        if (p.empty()) throw StructuralError("no host path between " + h.label(a) + " and " + h.label(b));
        return Walk(p.begin(), p.end());
    }
    Walk path{a};
    std::int64_t d = h.distance(a, b);
    while (path.back() != b) {
        bool moved = false;
        for (VertexId w : h.neighbors(path.back()))
            if (h.distance(w, b) == d - 1) {
                path.push_back(w);
                --d;
                moved = true;
                break;
            }
        if (!moved) throw ConsistencyError("shortest path search stalled at " + h.label(path.back()));
    }
    return path;
}

/// Wiring induced by a kappa-regular map r: each edge follows a least
/// shortest host path between the images of its endpoints.
inline Wiring wiring_from_regular_map(const Graph& domain, const Host& host, const std::vector<VertexId>& r,
                                      std::size_t kappa, RegularMapReport* report = nullptr) {
    if (r.size() != domain.vertex_count()) throw ValidationError("regular map: one image per domain vertex required");
    for (VertexId x : r) host.require(x);
    const std::size_t delta = max_degree(domain);
    for (auto [u, v] : domain.edges()) {
        auto d = host.distance(r[u], r[v]);
        if (d == kUnreachable || d > static_cast<std::int64_t>(2 * kappa))
            throw PropertyError("regular map: edge " + edge_key({u, v}) + " maps to " + host.label(r[u]) + " and " +
                                host.label(r[v]) + " at distance " + std::to_string(d) + " > 2*kappa = " +
                                std::to_string(2 * kappa));
    }
    std::map<VertexId, std::size_t> pre;
    std::size_t max_pre = 0;
    for (VertexId x : r) max_pre = std::max(max_pre, ++pre[x]);
    if (max_pre > kappa * (1 + delta))
        throw PropertyError("regular map: a vertex has " + std::to_string(max_pre) + " preimages > kappa*(1+Δ)");

    Wiring w{domain, host, r, {}};
    std::size_t longest = 0;
    for (auto [u, v] : domain.edges()) {
        w.walks.push_back(host_shortest_path(host, r[u], r[v]));
        longest = std::max(longest, w.walks.back().size());
    }
    if (report) {
        report->max_preimage = max_pre;
        report->max_walk_vertices = longest;
        report->volume_bound = (static_cast<double>(kappa) + 0.5) * static_cast<double>(std::max<std::size_t>(delta, 1)) *
                               static_cast<double>(domain.vertex_count());
        report->volume_bound_holds = static_cast<double>(image_vertices(w).size()) <= report->volume_bound;
    }
    return w;
}

}  // namespace cwire
