#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace cwire {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::int64_t kUnreachable = -1;

/// Finite simple graph in compressed adjacency form. Edges are stored with
/// u < v, sorted lexicographically; edge indices refer to that order.
class Graph {
public:
    Graph() = default;

    Graph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
        if (vertex_count > std::numeric_limits<Vertex>::max())
            throw ValidationError("vertex count too large");
        for (auto& [u, v] : edges) {
            if (u >= n_ || v >= n_)
                throw ValidationError("endpoint out of range in edge (" + std::to_string(u) + "," +
                                      std::to_string(v) + ")");
            if (u == v)
                throw ValidationError("loop at vertex " + std::to_string(u) + " in edge (" +
                                      std::to_string(u) + "," + std::to_string(v) + ")");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);

        offsets_.assign(n_ + 1, 0);
        for (auto [u, v] : edges_) {
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
        adj_.resize(offsets_[n_]);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (auto [u, v] : edges_) {
            adj_[fill[u]++] = v;
            adj_[fill[v]++] = u;
        }
        for (std::size_t v = 0; v < n_; ++v)
            std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    bool adjacent(Vertex u, Vertex v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// Index of edge {u,v} in edges(), if present.
    std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
};

inline Graph build_graph(std::size_t vertex_count, std::vector<Edge> edges) {
    return Graph(vertex_count, std::move(edges));
}

inline std::size_t max_degree(const Graph& g) {
    std::size_t d = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
    return d;
}

/// Component label per vertex; labels are 0..count-1 in order of first vertex.
struct Components {
    std::vector<std::uint32_t> label;
    std::vector<std::size_t> size;
    std::size_t count() const { return size.size(); }
    std::size_t largest() const {
        return size.empty() ? 0 : *std::max_element(size.begin(), size.end());
    }
};

/// Components of g with the vertices flagged in `removed` deleted. Removed
/// vertices get the label UINT32_MAX.
inline Components components(const Graph& g, const std::vector<char>& removed = {}) {
    const std::size_t n = g.vertex_count();
    Components c;
    c.label.assign(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if ((!removed.empty() && removed[s]) || c.label[s] != UINT32_MAX) continue;
        auto id = static_cast<std::uint32_t>(c.size.size());
        std::size_t sz = 0;
        c.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            ++sz;
            for (Vertex w : g.neighbors(v)) {
                if ((!removed.empty() && removed[w]) || c.label[w] != UINT32_MAX) continue;
                c.label[w] = id;
                stack.push_back(w);
            }
        }
        c.size.push_back(sz);
    }
    return c;
}

inline bool is_connected(const Graph& g) { return components(g).count() <= 1; }

/// Hop distances from `source`; kUnreachable where there is no path.
inline std::vector<std::int64_t> bfs_distances(const Graph& g, Vertex source) {
    std::vector<std::int64_t> dist(g.vertex_count(), kUnreachable);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v))
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

/// Lexicographically least shortest path from s to t (by vertex index), or
/// empty when t is unreachable.
inline std::vector<Vertex> shortest_path(const Graph& g, Vertex s, Vertex t) {
    auto dist = bfs_distances(g, t);
    if (dist[s] == kUnreachable) return {};
    std::vector<Vertex> path{s};
    Vertex cur = s;
    while (cur != t) {
        for (Vertex w : g.neighbors(cur))
            if (dist[w] == dist[cur] - 1) {
                cur = w;
                break;
            }
        path.push_back(cur);
    }
    return path;
}

struct DiameterResult {
    std::int64_t value = 0;
    bool disconnected = false;  ///< some pair had no path; value covers reachable pairs
};

inline DiameterResult graph_diameter(const Graph& g) {
    DiameterResult r;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        for (auto d : bfs_distances(g, s)) {
            if (d == kUnreachable)
                r.disconnected = true;
            else
                r.value = std::max(r.value, d);
        }
    }
    return r;
}

/// Subgraph induced on `keep` (in the given order); vertex i of the result is keep[i].
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
    std::vector<std::int64_t> pos(g.vertex_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (pos[u] >= 0 && pos[v] >= 0)
            edges.emplace_back(static_cast<Vertex>(pos[u]), static_cast<Vertex>(pos[v]));
    return Graph(keep.size(), std::move(edges));
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return Graph(g.vertex_count(), std::move(edges));
}

// ---- families ----------------------------------------------------------

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return Graph(n, std::move(e));
}

inline Graph edgeless_graph(std::size_t n) { return Graph(n, {}); }

/// Simple d-regular graph from the pairing model; whole pairings containing a
/// loop or a repeated pair are rejected and redrawn.
inline Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                            std::size_t max_attempts = 100000) {
    if ((n * d) % 2 != 0)
        throw ValidationError("parity: n*d = " + std::to_string(n * d) + " is odd");
    if (d >= n && !(n == 0 || d == 0))
        throw ValidationError("degree " + std::to_string(d) + " must be below n = " + std::to_string(n));
    std::mt19937_64 rng(seed);
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t i = 0; i < d; ++i) points.push_back(v);
    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::shuffle(points.begin(), points.end(), rng);
        edges.clear();
        bool ok = true;
        for (std::size_t i = 0; i < points.size() && ok; i += 2) {
            Vertex a = points[i], b = points[i + 1];
            if (a == b) ok = false;
            edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, std::move(edges));
    }
    throw BudgetExhausted("random_regular: no simple pairing after " + std::to_string(max_attempts) +
                          " attempts");
}

}  // namespace cwire
