#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "graph.hpp"

namespace cwire {

/// Integer code of a host vertex. Codes are ordered lexicographically by the
/// kind's natural coordinates, so "least code" is the lexicographic tie-break.
using VertexId = std::uint64_t;

enum class HostKind { grid, lamplighter, z2box, thickened, explicit_graph };

inline std::string to_string(HostKind k) {
    switch (k) {
        case HostKind::grid: return "grid";
        case HostKind::lamplighter: return "lamplighter";
        case HostKind::z2box: return "z2box";
        case HostKind::thickened: return "thickened";
        case HostKind::explicit_graph: return "explicit";
    }
    return "?";
}

struct LampState {
    std::uint64_t lamps = 0;  ///< bit l is the lamp at position l
    std::uint32_t pos = 0;
};

struct Layered {
    VertexId base = 0;
    std::uint32_t layer = 1;  ///< 1..T
};

/// Implicit host graph navigated by coordinate arithmetic.
///
/// grid(n, r): Q^n_r, codes are mixed radix with coordinate 0 most significant.
/// lamplighter(k): lamp strings of length 2k with a marker; code = lamps * 2k + pos,
///   lamps read as an integer with position 0 as the most significant digit.
/// thickened(Y, T): code = base * T + (layer - 1).
/// explicit: vertex indices of a stored Graph.
class Host {
public:
    static Host grid(std::uint32_t n, std::uint64_t r) {
        if (n < 1 || r < 1) throw ValidationError("grid needs n >= 1 and r >= 1");
        Host h(HostKind::grid);
        h.dim_ = n;
        h.r_ = r;
        h.count_ = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (h.count_ > UINT64_MAX / r) throw ValidationError("grid too large for 64-bit codes");
            h.count_ *= r;
        }
        return h;
    }

    static Host z2_box(std::uint64_t m) {
        if (m < 1) throw ValidationError("z2 box needs m >= 1");
        Host h = grid(2, m);
        h.kind_ = HostKind::z2box;
        return h;
    }

    static Host lamplighter_ball(std::uint32_t k) {
        if (k < 1) throw ValidationError("lamplighter ball needs k >= 1");
        if (k > 28) throw ValidationError("lamplighter ball: k too large");
        Host h(HostKind::lamplighter);
        h.k_ = k;
        h.count_ = (std::uint64_t{1} << (2 * k)) * (2 * k);
        return h;
    }

    static Host thicken(const Host& base, std::uint32_t t) {
        if (t < 1) throw ValidationError("thickening needs t >= 1");
        if (base.count_ > UINT64_MAX / t) throw ValidationError("thickening too large for 64-bit codes");
        Host h(HostKind::thickened);
        h.t_ = t;
        h.base_ = std::make_shared<const Host>(base);
        h.count_ = base.count_ * t;
        return h;
    }

    static Host from_graph(Graph g) {
        Host h(HostKind::explicit_graph);
        h.count_ = g.vertex_count();
        h.graph_ = std::make_shared<const Graph>(std::move(g));
        return h;
    }

    HostKind kind() const { return kind_; }
    bool is_grid_like() const { return kind_ == HostKind::grid || kind_ == HostKind::z2box; }
    std::uint32_t dim() const { return dim_; }
    std::uint64_t side() const { return r_; }
    std::uint32_t lamp_k() const { return k_; }
    std::uint32_t lamp_count() const { return 2 * k_; }
    std::uint32_t t() const { return t_; }
    const Host& base() const { return *base_; }
    const Graph& graph() const { return *graph_; }
    std::uint64_t vertex_count() const { return count_; }

    bool contains(VertexId v) const { return v < count_; }

    void require(VertexId v) const {
        if (!contains(v))
            throw ValidationError("vertex code " + std::to_string(v) + " outside " + to_string(kind_) + " host");
    }

    // ---- coordinates ----

    std::vector<std::int64_t> coords(VertexId v) const {
        std::vector<std::int64_t> c(dim_);
        for (std::uint32_t i = dim_; i-- > 0;) {
            c[i] = static_cast<std::int64_t>(v % r_);
            v /= r_;
        }
        return c;
    }

    VertexId vertex_at(const std::vector<std::int64_t>& c) const {
        if (c.size() != dim_) throw ValidationError("grid coordinate arity mismatch");
        VertexId v = 0;
        for (auto x : c) {
            if (x < 0 || static_cast<std::uint64_t>(x) >= r_) throw ValidationError("grid coordinate out of range");
            v = v * r_ + static_cast<std::uint64_t>(x);
        }
        return v;
    }

    /// Place value of coordinate i in a grid code.
    std::uint64_t stride(std::uint32_t i) const {
        std::uint64_t s = 1;
        for (std::uint32_t j = i + 1; j < dim_; ++j) s *= r_;
        return s;
    }

    LampState lamp_state(VertexId v) const {
        const std::uint32_t m = 2 * k_;
        LampState s;
        s.pos = static_cast<std::uint32_t>(v % m);
        std::uint64_t word = v / m;
        // word has position 0 as its most significant digit
        for (std::uint32_t l = 0; l < m; ++l)
            if (word >> (m - 1 - l) & 1) s.lamps |= std::uint64_t{1} << l;
        return s;
    }

    VertexId encode(const LampState& s) const {
        const std::uint32_t m = 2 * k_;
        if (s.pos >= m) throw ValidationError("lamplighter marker out of range");
        if (m < 64 && (s.lamps >> m) != 0) throw ValidationError("lamp outside supported window");
        std::uint64_t word = 0;
        for (std::uint32_t l = 0; l < m; ++l)
            if (s.lamps >> l & 1) word |= std::uint64_t{1} << (m - 1 - l);
        return word * m + s.pos;
    }

    Layered layered(VertexId v) const { return {v / t_, static_cast<std::uint32_t>(v % t_) + 1}; }

    VertexId encode(const Layered& x) const {
        if (x.layer < 1 || x.layer > t_) throw ValidationError("layer out of range");
        base_->require(x.base);
        return x.base * t_ + (x.layer - 1);
    }

    // ---- adjacency ----

    /// Sorted neighbor codes.
    std::vector<VertexId> neighbors(VertexId v) const {
        std::vector<VertexId> out;
        switch (kind_) {
            case HostKind::grid:
            case HostKind::z2box: {
                std::uint64_t s = 1;
                for (std::uint32_t i = dim_; i-- > 0;) {
                    std::uint64_t x = (v / s) % r_;
                    if (x > 0) out.push_back(v - s);
                    if (x + 1 < r_) out.push_back(v + s);
                    s *= r_;
                }
                break;
            }
            case HostKind::lamplighter: {
                LampState st = lamp_state(v);
                LampState f = st;
                f.lamps ^= std::uint64_t{1} << st.pos;
                out.push_back(encode(f));
                if (st.pos > 0) out.push_back(v - 1);
                if (st.pos + 1 < 2 * k_) out.push_back(v + 1);
                break;
            }
            case HostKind::thickened: {
                Layered x = layered(v);
                VertexId b0 = x.base * t_;
                for (std::uint32_t j = 0; j < t_; ++j)
                    if (j + 1 != x.layer) out.push_back(b0 + j);
                for (VertexId w : base_->neighbors(x.base))
                    for (std::uint32_t j = 0; j < t_; ++j) out.push_back(w * t_ + j);
                break;
            }
            case HostKind::explicit_graph:
                for (Vertex w : graph_->neighbors(static_cast<Vertex>(v))) out.push_back(w);
                break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool adjacent(VertexId a, VertexId b) const {
        if (a == b || !contains(a) || !contains(b)) return false;
        switch (kind_) {
            case HostKind::grid:
            case HostKind::z2box: {
                VertexId lo = std::min(a, b), hi = std::max(a, b);
                std::uint64_t diff = hi - lo, s = 1;
                for (std::uint32_t i = dim_; i-- > 0; s *= r_)
                    if (diff == s) return (lo / s) % r_ + 1 < r_;
                return false;
            }
            case HostKind::lamplighter: {
                LampState x = lamp_state(a), y = lamp_state(b);
                if (x.lamps == y.lamps) return x.pos + 1 == y.pos || y.pos + 1 == x.pos;
                return x.pos == y.pos && (x.lamps ^ y.lamps) == (std::uint64_t{1} << x.pos);
            }
            case HostKind::thickened: {
                Layered x = layered(a), y = layered(b);
                return x.base == y.base || base_->adjacent(x.base, y.base);
            }
            case HostKind::explicit_graph:
                return graph_->adjacent(static_cast<Vertex>(a), static_cast<Vertex>(b));
        }
        return false;
    }

    /// Shortest-path distance in the host, or kUnreachable.
    std::int64_t distance(VertexId a, VertexId b) const {
        switch (kind_) {
            case HostKind::grid:
            case HostKind::z2box: {
                std::int64_t d = 0;
                for (std::uint32_t i = 0; i < dim_; ++i) {
                    auto x = static_cast<std::int64_t>(a % r_), y = static_cast<std::int64_t>(b % r_);
                    d += std::llabs(x - y);
                    a /= r_;
                    b /= r_;
                }
                return d;
            }
            case HostKind::lamplighter: {
                LampState x = lamp_state(a), y = lamp_state(b);
                return lamp_distance(x.lamps ^ y.lamps, x.pos, y.pos);
            }
            case HostKind::thickened: {
                Layered x = layered(a), y = layered(b);
                if (x.base == y.base) return x.layer == y.layer ? 0 : 1;
                return base_->distance(x.base, y.base);
            }
            case HostKind::explicit_graph:
                return bfs_distances(*graph_, static_cast<Vertex>(a))[b];
        }
        return kUnreachable;
    }

    /// Marker walk that visits every differing lamp, starting at p and ending at q.
    static std::int64_t lamp_distance(std::uint64_t diff, std::int64_t p, std::int64_t q) {
        if (diff == 0) return std::llabs(p - q);
        std::int64_t lo = std::countr_zero(diff), hi = 63 - std::countl_zero(diff);
        std::int64_t span = hi - lo;
        std::int64_t tour = std::min(std::llabs(p - lo) + span + std::llabs(hi - q),
                                     std::llabs(p - hi) + span + std::llabs(lo - q));
        return std::popcount(diff) + tour;
    }

    std::size_t max_degree() const {
        switch (kind_) {
            case HostKind::grid:
            case HostKind::z2box: return r_ > 2 ? 2 * dim_ : (r_ == 2 ? dim_ : 0);
            case HostKind::lamplighter: return k_ >= 1 ? 3 : 0;
            case HostKind::thickened: return (t_ - 1) + static_cast<std::size_t>(t_) * base_->max_degree();
            case HostKind::explicit_graph: return cwire::max_degree(*graph_);
        }
        return 0;
    }

    /// Largest distance between two vertices (exact for implicit kinds).
    std::int64_t diameter_bound() const {
        switch (kind_) {
            case HostKind::grid:
            case HostKind::z2box: return static_cast<std::int64_t>(dim_) * static_cast<std::int64_t>(r_ - 1);
            case HostKind::lamplighter: return 6 * static_cast<std::int64_t>(k_) - 2;
            case HostKind::thickened: return std::max<std::int64_t>(base_->diameter_bound(), t_ > 1 ? 1 : 0);
            case HostKind::explicit_graph: return graph_diameter(*graph_).value;
        }
        return 0;
    }

    /// Human readable vertex label.
    std::string label(VertexId v) const {
        switch (kind_) {
            case HostKind::grid:
            case HostKind::z2box: {
                std::string s = "(";
                auto c = coords(v);
                for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
                return s + ")";
            }
            case HostKind::lamplighter: {
                auto st = lamp_state(v);
                std::string s;
                for (std::uint32_t l = 0; l < 2 * k_; ++l) {
                    if (l == st.pos) s += '^';
                    s += (st.lamps >> l & 1) ? '1' : '0';
                }
                return s;
            }
            case HostKind::thickened: {
                auto x = layered(v);
                return "[" + base_->label(x.base) + ";" + std::to_string(x.layer) + "]";
            }
            case HostKind::explicit_graph: return std::to_string(v);
        }
        return {};
    }

    friend bool operator==(const Host& a, const Host& b) {
        if (a.kind_ != b.kind_ || a.count_ != b.count_) return false;
        switch (a.kind_) {
            case HostKind::grid:
            case HostKind::z2box: return a.dim_ == b.dim_ && a.r_ == b.r_;
            case HostKind::lamplighter: return a.k_ == b.k_;
            case HostKind::thickened: return a.t_ == b.t_ && *a.base_ == *b.base_;
            case HostKind::explicit_graph: return *a.graph_ == *b.graph_;
        }
        return false;
    }

private:
    explicit Host(HostKind k) : kind_(k) {}

    HostKind kind_;
    std::uint32_t dim_ = 0;
    std::uint64_t r_ = 0;
    std::uint32_t k_ = 0;
    std::uint32_t t_ = 0;
    std::uint64_t count_ = 0;
    std::shared_ptr<const Host> base_;
    std::shared_ptr<const Graph> graph_;
};

inline Host grid(std::uint32_t n, std::uint64_t r) { return Host::grid(n, r); }
inline Host lamplighter_ball(std::uint32_t k) { return Host::lamplighter_ball(k); }
inline Host z2_box(std::uint64_t m) { return Host::z2_box(m); }
inline Host thicken(const Host& y, std::uint32_t t) { return Host::thicken(y, t); }

/// Finite subgraph of a host with its vertex codes; graph vertex i is labels[i].
struct InducedSubgraph {
    Graph graph;
    std::vector<VertexId> labels;  ///< sorted ascending

    /// Index of code v, or -1.
    std::int64_t index_of(VertexId v) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), v);
        if (it == labels.end() || *it != v) return -1;
        return it - labels.begin();
    }
};

/// Induced subgraph of the host on `used` (duplicates ignored).
inline InducedSubgraph materialize(const Host& h, std::vector<VertexId> used) {
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (VertexId v : used) h.require(v);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (h.kind() == HostKind::thickened) {
            // Scan whole fibers instead of enumerating T * deg neighbor codes.
            const std::uint64_t t = h.t();
            auto fiber = [&](VertexId b) {
                auto lo = std::lower_bound(used.begin(), used.end(), b * t);
                auto hi = std::lower_bound(lo, used.end(), b * t + t);
                for (auto it = lo; it != hi; ++it)
                    if (*it > used[i]) edges.emplace_back(i, static_cast<Vertex>(it - used.begin()));
            };
            VertexId b = used[i] / t;
            fiber(b);
            for (VertexId w : h.base().neighbors(b))
                if (w > b) fiber(w);
            continue;
        }
        for (VertexId w : h.neighbors(used[i])) {
            if (w <= used[i]) continue;
            auto it = std::lower_bound(used.begin(), used.end(), w);
            if (it != used.end() && *it == w) edges.emplace_back(i, static_cast<Vertex>(it - used.begin()));
        }
    }
    return {Graph(used.size(), std::move(edges)), std::move(used)};
}

/// The full host as an explicit graph (small hosts only).
inline InducedSubgraph materialize_all(const Host& h, std::uint64_t limit = 1u << 22) {
    if (h.vertex_count() > limit) throw CapacityError("host too large to materialize");
    std::vector<VertexId> all(h.vertex_count());
    for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
    return materialize(h, std::move(all));
}

}  // namespace cwire
