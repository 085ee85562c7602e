#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "host.hpp"
#include "wiring.hpp"

namespace cwire {

/// ⌈log₂ n⌉, but at least 1 so that single-vertex graphs get a nonempty ball.
inline std::uint32_t lamp_bits(std::size_t n) {
    std::uint32_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return std::max<std::uint32_t>(k, 1);
}

/// v_i goes to the doubled binary expansion of i (bit l of i at lamps l and
/// k+l) with the marker at 0. The walk for v_i v_j sweeps the marker right,
/// setting every lamp to v_j's pattern, then walks back to position 0.
inline Wiring lamplighter_wiring(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) throw ValidationError("lamplighter wiring needs at least one vertex");
    const std::uint32_t k = lamp_bits(n);
    Host host = lamplighter_ball(k);
    auto pattern = [&](std::uint64_t i) {
        std::uint64_t lamps = 0;
        for (std::uint32_t l = 0; l < k; ++l)
            if (i >> l & 1) lamps |= (std::uint64_t{1} << l) | (std::uint64_t{1} << (k + l));
        return lamps;
    };
    Wiring w{g, host, {}, {}};
    for (Vertex v = 0; v < n; ++v) w.vertex_map.push_back(host.encode(LampState{pattern(v), 0}));
    for (auto [i, j] : g.edges()) {
        LampState s{pattern(i), 0};
        const std::uint64_t target = pattern(j);
        Walk walk{host.encode(s)};
        for (std::uint32_t p = 0; p < 2 * k; ++p) {
            s.pos = p;
            if (p > 0) walk.push_back(host.encode(s));
            std::uint64_t bit = std::uint64_t{1} << p;
            if ((s.lamps ^ target) & bit) {
                s.lamps ^= bit;
                walk.push_back(host.encode(s));
            }
        }
        for (std::uint32_t p = 2 * k - 1; p-- > 0;) {
            s.pos = p;
            walk.push_back(host.encode(s));
        }
        w.walks.push_back(std::move(walk));
    }
    return w;
}

/// v_k goes to (k,k); edge v_i v_j (i<j) runs horizontally to (j,i), then up to (j,j).
inline Wiring diagonal_wiring_z2(const Graph& g) {
    const std::size_t n = g.vertex_count();
    Host host = z2_box(std::max<std::size_t>(n, 1));
    auto at = [&](std::int64_t x, std::int64_t y) { return host.vertex_at({x, y}); };
    Wiring w{g, host, {}, {}};
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) w.vertex_map.push_back(at(v, v));
    for (auto [a, b] : g.edges()) {
        const std::int64_t i = a, j = b;
        Walk walk;
        for (std::int64_t x = i; x <= j; ++x) walk.push_back(at(x, i));
        for (std::int64_t y = i + 1; y <= j; ++y) walk.push_back(at(j, y));
        w.walks.push_back(std::move(walk));
    }
    return w;
}

struct KBParams {
    std::uint32_t n = 3;  ///< grid dimension
    std::size_t k = 1;    ///< degree bound used for C
    std::uint64_t R = 1;
    std::uint64_t C = 1;
    std::uint64_t seed = 0;
    std::size_t max_attempts_per_edge = 1000;
    std::uint64_t side() const { return 2 * C * R; }
};

struct KBStats {
    std::vector<std::size_t> attempts;  ///< candidates drawn per edge, in edge order
    double mean_attempts() const {
        if (attempts.empty()) return 0;
        double s = 0;
        for (auto a : attempts) s += static_cast<double>(a);
        return s / static_cast<double>(attempts.size());
    }
    std::size_t max_attempts() const {
        return attempts.empty() ? 0 : *std::max_element(attempts.begin(), attempts.end());
    }
};

struct KBResult {
    Wiring wiring;
    KBParams params;
    KBStats stats;
};

/// Smallest R with R^(n-1) ≥ count.
inline std::uint64_t kb_side(std::size_t count, std::uint32_t n) {
    std::uint64_t R = 1;
    auto enough = [&](std::uint64_t r) {
        unsigned __int128 p = 1;
        for (std::uint32_t i = 0; i + 1 < n; ++i) p *= r;
        return p >= count;
    };
    while (!enough(R)) ++R;
    return R;
}

inline KBParams kb_params(const Graph& g, std::uint32_t n, std::uint64_t seed, std::size_t max_attempts = 1000) {
    if (n < 3) throw ValidationError("kb wiring needs dimension n >= 3");
    KBParams p;
    p.n = n;
    p.k = std::max<std::size_t>(1, max_degree(g));
    p.R = kb_side(g.vertex_count(), n);
    p.C = 4 * p.k * (2 * n - 1) + 1;
    p.seed = seed;
    p.max_attempts_per_edge = max_attempts;
    return p;
}

/// Randomized router on Q^n_{2CR}. Vertices sit on the bottom face at
/// C·(base-R digits of their index). Each edge draws j ∈ {0..CR}^(n-1) and
/// follows 2n-1 axis-parallel segments; a candidate is rejected when one of
/// its segments in directions x_1..x_{n-1} shares a point with an accepted
/// segment of the same direction.
inline KBResult kb_wiring(const Graph& g, const KBParams& p) {
    const std::uint32_t n = p.n;
    const std::uint64_t side = p.side();
    Host host = grid(n, side);
    KBResult res{Wiring{g, host, {}, {}}, p, {}};

    std::vector<std::vector<std::int64_t>> place(g.vertex_count(), std::vector<std::int64_t>(n, 0));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        std::uint64_t x = v;
        for (std::uint32_t l = n - 1; l-- > 0;) {
            place[v][l] = static_cast<std::int64_t>((x % p.R) * p.C);
            x /= p.R;
        }
        res.wiring.vertex_map.push_back(host.vertex_at(place[v]));
    }

    struct Segment {
        std::uint32_t dir;
        std::vector<std::int64_t> from;  // start point
        std::int64_t to;                 // end value of coordinate dir
    };
    // Accepted segments per axis line: key = (code with coordinate dir zeroed) * n + dir.
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> lines;
    auto line_key = [&](const std::vector<std::int64_t>& pt, std::uint32_t dir) {
        std::uint64_t code = 0;
        for (std::uint32_t l = 0; l < n; ++l) code = code * side + (l == dir ? 0 : static_cast<std::uint64_t>(pt[l]));
        return code * n + dir;
    };

    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(p.C * p.R));
    std::vector<Segment> segs;
    for (auto [u, v] : g.edges()) {
        const auto& src = place[u];
        const auto& dst = place[v];
        std::size_t attempt = 0;
        for (;;) {
            if (attempt == p.max_attempts_per_edge)
                throw BudgetExhausted("kb wiring: no admissible path for edge " + edge_key({u, v}) + " after " +
                                      std::to_string(attempt) + " candidates");
            ++attempt;
            std::vector<std::int64_t> j(n - 1);
            for (auto& x : j) x = pick(rng);

            segs.clear();
            std::vector<std::int64_t> cur = src;
            auto go = [&](std::uint32_t dir, std::int64_t value) {
                if (cur[dir] == value) return;
                segs.push_back({dir, cur, value});
                cur[dir] = value;
            };
            go(n - 1, j[0]);
            for (std::uint32_t l = 0; l + 2 < n; ++l) go(l, cur[l] + j[l + 1]);
            go(n - 2, dst[n - 2]);
            for (std::uint32_t l = n - 2; l-- > 0;) go(l, dst[l]);
            go(n - 1, dst[n - 1]);

            bool bad = false;
            for (const auto& s : segs) {
                if (s.dir == n - 1) continue;
                auto it = lines.find(line_key(s.from, s.dir));
                if (it == lines.end()) continue;
                std::int64_t lo = std::min(s.from[s.dir], s.to), hi = std::max(s.from[s.dir], s.to);
                for (auto [a, b] : it->second)
                    if (a <= hi && lo <= b) {
                        bad = true;
                        break;
                    }
                if (bad) break;
            }
            if (bad) continue;

            Walk walk{host.vertex_at(src)};
            for (const auto& s : segs) {
                if (s.dir != n - 1) {
                    std::int64_t lo = std::min(s.from[s.dir], s.to), hi = std::max(s.from[s.dir], s.to);
                    lines[line_key(s.from, s.dir)].emplace_back(lo, hi);
                }
                const std::int64_t step = s.to > s.from[s.dir] ? 1 : -1;
                const std::uint64_t stride = host.stride(s.dir);
                for (std::int64_t x = s.from[s.dir]; x != s.to; x += step)
                    walk.push_back(step > 0 ? walk.back() + stride : walk.back() - stride);
            }
            res.wiring.walks.push_back(std::move(walk));
            res.stats.attempts.push_back(attempt);
            break;
        }
    }
    return res;
}

inline KBResult kb_wiring(const Graph& g, std::uint32_t n, std::uint64_t seed, std::size_t max_attempts = 1000) {
    return kb_wiring(g, kb_params(g, n, seed, max_attempts));
}

}  // namespace cwire
