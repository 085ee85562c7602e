#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "graph.hpp"

namespace cwire {

using Rational = boost::rational<std::int64_t>;

enum class CutMode { exact, heuristic };

struct CutReport {
    std::vector<Vertex> cut_set;  ///< sorted
    std::size_t largest_remaining_component = 0;
    bool is_minimum = false;
    bool valid = false;
};

struct CutOptions {
    std::size_t exact_cap = 16;  ///< exact mode refuses larger graphs
    std::uint64_t node_budget = 50'000'000;      ///< branch and bound nodes
    std::size_t frontier_width_limit = 24;        ///< use the frontier sweep up to this width
    std::size_t state_budget = 20'000'000;        ///< frontier sweep states, summed over steps
};

namespace detail {

inline std::vector<char> as_mask(const Graph& g, const std::vector<Vertex>& s) {
    std::vector<char> m(g.vertex_count(), 0);
    for (Vertex v : s) {
        if (v >= g.vertex_count())
            throw ValidationError("vertex " + std::to_string(v) + " not in graph");
        m[v] = 1;
    }
    return m;
}

// Largest component size ≤ half the vertex count; exactly half is allowed.
inline bool balanced(std::size_t largest, std::size_t n) { return 2 * largest <= n; }

}  // namespace detail

inline std::size_t largest_component_without(const Graph& g, const std::vector<Vertex>& s) {
    return components(g, detail::as_mask(g, s)).largest();
}

/// True iff every component of g - s has at most half of g's vertices.
inline bool is_cut_set(const Graph& g, const std::vector<Vertex>& s) {
    return detail::balanced(largest_component_without(g, s), g.vertex_count());
}

namespace detail {

/// Bitmask brute force by increasing size; n ≤ 30.
inline std::vector<Vertex> brute_force_min_cut(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> nb(n, 0);
    for (auto [u, v] : g.edges()) {
        nb[u] |= 1u << v;
        nb[v] |= 1u << u;
    }
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
    auto largest = [&](std::uint32_t removed) {
        std::uint32_t left = all & ~removed;
        int best = 0;
        while (left) {
            std::uint32_t comp = left & (~left + 1), frontier = comp;
            while (frontier) {
                std::uint32_t grow = 0;
                for (std::uint32_t f = frontier; f; f &= f - 1) grow |= nb[std::countr_zero(f)];
                grow &= left & ~comp;
                comp |= grow;
                frontier = grow;
            }
            best = std::max(best, std::popcount(comp));
            left &= ~comp;
        }
        return static_cast<std::size_t>(best);
    };
    for (std::size_t size = 0; size <= n; ++size) {
        if (size == 0) {
            if (balanced(largest(0), n)) return {};
            continue;
        }
        // Gosper's hack over all masks with `size` bits set.
        std::uint64_t m = (std::uint64_t{1} << size) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        while (m < limit) {
            if (balanced(largest(static_cast<std::uint32_t>(m)), n)) {
                std::vector<Vertex> s;
                for (std::uint64_t b = m; b; b &= b - 1) s.push_back(std::countr_zero(b));
                return s;
            }
            std::uint64_t c = m & (~m + 1), r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    return {};
}

/// Betweenness centrality (Brandes) restricted to vertices not in `removed`,
/// accumulated from at most `max_sources` evenly spaced sources.
inline std::vector<double> betweenness(const Graph& g, const std::vector<char>& removed,
                                       std::size_t max_sources) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> alive;
    for (Vertex v = 0; v < n; ++v)
        if (!removed[v]) alive.push_back(v);
    std::vector<double> bc(n, 0.0), delta(n), sigma(n);
    std::vector<std::int64_t> dist(n);
    std::vector<Vertex> order;
    std::size_t step = std::max<std::size_t>(1, alive.size() / std::max<std::size_t>(1, max_sources));
    for (std::size_t si = 0; si < alive.size(); si += step) {
        Vertex s = alive[si];
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1;
        order.push_back(s);
        for (std::size_t h = 0; h < order.size(); ++h) {
            Vertex v = order[h];
            for (Vertex w : g.neighbors(v)) {
                if (removed[w]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
            }
        }
        for (std::size_t h = order.size(); h-- > 0;) {
            Vertex w = order[h];
            for (Vertex v : g.neighbors(w))
                if (!removed[v] && dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }
    return bc;
}

/// Drop cut vertices that are not needed, highest index first.
inline void minimalize(const Graph& g, std::vector<char>& removed) {
    const std::size_t n = g.vertex_count();
    for (Vertex v = static_cast<Vertex>(n); v-- > 0;) {
        if (!removed[v]) continue;
        removed[v] = 0;
        if (!balanced(components(g, removed).largest(), n)) removed[v] = 1;
    }
}

inline std::vector<Vertex> mask_to_list(const std::vector<char>& m) {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < m.size(); ++v)
        if (m[v]) s.push_back(v);
    return s;
}

inline std::vector<Vertex> greedy_betweenness_cut(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<char> removed(n, 0);
    for (;;) {
        auto comps = components(g, removed);
        if (balanced(comps.largest(), n)) break;
        auto big = static_cast<std::uint32_t>(
            std::max_element(comps.size.begin(), comps.size.end()) - comps.size.begin());
        std::vector<char> outside(removed);
        for (Vertex v = 0; v < n; ++v)
            if (comps.label[v] != big) outside[v] = 1;
        auto bc = betweenness(g, outside, 64);
        Vertex pick = 0;
        double best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!outside[v] && bc[v] > best) {
                best = bc[v];
                pick = v;
            }
        removed[pick] = 1;
    }
    minimalize(g, removed);
    return mask_to_list(removed);
}

/// Try every BFS layer from a handful of sources as a separator.
inline std::vector<Vertex> layer_cut(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> best;
    bool have = false;
    std::size_t step = std::max<std::size_t>(1, n / 16);
    for (Vertex s = 0; s < n; s += static_cast<Vertex>(step)) {
        auto dist = bfs_distances(g, s);
        std::int64_t depth = *std::max_element(dist.begin(), dist.end());
        for (std::int64_t level = 0; level <= depth; ++level) {
            std::vector<char> removed(n, 0);
            for (Vertex v = 0; v < n; ++v)
                if (dist[v] == level) removed[v] = 1;
            if (!balanced(components(g, removed).largest(), n)) continue;
            minimalize(g, removed);
            auto list = mask_to_list(removed);
            if (!have || list.size() < best.size()) {
                best = std::move(list);
                have = true;
            }
        }
    }
    if (!have) {
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    return best;
}

inline std::vector<Vertex> heuristic_cut(const Graph& g) {
    auto a = greedy_betweenness_cut(g);
    if (g.vertex_count() == 0) return a;
    auto b = layer_cut(g);
    return b.size() < a.size() ? b : a;
}

/// Augmenting-path max flow for small integer capacities.
class UnitFlow {
public:
    explicit UnitFlow(std::size_t nodes) : head_(nodes, -1) {}

    void add(std::size_t from, std::size_t to, int cap) {
        arcs_.push_back({to, cap, head_[from]});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, 0, head_[to]});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    std::size_t max_flow(std::size_t s, std::size_t t, std::size_t limit) {
        std::size_t flow = 0;
        std::vector<int> via(head_.size());
        std::vector<std::size_t> queue;
        while (flow < limit) {
            std::fill(via.begin(), via.end(), -2);
            via[s] = -1;
            queue.assign(1, s);
            for (std::size_t h = 0; h < queue.size() && via[t] == -2; ++h)
                for (int a = head_[queue[h]]; a >= 0; a = arcs_[a].next)
                    if (arcs_[a].cap > 0 && via[arcs_[a].to] == -2) {
                        via[arcs_[a].to] = a;
                        queue.push_back(arcs_[a].to);
                    }
            if (via[t] == -2) break;
            for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
                --arcs_[via[v]].cap;
                ++arcs_[via[v] ^ 1].cap;
            }
            ++flow;
        }
        return flow;
    }

private:
    struct Arc {
        std::size_t to;
        int cap;
        int next;
    };
    std::vector<int> head_;
    std::vector<Arc> arcs_;
};

/// Branch and bound for graphs too large for subset enumeration. Each node
/// fixes undecided vertices as cut or kept; kept vertices stay in the final
/// graph. Lower bound: two kept groups whose sizes exceed half the graph
/// together need a vertex separator among undecided vertices (max flow).
class CutBranchAndBound {
public:
    CutBranchAndBound(const Graph& g, std::vector<Vertex> incumbent, std::uint64_t budget)
        : g_(g), n_(g.vertex_count()), half_(g.vertex_count() / 2), budget_(budget),
          best_(std::move(incumbent)), state_(n_, kUndecided) {}

    std::vector<Vertex> solve() {
        search(0);
        std::sort(best_.begin(), best_.end());
        return best_;
    }

private:
    static constexpr char kUndecided = 0, kKept = 1, kCut = 2;

    const Graph& g_;
    std::size_t n_, half_;
    std::uint64_t budget_, nodes_ = 0;
    std::vector<Vertex> best_;
    std::vector<char> state_;

    // Kept groups: components of the graph induced on kept vertices.
    std::vector<std::uint32_t> kept_groups(std::vector<std::size_t>& sizes) const {
        std::vector<std::uint32_t> label(n_, UINT32_MAX);
        std::vector<Vertex> stack;
        sizes.clear();
        for (Vertex s = 0; s < n_; ++s) {
            if (state_[s] != kKept || label[s] != UINT32_MAX) continue;
            auto id = static_cast<std::uint32_t>(sizes.size());
            std::size_t sz = 0;
            label[s] = id;
            stack.push_back(s);
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                ++sz;
                for (Vertex w : g_.neighbors(v))
                    if (state_[w] == kKept && label[w] == UINT32_MAX) {
                        label[w] = id;
                        stack.push_back(w);
                    }
            }
            sizes.push_back(sz);
        }
        return label;
    }

    // Minimum number of undecided vertices separating kept group a from b,
    // stopping once it reaches `limit`.
    std::size_t separator_size(const std::vector<std::uint32_t>& label, std::uint32_t a, std::uint32_t b,
                               std::size_t limit) const {
        constexpr int inf = 1 << 29;
        // Node 2v is v's in-side, 2v+1 its out-side; 2n is the source, 2n+1 the sink.
        UnitFlow net(2 * n_ + 2);
        const std::size_t src = 2 * n_, dst = 2 * n_ + 1;
        for (Vertex v = 0; v < n_; ++v) {
            if (state_[v] == kCut) continue;
            net.add(2 * v, 2 * v + 1, state_[v] == kKept ? inf : 1);
            for (Vertex w : g_.neighbors(v))
                if (state_[w] != kCut) net.add(2 * v + 1, 2 * w, inf);
            if (label[v] == a) net.add(src, 2 * v, inf);
            if (label[v] == b) net.add(2 * v + 1, dst, inf);
        }
        return net.max_flow(src, dst, limit);
    }

    std::size_t cut_count() const {
        return static_cast<std::size_t>(std::count(state_.begin(), state_.end(), kCut));
    }

    void search(int depth) {
        if (++nodes_ > budget_)
            throw CapacityError("exact min cut: node budget of " + std::to_string(budget_) + " exhausted on " +
                                std::to_string(n_) + " vertices");
        std::size_t cuts = cut_count();
        if (cuts + 1 > best_.size()) {
            // Only a feasible configuration with the same count could tie; we need strictly better.
            return;
        }

        // Unit propagation: an undecided vertex joining kept groups that would
        // overflow must be cut.
        std::vector<Vertex> forced;
        std::vector<std::size_t> sizes;
        std::vector<std::uint32_t> label;
        for (;;) {
            label = kept_groups(sizes);
            for (auto s : sizes)
                if (s > half_) {
                    undo(forced);
                    return;
                }
            bool changed = false;
            for (Vertex v = 0; v < n_ && !changed; ++v) {
                if (state_[v] != kUndecided) continue;
                std::size_t total = 1;
                std::uint32_t seen[64];
                int ns = 0;
                for (Vertex w : g_.neighbors(v)) {
                    if (state_[w] != kKept) continue;
                    std::uint32_t l = label[w];
                    bool dup = false;
                    for (int i = 0; i < ns; ++i) dup |= seen[i] == l;
                    if (dup || ns == 64) continue;
                    seen[ns++] = l;
                    total += sizes[l];
                }
                if (total > half_) {
                    state_[v] = kCut;
                    forced.push_back(v);
                    changed = true;
                }
            }
            if (!changed) break;
            if (cuts + forced.size() + 1 > best_.size()) {
                undo(forced);
                return;
            }
        }
        cuts += forced.size();

        std::vector<char> removed(n_);
        for (Vertex v = 0; v < n_; ++v) removed[v] = state_[v] == kCut;
        auto comps = components(g_, removed);
        if (balanced(comps.largest(), n_)) {
            if (cuts < best_.size()) best_ = mask_to_list(removed);
            undo(forced);
            return;
        }
        if (cuts + 1 >= best_.size()) {
            undo(forced);
            return;
        }

        // Flow bound over pairs of large kept groups.
        std::vector<std::uint32_t> order(sizes.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return sizes[x] > sizes[y]; });
        if (order.size() > 8) order.resize(8);
        std::size_t room = best_.size() - cuts - 1;  // cuts we may still add
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                if (sizes[order[i]] + sizes[order[j]] <= half_) continue;
                if (separator_size(label, order[i], order[j], room + 1) > room) {
                    undo(forced);
                    return;
                }
            }

        // Branch on the undecided vertex of the oversized component with the
        // most kept neighbours, then highest degree.
        auto big = static_cast<std::uint32_t>(
            std::max_element(comps.size.begin(), comps.size.end()) - comps.size.begin());
        Vertex pick = 0;
        std::int64_t score = -1;
        for (Vertex v = 0; v < n_; ++v) {
            if (state_[v] != kUndecided || comps.label[v] != big) continue;
            std::int64_t kept = 0;
            for (Vertex w : g_.neighbors(v)) kept += state_[w] == kKept;
            std::int64_t sc = kept * 1024 + static_cast<std::int64_t>(g_.degree(v));
            if (sc > score) {
                score = sc;
                pick = v;
            }
        }
        if (score < 0) {  // every vertex of the big component is kept: infeasible
            undo(forced);
            return;
        }
        state_[pick] = kCut;
        search(depth + 1);
        state_[pick] = kKept;
        search(depth + 1);
        state_[pick] = kUndecided;
        undo(forced);
    }

    void undo(const std::vector<Vertex>& forced) {
        for (Vertex v : forced) state_[v] = kUndecided;
    }
};


/// Vertex order that greedily keeps the frontier (processed vertices with
/// unprocessed neighbours) small. Reports the largest frontier seen.
inline std::vector<Vertex> narrow_order(const Graph& g, std::size_t* width = nullptr) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> order;
    std::vector<char> done(n, 0), on_front(n, 0);
    std::vector<std::size_t> open_nb(n);
    for (Vertex v = 0; v < n; ++v) open_nb[v] = g.degree(v);
    std::size_t front = 0, worst = 0;
    while (order.size() < n) {
        Vertex best = static_cast<Vertex>(n);
        long best_score = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (done[v]) continue;
            long touched = 0, leaving = 0;
            for (Vertex w : g.neighbors(v))
                if (done[w]) {
                    ++touched;
                    leaving += open_nb[w] == 1;
                }
            long grown = static_cast<long>(front) - leaving + (static_cast<long>(g.degree(v)) > touched);
            long score = grown * 64 - touched;
            if (best == n || score < best_score) best = v, best_score = score;
        }
        done[best] = 1;
        order.push_back(best);
        for (Vertex w : g.neighbors(best)) {
            --open_nb[w];
            if (done[w] && open_nb[w] == 0 && on_front[w]) on_front[w] = 0, --front;
        }
        if (open_nb[best] > 0) on_front[best] = 1, ++front;
        worst = std::max(worst, front);
    }
    if (width) *width = worst;
    return order;
}

/// Exact minimum cut set by a sweep along `order`. A state records, for each
/// frontier vertex, either "cut" or the open component it belongs to, plus
/// each open component's size and the cuts so far. A component leaving the
/// frontier is final and already fits. A state with no more cuts and no
/// larger open components dominates. Returns nullopt if every cut set has
/// more than `budget` vertices.
inline std::optional<std::vector<Vertex>> frontier_min_cut(const Graph& g, const std::vector<Vertex>& order,
                                                           std::size_t budget, std::size_t state_budget) {
    const std::size_t n = g.vertex_count();
    const std::size_t half = n / 2;
    constexpr std::uint8_t kCutLabel = 255;

    std::vector<std::size_t> pos(n), last(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (Vertex v = 0; v < n; ++v) {
        last[v] = pos[v];
        for (Vertex w : g.neighbors(v)) last[v] = std::max(last[v], pos[w]);
    }

    struct State {
        std::vector<std::uint8_t> label;  // per frontier slot
        std::vector<std::uint32_t> size;  // per open component, in order of first slot
        std::uint32_t cuts = 0;
        std::uint32_t parent = 0;
        bool cut = false;
        bool dead = false;
    };
    struct Link {
        std::uint32_t parent;
        bool cut;
    };
    std::vector<std::vector<Link>> history;
    std::vector<Vertex> frontier;
    std::vector<State> layer(1);
    std::size_t seen = 0;

    for (std::size_t step = 0; step < n; ++step) {
        const Vertex v = order[step];
        std::vector<std::size_t> touching, staying;
        std::vector<Vertex> next_frontier;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            if (g.adjacent(frontier[i], v)) touching.push_back(i);
            if (last[frontier[i]] > step) {
                staying.push_back(i);
                next_frontier.push_back(frontier[i]);
            }
        }
        const bool v_stays = last[v] > step;
        if (v_stays) next_frontier.push_back(v);

        // Regions: components of the still unprocessed vertices, and which of
        // them each next-frontier slot touches.
        std::vector<std::uint32_t> region(n, UINT32_MAX);
        std::vector<std::uint32_t> region_size;
        std::vector<Vertex> stack;
        for (std::size_t i = step + 1; i < n; ++i) {
            if (region[order[i]] != UINT32_MAX) continue;
            const auto id = static_cast<std::uint32_t>(region_size.size());
            region_size.push_back(0);
            region[order[i]] = id;
            stack.assign(1, order[i]);
            while (!stack.empty()) {
                Vertex x = stack.back();
                stack.pop_back();
                ++region_size[id];
                for (Vertex y : g.neighbors(x))
                    if (pos[y] > step && region[y] == UINT32_MAX) {
                        region[y] = id;
                        stack.push_back(y);
                    }
            }
        }
        std::vector<std::vector<std::uint32_t>> slot_regions(next_frontier.size());
        for (std::size_t i = 0; i < next_frontier.size(); ++i) {
            for (Vertex y : g.neighbors(next_frontier[i]))
                if (pos[y] > step) slot_regions[i].push_back(region[y]);
            std::sort(slot_regions[i].begin(), slot_regions[i].end());
            slot_regions[i].erase(std::unique(slot_regions[i].begin(), slot_regions[i].end()), slot_regions[i].end());
        }

        // Open components joined through unprocessed regions form blobs. A blob
        // over half the graph needs a cut inside its regions; blobs are disjoint,
        // so their count bounds the remaining cuts. In a blob that fits, no
        // future component can overflow, so its sizes are forgotten.
        std::vector<std::uint32_t> uf, blob_total, touched;
        auto settle = [&](State& st) {
            const std::size_t c = st.size.size();
            touched.clear();
            uf.resize(c);
            std::iota(uf.begin(), uf.end(), 0);
            auto find = [&](std::uint32_t x) {
                while (uf[x] != x) x = uf[x] = uf[uf[x]];
                return x;
            };
            for (std::size_t i = 0; i < st.label.size(); ++i) {
                if (st.label[i] == kCutLabel) continue;
                for (std::uint32_t r : slot_regions[i]) {
                    auto it = std::find(touched.begin(), touched.end(), r);
                    std::uint32_t node;
                    if (it == touched.end()) {
                        node = static_cast<std::uint32_t>(uf.size());
                        touched.push_back(r);
                        uf.push_back(node);
                    } else {
                        node = static_cast<std::uint32_t>(c + (it - touched.begin()));
                    }
                    uf[find(node)] = find(st.label[i]);
                }
            }
            blob_total.assign(uf.size(), 0);
            for (std::size_t x = 0; x < c; ++x) blob_total[find(static_cast<std::uint32_t>(x))] += st.size[x];
            for (std::size_t j = 0; j < touched.size(); ++j)
                blob_total[find(static_cast<std::uint32_t>(c + j))] += region_size[touched[j]];
            std::size_t heavy = 0;
            for (std::size_t x = 0; x < uf.size(); ++x) heavy += find(static_cast<std::uint32_t>(x)) == x && blob_total[x] > half;
            for (std::size_t x = 0; x < c; ++x)
                if (blob_total[find(static_cast<std::uint32_t>(x))] <= half) st.size[x] = 0;
            return heavy;
        };

        std::vector<State> next;
        std::unordered_map<std::string, std::vector<std::uint32_t>> buckets;

        // `lab` holds raw component ids into `raw`; relabel by first slot so equal
        // frontier shapes share a key, then keep only undominated states.
        auto offer = [&](std::uint32_t parent, bool cut, const std::vector<std::uint8_t>& lab,
                         const std::vector<std::uint32_t>& raw, std::uint32_t cuts) {
            State s;
            s.label.reserve(lab.size());
            std::vector<int> remap(raw.size(), -1);
            for (std::uint8_t l : lab) {
                if (l == kCutLabel) {
                    s.label.push_back(kCutLabel);
                    continue;
                }
                if (remap[l] < 0) {
                    remap[l] = static_cast<int>(s.size.size());
                    s.size.push_back(raw[l]);
                }
                s.label.push_back(static_cast<std::uint8_t>(remap[l]));
            }
            s.cuts = cuts;
            if (cuts + settle(s) > budget) return;
            auto& bucket = buckets[std::string(s.label.begin(), s.label.end())];
            auto covers = [](const State& a, const State& b) {  // a at least as good as b
                if (a.cuts > b.cuts) return false;
                for (std::size_t c = 0; c < a.size.size(); ++c)
                    if (a.size[c] > b.size[c]) return false;
                return true;
            };
            for (std::uint32_t j : bucket)
                if (covers(next[j], s)) return;
            std::size_t keep = 0;
            for (std::uint32_t j : bucket) {
                if (covers(s, next[j]))
                    next[j].dead = true;
                else
                    bucket[keep++] = j;
            }
            bucket.resize(keep);
            s.parent = parent;
            s.cut = cut;
            bucket.push_back(static_cast<std::uint32_t>(next.size()));
            next.push_back(std::move(s));
        };

        std::vector<std::uint8_t> lab, merged;
        std::vector<std::uint32_t> raw;
        for (std::uint32_t si = 0; si < layer.size(); ++si) {
            const State& st = layer[si];
            if (st.cuts + 1 <= budget) {
                lab.clear();
                for (std::size_t i : staying) lab.push_back(st.label[i]);
                if (v_stays) lab.push_back(kCutLabel);
                offer(si, true, lab, st.size, st.cuts + 1);
            }
            // Keep v: it joins the components of its frontier neighbours.
            merged.clear();
            std::uint32_t size = 1;
            for (std::size_t i : touching) {
                std::uint8_t l = st.label[i];
                if (l == kCutLabel || std::find(merged.begin(), merged.end(), l) != merged.end()) continue;
                merged.push_back(l);
                size += st.size[l];
            }
            if (size > half) continue;
            raw = st.size;
            const auto id = static_cast<std::uint8_t>(raw.size());
            raw.push_back(size);
            lab.clear();
            for (std::size_t i : staying) {
                std::uint8_t l = st.label[i];
                bool joins = l != kCutLabel && std::find(merged.begin(), merged.end(), l) != merged.end();
                lab.push_back(joins ? id : l);
            }
            if (v_stays) lab.push_back(id);
            offer(si, false, lab, raw, st.cuts);
        }

        layer.clear();
        std::vector<Link> links;
        for (auto& s : next)
            if (!s.dead) {
                links.push_back({s.parent, s.cut});
                layer.push_back(std::move(s));
            }
        seen += layer.size();
        if (seen > state_budget)
            throw CapacityError("exact min cut: frontier state budget of " + std::to_string(state_budget) +
                                " exhausted on " + std::to_string(n) + " vertices");
        history.push_back(std::move(links));
        frontier = std::move(next_frontier);
        if (layer.empty()) return std::nullopt;
    }

    std::uint32_t at = 0;
    for (std::uint32_t i = 1; i < layer.size(); ++i)
        if (layer[i].cuts < layer[at].cuts) at = i;
    std::vector<Vertex> cut;
    for (std::size_t step = n; step-- > 0;) {
        const Link& l = history[step][at];
        if (l.cut) cut.push_back(order[step]);
        at = l.parent;
    }
    std::sort(cut.begin(), cut.end());
    return cut;
}

}  // namespace detail

/// Minimum (exact) or small (heuristic) cut set.
inline CutReport min_cut_set(const Graph& g, CutMode mode, const CutOptions& opt = {}) {
    const std::size_t n = g.vertex_count();
    CutReport r;
    if (mode == CutMode::exact) {
        if (n > opt.exact_cap)
            throw CapacityError("exact min cut set: " + std::to_string(n) + " vertices exceeds cap " +
                                std::to_string(opt.exact_cap));
        std::size_t width = 0;
        std::vector<Vertex> order;
        if (n > 20) order = detail::narrow_order(g, &width);
        if (n <= 20) {
            r.cut_set = detail::brute_force_min_cut(g);
        } else if (width <= std::min<std::size_t>(opt.frontier_width_limit, 250)) {
            auto incumbent = detail::heuristic_cut(g);
            r.cut_set = incumbent;
            if (!incumbent.empty())
                if (auto better = detail::frontier_min_cut(g, order, incumbent.size() - 1, opt.state_budget))
                    r.cut_set = *better;
        } else {
            r.cut_set = detail::CutBranchAndBound(g, detail::heuristic_cut(g), opt.node_budget).solve();
        }
        r.is_minimum = true;
    } else {
        r.cut_set = detail::heuristic_cut(g);
    }
    r.largest_remaining_component = largest_component_without(g, r.cut_set);
    r.valid = detail::balanced(r.largest_remaining_component, n);
    return r;
}

/// min over nonempty A with |A| ≤ |V|/2 of |∂A|/|A|, ∂A the outer vertex boundary.
inline Rational cheeger(const Graph& g, std::size_t cap = 20) {
    const std::size_t n = g.vertex_count();
    if (n < 2) throw ValidationError("cheeger constant needs at least 2 vertices");
    if (n > cap || n > 30)
        throw CapacityError("cheeger: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
    std::vector<std::uint32_t> nb(n, 0);
    for (auto [u, v] : g.edges()) {
        nb[u] |= 1u << v;
        nb[v] |= 1u << u;
    }
    Rational best(std::numeric_limits<std::int64_t>::max());
    bool have = false;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t a = 1; a < limit; ++a) {
        auto size = static_cast<std::size_t>(std::popcount(a));
        if (2 * size > n) continue;
        std::uint32_t reach = 0;
        for (std::uint64_t b = a; b; b &= b - 1) reach |= nb[std::countr_zero(b)];
        reach &= ~static_cast<std::uint32_t>(a);
        Rational h(std::popcount(reach), static_cast<std::int64_t>(size));
        if (!have || h < best) {
            best = h;
            have = true;
        }
    }
    return best;
}

}  // namespace cwire
