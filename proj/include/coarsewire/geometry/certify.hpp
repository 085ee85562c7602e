#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embedding.hpp"
#include "exact.hpp"
#include "segment.hpp"

namespace cwire::geo {

struct FeatureRef {
    bool is_edge = false;
    std::size_t index = 0;  ///< vertex index, or edge index into graph.edges()
    friend bool operator==(const FeatureRef&, const FeatureRef&) = default;
};

enum class CertStatus { pass, fail, inconclusive };

inline std::string to_string(CertStatus s) {
    switch (s) {
        case CertStatus::pass: return "pass";
        case CertStatus::fail: return "fail";
        case CertStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct PairMargin {
    FeatureRef a, b;
    double lower = 0;    ///< certified lower bound on the pair distance
    double sampled = 0;  ///< smallest distance actually evaluated (inf if none)
};

struct ThicknessCertificate {
    CertStatus status = CertStatus::pass;
    double target = 0;
    double tol = 0;
    double certified_lower_bound = std::numeric_limits<double>::infinity();
    double sampled_min = std::numeric_limits<double>::infinity();
    bool exact = false;
    double lipschitz = 0;  ///< largest metric speed bound of a refined segment
    double step = 1;       ///< smallest parameter width reached by refinement
    bool simple = true;    ///< every path is an injective curve (and, if asked, incident paths meet only at their vertex)
    std::string problem;   ///< first embedding defect found, if any
    std::size_t segment_pairs = 0;
    std::size_t boxes = 0;
    std::vector<PairMargin> worst;  ///< smallest margins, one entry per feature pair

    bool passed() const { return status == CertStatus::pass; }
};

struct ThicknessOptions {
    bool exact = true;                   ///< exact arithmetic in Euclidean L2 / L∞ spaces
    bool check_simple = true;            ///< each path is an injective curve avoiding its own end vertices elsewhere
    bool check_incident = false;         ///< also require paths of edges sharing a vertex to meet only there
    std::size_t box_budget = 1u << 20;   ///< parameter boxes per segment pair
    std::size_t worst_count = 8;
    /// When nonempty, only pairs with at least one marked feature are checked.
    std::vector<char> anchor_vertices, anchor_edges;
};

namespace detail {

/// Flat segment storage. A vertex feature is a zero-length segment.
struct SegTable {
    std::size_t m = 0;
    std::size_t n = 0;                // vertex count; owner >= n means edge owner - n
    std::vector<double> a, b, lo, hi;  // stride m
    std::vector<std::uint32_t> owner, index, count;

    std::size_t size() const { return owner.size(); }
    const double* A(std::size_t i) const { return a.data() + i * m; }
    const double* B(std::size_t i) const { return b.data() + i * m; }
    const double* Lo(std::size_t i) const { return lo.data() + i * m; }
    const double* Hi(std::size_t i) const { return hi.data() + i * m; }

    void add(const double* p, const double* q, std::uint32_t own, std::uint32_t idx, std::uint32_t cnt) {
        for (std::size_t c = 0; c < m; ++c) {
            a.push_back(p[c]);
            b.push_back(q[c]);
            lo.push_back(std::min(p[c], q[c]));
            hi.push_back(std::max(p[c], q[c]));
        }
        owner.push_back(own);
        index.push_back(idx);
        count.push_back(cnt);
    }
};

inline SegTable segments_of(const ThickEmbedding& e) {
    SegTable t;
    t.m = e.space.arity();
    t.n = e.graph.vertex_count();
    for (std::size_t v = 0; v < t.n; ++v) {
        const double* p = e.vertex_points[v].data();
        t.add(p, p, static_cast<std::uint32_t>(v), 0, 0);
    }
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
        const auto& path = e.edge_paths[i];
        const auto cnt = static_cast<std::uint32_t>(path.size() - 1);
        for (std::uint32_t s = 0; s < cnt; ++s)
            t.add(path[s].data(), path[s + 1].data(), static_cast<std::uint32_t>(t.n + i), s, cnt);
    }
    return t;
}

/// Bounding-volume hierarchy over segment boxes, median split on the widest axis.
class Bvh {
public:
    explicit Bvh(const SegTable& t) : t_(t), m_(t.m) {
        perm_.resize(t.size());
        std::iota(perm_.begin(), perm_.end(), 0u);
        if (!perm_.empty()) build(0, perm_.size());
    }

    /// Visit every segment j whose box may lie within `radius` of box (lo, hi).
    /// Pruned subtrees are reported through `pruned`.
    template <class Visit>
    void query(const Space& s, const double* lo, const double* hi, const double& radius, bool& pruned,
               Visit&& visit) const {
        if (nodes_.empty()) return;
        std::vector<std::uint32_t> stack{0};
        while (!stack.empty()) {
            const Node& nd = nodes_[stack.back()];
            stack.pop_back();
            if (box_lower_bound(s, lo, hi, nd_lo(nd), nd_hi(nd)) >= radius * (1 + 1e-12)) {
                pruned = true;
                continue;
            }
            if (nd.left == kLeaf) {
                for (std::uint32_t k = nd.begin; k < nd.end; ++k) {
                    const std::uint32_t j = perm_[k];
                    if (box_lower_bound(s, lo, hi, t_.Lo(j), t_.Hi(j)) >= radius * (1 + 1e-12)) {
                        pruned = true;
                        continue;
                    }
                    visit(j);
                }
            } else {
                stack.push_back(nd.left);
                stack.push_back(nd.left + 1);
            }
        }
    }

private:
    static constexpr std::uint32_t kLeaf = UINT32_MAX;
    struct Node {
        std::uint32_t begin, end, left, box;
    };

    const double* nd_lo(const Node& nd) const { return boxes_.data() + nd.box * 2 * m_; }
    const double* nd_hi(const Node& nd) const { return boxes_.data() + nd.box * 2 * m_ + m_; }

    // Children of an inner node are stored at consecutive indices left, left+1.
    void build(std::size_t begin, std::size_t end) {
        std::vector<std::pair<std::size_t, std::size_t>> todo{{begin, end}};
        nodes_.push_back({});
        std::vector<std::uint32_t> slot{0};
        while (!todo.empty()) {
            auto [b, e] = todo.back();
            todo.pop_back();
            const std::uint32_t id = slot.back();
            slot.pop_back();
            const auto box = static_cast<std::uint32_t>(boxes_.size() / (2 * m_));
            boxes_.resize(boxes_.size() + 2 * m_);
            double* lo = boxes_.data() + box * 2 * m_;
            double* hi = lo + m_;
            std::fill(lo, lo + m_, std::numeric_limits<double>::infinity());
            std::fill(hi, hi + m_, -std::numeric_limits<double>::infinity());
            for (std::size_t k = b; k < e; ++k)
                for (std::size_t c = 0; c < m_; ++c) {
                    lo[c] = std::min(lo[c], t_.Lo(perm_[k])[c]);
                    hi[c] = std::max(hi[c], t_.Hi(perm_[k])[c]);
                }
            Node nd{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e), kLeaf, box};
            if (e - b > 8) {
                std::size_t axis = 0;
                for (std::size_t c = 1; c < m_; ++c)
                    if (hi[c] - lo[c] > hi[axis] - lo[axis]) axis = c;
                const std::size_t mid = (b + e) / 2;
                std::nth_element(perm_.begin() + static_cast<std::ptrdiff_t>(b),
                                 perm_.begin() + static_cast<std::ptrdiff_t>(mid),
                                 perm_.begin() + static_cast<std::ptrdiff_t>(e), [&](std::uint32_t x, std::uint32_t y) {
                                     return t_.Lo(x)[axis] + t_.Hi(x)[axis] < t_.Lo(y)[axis] + t_.Hi(y)[axis];
                                 });
                nd.left = static_cast<std::uint32_t>(nodes_.size());
                nodes_.push_back({});
                nodes_.push_back({});
                todo.push_back({b, mid});
                slot.push_back(nd.left);
                todo.push_back({mid, e});
                slot.push_back(nd.left + 1);
            }
            nodes_[id] = nd;
        }
    }

    const SegTable& t_;
    std::size_t m_;
    std::vector<std::uint32_t> perm_;
    std::vector<Node> nodes_;
    std::vector<double> boxes_;
};

inline void lerp(std::size_t m, const double* a, const double* b, double t, double* out) {
    for (std::size_t c = 0; c < m; ++c) out[c] = a[c] + t * (b[c] - a[c]);
}

struct PairBound {
    double lower = std::numeric_limits<double>::infinity();
    double sampled = std::numeric_limits<double>::infinity();
    bool violated = false;   // a sampled distance fell below target - tol
    bool exhausted = false;  // refinement budget ran out
    std::size_t boxes = 0;
    double step = 1;
    double lipschitz = 0;
};

/// Branch and bound over the parameter square of two segments. Each box is
/// bounded below by the larger of the monotone segment bound and the
/// Lipschitz bound (sample at the centre minus L·δ).
inline PairBound refine_pair(const Space& s, const double* a0, const double* a1, const double* b0, const double* b1,
                             double target, double tol, std::size_t budget) {
    const std::size_t m = s.arity();
    const double LA = speed_bound(s, a0, a1), LB = speed_bound(s, b0, b1);
    const double goal = target - tol / 2;
    PairBound r;
    r.lipschitz = std::max(LA, LB);
    struct Box {
        double s0, s1, t0, t1;
    };
    std::vector<Box> stack{{0, 1, 0, 1}};
    std::array<double, kMaxArity> p0, p1, q0, q1, pc, qc;
    double scale = 1;
    for (std::size_t c = 0; c < m; ++c)
        scale = std::max({scale, std::abs(a0[c]), std::abs(a1[c]), std::abs(b0[c]), std::abs(b1[c])});
    const double slack = 1e-11 * scale;
    while (!stack.empty()) {
        const Box bx = stack.back();
        stack.pop_back();
        ++r.boxes;
        lerp(m, a0, a1, bx.s0, p0.data());
        lerp(m, a0, a1, bx.s1, p1.data());
        lerp(m, b0, b1, bx.t0, q0.data());
        lerp(m, b0, b1, bx.t1, q1.data());
        lerp(m, a0, a1, (bx.s0 + bx.s1) / 2, pc.data());
        lerp(m, b0, b1, (bx.t0 + bx.t1) / 2, qc.data());
        const double sample = distance_at(s, pc.data(), qc.data());
        r.sampled = std::min(r.sampled, sample);
        const double ws = bx.s1 - bx.s0, wt = bx.t1 - bx.t0;
        const double lip = sample - (LA * ws + LB * wt) / 2;
        const double mono = segment_lower_bound(s, p0.data(), p1.data(), q0.data(), q1.data());
        const double lb = std::max(lip, mono) - slack;
        if (sample < target - tol) {
            r.violated = true;
            r.lower = std::min(r.lower, lb);
            return r;
        }
        if (lb >= goal) {
            r.lower = std::min(r.lower, lb);
            continue;
        }
        if (r.boxes >= budget || std::max(LA * ws, LB * wt) < 1e-13 * std::max(1.0, target)) {
            r.exhausted = true;
            r.lower = std::min(r.lower, lb);
            continue;
        }
        if (LA * ws >= LB * wt) {
            const double mid = (bx.s0 + bx.s1) / 2;
            stack.push_back({bx.s0, mid, bx.t0, bx.t1});
            stack.push_back({mid, bx.s1, bx.t0, bx.t1});
            r.step = std::min(r.step, ws / 2);
        } else {
            const double mid = (bx.t0 + bx.t1) / 2;
            stack.push_back({bx.s0, bx.s1, bx.t0, mid});
            stack.push_back({bx.s0, bx.s1, mid, bx.t1});
            r.step = std::min(r.step, wt / 2);
        }
    }
    return r;
}

enum class Relation { thickness, disjoint, shared_end, skip };

struct PairRelation {
    Relation rel = Relation::skip;
    const double* shared = nullptr;  // common point for shared_end
    const double* other_i = nullptr;
    const double* other_j = nullptr;
};

/// How two segments must relate: thickness pairs need distance ≥ ε,
/// segments of incident features must be disjoint or meet only at their
/// common endpoint.
inline PairRelation relate(const ThickEmbedding& e, const SegTable& t, std::size_t i, std::size_t j,
                           bool incident) {
    const std::size_t fi = t.owner[i], fj = t.owner[j];
    const std::size_t n = t.n;
    auto ends = [&](std::size_t f) { return e.graph.edges()[f - n]; };
    // Endpoint of edge-segment k lying on vertex x, or null.
    auto touch = [&](std::size_t k, std::size_t x, const double** other) -> const double* {
        const auto [u, v] = ends(t.owner[k]);
        if (u == x && t.index[k] == 0) {
            *other = t.B(k);
            return t.A(k);
        }
        if (v == x && t.index[k] + 1 == t.count[k]) {
            *other = t.A(k);
            return t.B(k);
        }
        return nullptr;
    };
    PairRelation r;
    if (fi < n && fj < n) {
        r.rel = fi == fj ? Relation::skip : Relation::thickness;
        return r;
    }
    if (fi < n || fj < n) {
        const std::size_t v = fi < n ? fi : fj, k = fi < n ? j : i;
        const auto [a, b] = ends(t.owner[k]);
        if (a != v && b != v) {
            r.rel = Relation::thickness;
            return r;
        }
        const double* other = nullptr;
        r.rel = touch(k, v, &other) ? Relation::skip : Relation::disjoint;
        return r;
    }
    if (fi == fj) {
        const std::uint32_t x = t.index[i], y = t.index[j];
        if (x == y) return r;
        if (x + 1 == y) {
            r = {Relation::shared_end, t.B(i), t.A(i), t.B(j)};
        } else if (y + 1 == x) {
            r = {Relation::shared_end, t.A(i), t.B(i), t.A(j)};
        } else {
            r.rel = Relation::disjoint;
        }
        return r;
    }
    const auto [a, b] = ends(fi);
    const auto [c, d] = ends(fj);
    std::size_t common = SIZE_MAX;
    if (a == c || a == d) common = a;
    if (b == c || b == d) common = b;
    if (common == SIZE_MAX) {
        r.rel = Relation::thickness;
        return r;
    }
    if (!incident) return r;
    const double *oi = nullptr, *oj = nullptr;
    const double* pi = touch(i, common, &oi);
    const double* pj = touch(j, common, &oj);
    if (pi && pj) {
        r = {Relation::shared_end, pi, oi, oj};
    } else {
        r.rel = Relation::disjoint;
    }
    return r;
}

}  // namespace detail

/// Certify that distinct vertices, vertex/non-incident edge pairs and
/// disjoint edge pairs are at distance ≥ ε − tol.
///
/// Euclidean L2 / L∞ embeddings are checked in exact rational arithmetic;
/// other spaces by adaptive bisection with certified lower bounds. The check
/// passes iff certified_lower_bound ≥ ε − tol; it is inconclusive when the
/// refinement budget runs out before either outcome is established.
inline ThicknessCertificate verify_thickness(const ThickEmbedding& e, double eps, double tol,
                                             const ThicknessOptions& opt = {}) {
    validate_embedding(e);
    if (!(eps > 0) || tol < 0) throw ValidationError("thickness target must be positive and tolerance nonnegative");
    using detail::Relation;
    const Space& sp = e.space;
    const std::size_t m = sp.arity();
    ThicknessCertificate cert;
    cert.target = eps;
    cert.tol = tol;
    cert.exact = opt.exact && sp.is_euclidean();

    const auto t = detail::segments_of(e);
    const detail::Bvh bvh(t);

    bool int3 = cert.exact && sp.kind == SpaceKind::l2 && m == 3;
    for (std::size_t k = 0; int3 && k < t.a.size(); ++k)
        int3 = detail::small_integer(t.a[k]) && detail::small_integer(t.b[k]);
    auto disjoint = [&](std::size_t i, std::size_t j) {
        if (int3 && detail::int_lines_apart(t.A(i), t.B(i), t.A(j), t.B(j), 0)) return true;
        return detail::segment_distance_sq_exact(m, t.A(i), t.B(i), t.A(j), t.B(j)) > 0;
    };
    const detail::Exact exact_fail = detail::Exact(eps) - detail::Exact(tol);

    auto anchored = [&](std::size_t seg) {
        const std::size_t f = t.owner[seg];
        if (f < t.n) return !opt.anchor_vertices.empty() && opt.anchor_vertices[f];
        return !opt.anchor_edges.empty() && opt.anchor_edges[f - t.n];
    };
    const bool use_anchors = !opt.anchor_vertices.empty() || !opt.anchor_edges.empty();

    std::unordered_map<std::uint64_t, std::size_t> worst_at;
    auto record = [&](std::size_t i, std::size_t j, double lower, double sampled) {
        cert.certified_lower_bound = std::min(cert.certified_lower_bound, lower);
        cert.sampled_min = std::min(cert.sampled_min, sampled);
        std::size_t fi = t.owner[i], fj = t.owner[j];
        if (fi > fj) std::swap(fi, fj);
        const std::uint64_t key = static_cast<std::uint64_t>(fi) << 32 | fj;
        auto ref = [&](std::size_t f) { return f < t.n ? FeatureRef{false, f} : FeatureRef{true, f - t.n}; };
        auto it = worst_at.find(key);
        if (it != worst_at.end()) {
            auto& w = cert.worst[it->second];
            w.lower = std::min(w.lower, lower);
            w.sampled = std::min(w.sampled, sampled);
        } else {
            worst_at[key] = cert.worst.size();
            cert.worst.push_back({ref(fi), ref(fj), lower, sampled});
        }
    };
    auto defect = [&](std::size_t i, std::size_t j, const char* what) {
        cert.simple = false;
        if (cert.problem.empty()) {
            auto name = [&](std::size_t k) {
                const std::size_t f = t.owner[k];
                if (f < t.n) return "vertex " + std::to_string(f);
                auto [u, v] = e.graph.edges()[f - t.n];
                return "edge " + std::to_string(u) + "-" + std::to_string(v) + " segment " + std::to_string(t.index[k]);
            };
            cert.problem = name(i) + " and " + name(j) + ": " + what;
        }
    };

    bool fail = false, undecided = false, pruned = false;
    const double radius = eps;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const bool ai = use_anchors && anchored(i);
        if (use_anchors && !ai) continue;
        bvh.query(sp, t.Lo(i), t.Hi(i), radius, pruned, [&](std::uint32_t j) {
            if (j == i || (!(use_anchors && !anchored(j)) && j < i)) return;
            const auto rel = detail::relate(e, t, i, j, opt.check_incident);
            if (rel.rel == Relation::skip) return;
            if (rel.rel == Relation::disjoint || rel.rel == Relation::shared_end) {
                if (!opt.check_simple) return;
                for (std::size_t c = 0; c < m; ++c)
                    if (t.Lo(i)[c] > t.Hi(j)[c] || t.Lo(j)[c] > t.Hi(i)[c]) return;
                if (rel.rel == Relation::disjoint) {
                    if (!disjoint(i, j)) defect(i, j, "paths intersect");
                } else if (detail::shared_end_overlap(m, rel.shared, rel.other_i, rel.other_j)) {
                    defect(i, j, "paths overlap beyond their common point");
                }
                return;
            }
            ++cert.segment_pairs;
            if (cert.exact) {
                if (sp.kind == SpaceKind::linf) {
                    detail::Exact g = 0;
                    for (std::size_t c = 0; c < m; ++c) {
                        const double* a0 = t.A(i);
                        const double* a1 = t.B(i);
                        const double* b0 = t.A(j);
                        const double* b1 = t.B(j);
                        const detail::Exact lo1(std::min(a0[c], a1[c])), hi1(std::max(a0[c], a1[c]));
                        const detail::Exact lo2(std::min(b0[c], b1[c])), hi2(std::max(b0[c], b1[c]));
                        const detail::Exact x = lo2 - hi1, y = lo1 - hi2;
                        if (x > g) g = x;
                        if (y > g) g = y;
                    }
                    // The box gap bounds the L∞ distance from below and is exact
                    // for axis-parallel segments; solve the program otherwise.
                    detail::Exact d = g >= detail::Exact(eps)
                                          ? g
                                          : detail::segment_distance_linf_exact(m, t.A(i), t.B(i), t.A(j), t.B(j));
                    const double lower = detail::lower_double(d);
                    record(i, j, lower, d.convert_to<double>());
                    if (d < exact_fail) fail = true;
                } else {
                    if (int3 && detail::int_lines_apart(t.A(i), t.B(i), t.A(j), t.B(j), eps)) {
                        pruned = true;
                        return;
                    }
                    const auto d2 = detail::segment_distance_sq_exact(m, t.A(i), t.B(i), t.A(j), t.B(j));
                    record(i, j, detail::lower_sqrt(d2), std::sqrt(d2.convert_to<double>()));
                    if (exact_fail <= 0 ? false : d2 < exact_fail * exact_fail) fail = true;
                }
                return;
            }
            const auto pb = detail::refine_pair(sp, t.A(i), t.B(i), t.A(j), t.B(j), eps, tol, opt.box_budget);
            cert.boxes += pb.boxes;
            cert.step = std::min(cert.step, pb.step);
            cert.lipschitz = std::max(cert.lipschitz, pb.lipschitz);
            record(i, j, pb.lower, pb.sampled);
            if (pb.violated) fail = true;
            if (pb.exhausted && pb.lower < eps - tol) undecided = true;
        });
    }
    if (pruned) cert.certified_lower_bound = std::min(cert.certified_lower_bound, radius);

    std::sort(cert.worst.begin(), cert.worst.end(),
              [](const PairMargin& x, const PairMargin& y) { return x.lower < y.lower; });
    if (cert.worst.size() > opt.worst_count) cert.worst.resize(opt.worst_count);

    if (fail || !cert.simple)
        cert.status = CertStatus::fail;
    else if (undecided)
        cert.status = CertStatus::inconclusive;
    else
        cert.status = cert.certified_lower_bound >= eps - tol ? CertStatus::pass : CertStatus::fail;
    return cert;
}

struct DiameterEstimate {
    double lower = 0;  ///< distance between two image points actually evaluated
    double upper = 0;  ///< certified upper bound on the image diameter
};

/// Diameter of the image. Euclidean spaces: exact over polyline vertices
/// (distance is convex along segments) up to 6000 distinct points, else the
/// bounding-box diagonal as upper bound. Other spaces: branch and bound on
/// segment pairs with certified upper bounds, until upper − lower ≤ tol.
inline DiameterEstimate embedding_diameter(const ThickEmbedding& e, double tol = 1e-6,
                                           std::size_t box_budget = 1u << 22) {
    validate_embedding(e);
    const Space& sp = e.space;
    const std::size_t m = sp.arity();
    auto t = detail::segments_of(e);
    DiameterEstimate r;
    if (t.size() == 0) return r;
    if (sp.is_euclidean()) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < t.size(); ++i) {
            pts.emplace_back(t.A(i), t.A(i) + m);
            pts.emplace_back(t.B(i), t.B(i) + m);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() <= 6000) {
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    r.lower = std::max(r.lower, detail::distance_at(sp, pts[i].data(), pts[j].data()));
            r.upper = r.lower;
            return r;
        }
        Point lo = pts[0], hi = pts[0];
        for (const auto& p : pts)
            for (std::size_t c = 0; c < m; ++c) lo[c] = std::min(lo[c], p[c]), hi[c] = std::max(hi[c], p[c]);
        r.upper = detail::distance_at(sp, lo.data(), hi.data());
        // Farthest-point sweeps for the lower value.
        std::size_t from = 0;
        for (int sweep = 0; sweep < 4; ++sweep) {
            std::size_t far = from;
            double best = 0;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                const double d = detail::distance_at(sp, pts[from].data(), pts[k].data());
                if (d > best) best = d, far = k;
            }
            r.lower = std::max(r.lower, best);
            from = far;
        }
        if (sp.kind == SpaceKind::linf) r.upper = r.lower = std::max(r.lower, r.upper);
        return r;
    }

    struct Item {
        double ub;
        std::size_t i, j;
        double s0, s1, t0, t1;
        bool operator<(const Item& o) const { return ub < o.ub; }
    };
    std::vector<Item> heap;
    std::array<double, kMaxArity> p0, p1, q0, q1;
    auto bound = [&](Item& it) {
        detail::lerp(m, t.A(it.i), t.B(it.i), it.s0, p0.data());
        detail::lerp(m, t.A(it.i), t.B(it.i), it.s1, p1.data());
        detail::lerp(m, t.A(it.j), t.B(it.j), it.t0, q0.data());
        detail::lerp(m, t.A(it.j), t.B(it.j), it.t1, q1.data());
        it.ub = detail::segment_upper_bound(sp, p0.data(), p1.data(), q0.data(), q1.data());
        for (const double* p : {p0.data(), p1.data()})
            for (const double* q : {q0.data(), q1.data()}) r.lower = std::max(r.lower, detail::distance_at(sp, p, q));
    };
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i; j < t.size(); ++j) {
            Item it{0, i, j, 0, 1, 0, 1};
            bound(it);
            heap.push_back(it);
        }
    std::make_heap(heap.begin(), heap.end());
    std::size_t boxes = 0;
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end());
        Item it = heap.back();
        heap.pop_back();
        if (it.ub - r.lower <= tol || ++boxes > box_budget) {
            r.upper = std::max(r.lower, it.ub);
            return r;
        }
        const double ws = it.s1 - it.s0, wt = it.t1 - it.t0;
        for (int half = 0; half < 2; ++half) {
            Item c = it;
            if (ws >= wt) {
                const double mid = (it.s0 + it.s1) / 2;
                (half ? c.s0 : c.s1) = mid;
            } else {
                const double mid = (it.t0 + it.t1) / 2;
                (half ? c.t0 : c.t1) = mid;
            }
            bound(c);
            heap.push_back(c);
            std::push_heap(heap.begin(), heap.end());
        }
    }
    r.upper = r.lower;
    return r;
}

struct VolumeEstimate {
    double volume = 0;  ///< upper bound on the measure of the 1-neighbourhood
    std::size_t net_points = 0;
    double ball_radius = 0;
    double ball_volume = 0;
    std::size_t samples = 0;
    bool upper_bound = true;
};

/// Net-count volume bound. Points are sampled along every segment so that
/// consecutive samples are within spacing/4; a greedy net keeps samples at
/// mutual distance ≥ 3·spacing/4. Every image point is then within spacing of
/// the net, so count × vol(ball of radius spacing + 1) bounds the volume of
/// the 1-neighbourhood.
inline VolumeEstimate estimate_volume(const ThickEmbedding& e, double spacing) {
    validate_embedding(e);
    if (!(spacing > 0)) throw ValidationError("net spacing must be positive");
    const Space& sp = e.space;
    const std::size_t m = sp.arity();
    VolumeEstimate r;
    r.ball_radius = spacing + 1;
    r.ball_volume = ball_volume(sp, r.ball_radius);
    const double sep = 0.75 * spacing;

    std::vector<double> net;  // stride m
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    const bool hashed = sp.is_euclidean();
    auto cell_of = [&](const double* p, std::size_t c) { return static_cast<std::int64_t>(std::floor(p[c] / sep)); };
    auto key_of = [&](const std::array<std::int64_t, kMaxArity>& cell) {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t c = 0; c < m; ++c) h = (h ^ static_cast<std::uint64_t>(cell[c])) * 1099511628211ull;
        return h;
    };
    auto near = [&](const double* p) {
        if (!hashed) {
            for (std::size_t k = 0; k * m < net.size(); ++k)
                if (detail::distance_at(sp, p, net.data() + k * m) < sep) return true;
            return false;
        }
        std::array<std::int64_t, kMaxArity> base{}, cell{};
        for (std::size_t c = 0; c < m; ++c) base[c] = cell_of(p, c);
        std::size_t total = 1;
        for (std::size_t c = 0; c < m; ++c) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t x = code;
            for (std::size_t c = 0; c < m; ++c) {
                cell[c] = base[c] + static_cast<std::int64_t>(x % 3) - 1;
                x /= 3;
            }
            auto it = grid.find(key_of(cell));
            if (it == grid.end()) continue;
            for (std::uint32_t k : it->second)
                if (detail::distance_at(sp, p, net.data() + std::size_t{k} * m) < sep) return true;
        }
        return false;
    };
    auto offer = [&](const double* p) {
        ++r.samples;
        if (near(p)) return;
        const auto id = static_cast<std::uint32_t>(net.size() / m);
        net.insert(net.end(), p, p + m);
        if (hashed) {
            std::array<std::int64_t, kMaxArity> cell{};
            for (std::size_t c = 0; c < m; ++c) cell[c] = cell_of(p, c);
            grid[key_of(cell)].push_back(id);
        }
    };
    for (const auto& p : e.vertex_points) offer(p.data());
    std::array<double, kMaxArity> q;
    for (const auto& path : e.edge_paths)
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
            const double L = speed_bound(sp, path[s].data(), path[s + 1].data());
            const auto steps = static_cast<std::size_t>(std::ceil(L * 4 / spacing)) + 1;
            for (std::size_t k = 0; k <= steps; ++k) {
                detail::lerp(m, path[s].data(), path[s + 1].data(), static_cast<double>(k) / steps, q.data());
                offer(q.data());
            }
        }
    r.net_points = net.size() / m;
    r.volume = static_cast<double>(r.net_points) * r.ball_volume;
    return r;
}

}  // namespace cwire::geo
