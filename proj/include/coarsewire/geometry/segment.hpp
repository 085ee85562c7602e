#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "space.hpp"

namespace cwire::geo::detail {

inline double clamp01(double x) { return x < 0 ? 0 : (x > 1 ? 1 : x); }

/// Euclidean distance between segments [p0,p1] and [q0,q1] in R^dim.
inline double segment_distance_l2(std::size_t dim, const double* p0, const double* p1, const double* q0,
                                  const double* q1) {
    double a = 0, b = 0, c = 0, d = 0, e = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double u = p1[i] - p0[i], v = q1[i] - q0[i], w = p0[i] - q0[i];
        a += u * u;
        b += u * v;
        c += v * v;
        d += u * w;
        e += v * w;
    }
    double s = 0, t = 0;
    if (a == 0 && c == 0) {
        s = t = 0;
    } else if (a == 0) {
        t = clamp01(e / c);
    } else if (c == 0) {
        s = clamp01(-d / a);
    } else {
        const double det = a * c - b * b;
        s = det > 0 ? clamp01((b * e - c * d) / det) : 0;
        t = (b * s + e) / c;
        if (t < 0) {
            t = 0;
            s = clamp01(-d / a);
        } else if (t > 1) {
            t = 1;
            s = clamp01((b - d) / a);
        }
    }
    double acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double x = p0[i] + s * (p1[i] - p0[i]) - q0[i] - t * (q1[i] - q0[i]);
        acc += x * x;
    }
    return std::sqrt(acc);
}

/// Gap between the coordinate intervals [lo1,hi1] and [lo2,hi2].
inline double gap(double lo1, double hi1, double lo2, double hi2) {
    return std::max({0.0, lo2 - hi1, lo1 - hi2});
}

/// Lower bound on the metric distance between any point of box A and any
/// point of box B (boxes in coordinates).
inline double box_lower_bound(const Space& s, const double* loA, const double* hiA, const double* loB,
                              const double* hiB) {
    switch (s.kind) {
        case SpaceKind::l2:
        case SpaceKind::halfspace: {
            double e = 0;
            for (std::size_t i = 0; i < s.dim; ++i) e += sq(gap(loA[i], hiA[i], loB[i], hiB[i]));
            if (s.kind == SpaceKind::l2) return std::sqrt(e);
            return hyperbolic_from(std::sqrt(e), hiA[s.dim - 1], hiB[s.dim - 1]);
        }
        case SpaceKind::linf: {
            double m = 0;
            for (std::size_t i = 0; i < s.dim; ++i) m = std::max(m, gap(loA[i], hiA[i], loB[i], hiB[i]));
            return m;
        }
        default: {
            double acc = 0;
            for (const auto& f : s.parts) {
                const double v = box_lower_bound(f, loA, hiA, loB, hiB);
                acc = s.kind == SpaceKind::product_l2 ? acc + v * v : std::max(acc, v);
                const std::size_t k = f.arity();
                loA += k, hiA += k, loB += k, hiB += k;
            }
            return s.kind == SpaceKind::product_l2 ? std::sqrt(acc) : acc;
        }
    }
}

/// Lower bound on the metric distance between coordinate segments
/// [a0,a1] and [b0,b1]. Exact for Euclidean L2 and for half-space segments
/// at constant height; otherwise it tightens as the segments shrink.
inline double segment_lower_bound(const Space& s, const double* a0, const double* a1, const double* b0,
                                  const double* b1) {
    switch (s.kind) {
        case SpaceKind::l2: return segment_distance_l2(s.dim, a0, a1, b0, b1);
        case SpaceKind::halfspace: {
            const double e = segment_distance_l2(s.dim, a0, a1, b0, b1);
            const std::size_t h = s.dim - 1;
            return hyperbolic_from(e, std::max(a0[h], a1[h]), std::max(b0[h], b1[h]));
        }
        case SpaceKind::linf: {
            double m = 0;
            for (std::size_t i = 0; i < s.dim; ++i)
                m = std::max(m, gap(std::min(a0[i], a1[i]), std::max(a0[i], a1[i]), std::min(b0[i], b1[i]),
                                    std::max(b0[i], b1[i])));
            return m;
        }
        default: {
            double acc = 0;
            for (const auto& f : s.parts) {
                const double v = segment_lower_bound(f, a0, a1, b0, b1);
                acc = s.kind == SpaceKind::product_l2 ? acc + v * v : std::max(acc, v);
                const std::size_t k = f.arity();
                a0 += k, a1 += k, b0 += k, b1 += k;
            }
            return s.kind == SpaceKind::product_l2 ? std::sqrt(acc) : acc;
        }
    }
}

/// Upper bound on the metric distance between points of the two segments.
/// Exact for Euclidean factors, where distance is convex and peaks at corners.
inline double segment_upper_bound(const Space& s, const double* a0, const double* a1, const double* b0,
                                  const double* b1) {
    switch (s.kind) {
        case SpaceKind::l2:
        case SpaceKind::linf: {
            double m = 0;
            for (const double* p : {a0, a1})
                for (const double* q : {b0, b1}) m = std::max(m, distance_at(s, p, q));
            return m;
        }
        case SpaceKind::halfspace: {
            double e = 0;
            for (const double* p : {a0, a1})
                for (const double* q : {b0, b1}) {
                    double x = 0;
                    for (std::size_t i = 0; i < s.dim; ++i) x += sq(p[i] - q[i]);
                    e = std::max(e, x);
                }
            const std::size_t h = s.dim - 1;
            return hyperbolic_from(std::sqrt(e), std::min(a0[h], a1[h]), std::min(b0[h], b1[h]));
        }
        default: {
            double acc = 0;
            for (const auto& f : s.parts) {
                const double v = segment_upper_bound(f, a0, a1, b0, b1);
                acc = s.kind == SpaceKind::product_l2 ? acc + v * v : std::max(acc, v);
                const std::size_t k = f.arity();
                a0 += k, a1 += k, b0 += k, b1 += k;
            }
            return s.kind == SpaceKind::product_l2 ? std::sqrt(acc) : acc;
        }
    }
}

}  // namespace cwire::geo::detail
