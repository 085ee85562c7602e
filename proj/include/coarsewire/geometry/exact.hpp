#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "space.hpp"

// Exact predicates for coordinate segments. Doubles are dyadic rationals, so
// every input converts to cpp_rational without loss.

namespace cwire::geo::detail {

using Exact = boost::multiprecision::cpp_rational;
using Int128 = __int128;

inline Exact clamp01(const Exact& x) { return x < 0 ? Exact(0) : (x > 1 ? Exact(1) : x); }

/// Squared Euclidean distance between segments [p0,p1] and [q0,q1], exactly.
inline Exact segment_distance_sq_exact(std::size_t dim, const double* p0, const double* p1, const double* q0,
                                       const double* q1) {
    std::array<Exact, kMaxArity> u, v, w;
    Exact a = 0, b = 0, c = 0, d = 0, e = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        const Exact P0(p0[i]), Q0(q0[i]);
        u[i] = Exact(p1[i]) - P0;
        v[i] = Exact(q1[i]) - Q0;
        w[i] = P0 - Q0;
        a += u[i] * u[i];
        b += u[i] * v[i];
        c += v[i] * v[i];
        d += u[i] * w[i];
        e += v[i] * w[i];
    }
    auto f = [&](const Exact& s, const Exact& t) {
        Exact acc = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            const Exact x = w[i] + s * u[i] - t * v[i];
            acc += x * x;
        }
        return acc;
    };
    // Convex quadratic on the unit square: the minimum is the interior
    // critical point or lies on one of the four sides.
    std::optional<Exact> best;
    auto offer = [&](const Exact& s, const Exact& t) {
        Exact val = f(s, t);
        if (!best || val < *best) best = std::move(val);
    };
    const Exact det = a * c - b * b;
    if (det > 0) {
        const Exact s = (b * e - c * d) / det, t = (a * e - b * d) / det;
        if (s >= 0 && s <= 1 && t >= 0 && t <= 1) offer(s, t);
    }
    for (int side = 0; side < 2; ++side) {
        const Exact s(side);
        offer(s, c > 0 ? clamp01((b * s + e) / c) : Exact(0));
        const Exact t(side);
        offer(a > 0 ? clamp01((b * t - d) / a) : Exact(0), t);
    }
    return *best;
}

namespace linf_lp {

struct Row {
    Exact s, t, z, rhs;  // s·S + t·T + z·Z <= rhs
};

inline std::vector<Row> rows(std::size_t dim, const double* p0, const double* p1, const double* q0,
                             const double* q1) {
    std::vector<Row> rows;
    rows.push_back({-1, 0, 0, 0});
    rows.push_back({1, 0, 0, 1});
    rows.push_back({0, -1, 0, 0});
    rows.push_back({0, 1, 0, 1});
    for (std::size_t i = 0; i < dim; ++i) {
        const Exact c = Exact(p0[i]) - Exact(q0[i]);
        const Exact u = Exact(p1[i]) - Exact(p0[i]);
        const Exact v = Exact(q1[i]) - Exact(q0[i]);
        rows.push_back({u, -v, -1, -c});
        rows.push_back({-u, v, -1, c});
    }
    return rows;
}

inline Exact det3(const Exact& a1, const Exact& a2, const Exact& a3, const Exact& b1, const Exact& b2, const Exact& b3,
                  const Exact& c1, const Exact& c2, const Exact& c3) {
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1);
}

}  // namespace linf_lp

/// L∞ distance between segments by enumerating every vertex of the feasible
/// region of min z s.t. |c_i + u_i s - v_i t| ≤ z, s, t ∈ [0,1].
inline Exact segment_distance_linf_enumerate(std::size_t dim, const double* p0, const double* p1, const double* q0,
                                             const double* q1) {
    using linf_lp::det3;
    const auto rows = linf_lp::rows(dim, p0, p1, q0, q1);
    const std::size_t m = rows.size();
    std::optional<Exact> best;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                const linf_lp::Row &A = rows[i], &B = rows[j], &C = rows[k];
                const Exact D = det3(A.s, A.t, A.z, B.s, B.t, B.z, C.s, C.t, C.z);
                if (D == 0) continue;
                const Exact s = det3(A.rhs, A.t, A.z, B.rhs, B.t, B.z, C.rhs, C.t, C.z) / D;
                const Exact t = det3(A.s, A.rhs, A.z, B.s, B.rhs, B.z, C.s, C.rhs, C.z) / D;
                const Exact z = det3(A.s, A.t, A.rhs, B.s, B.t, B.rhs, C.s, C.t, C.rhs) / D;
                if (best && z >= *best) continue;
                bool ok = true;
                for (const auto& r : rows)
                    if (r.s * s + r.t * t + r.z * z > r.rhs) {
                        ok = false;
                        break;
                    }
                if (ok) best = z;
            }
    return *best;
}

/// Same value as segment_distance_linf_enumerate. The optimal basis is found
/// in doubles and accepted only if the exact vertex is feasible and its
/// multipliers are nonnegative; otherwise falls back to enumeration.
inline Exact segment_distance_linf_exact(std::size_t dim, const double* p0, const double* p1, const double* q0,
                                         const double* q1) {
    using linf_lp::det3;
    const auto rows = linf_lp::rows(dim, p0, p1, q0, q1);
    const std::size_t m = rows.size();
    {
        struct RowD {
            double s, t, z, rhs;
        };
        std::vector<RowD> rd;
        for (const auto& r : rows)
            rd.push_back({r.s.convert_to<double>(), r.t.convert_to<double>(), r.z.convert_to<double>(),
                          r.rhs.convert_to<double>()});
        auto det3d = [](double a1, double a2, double a3, double b1, double b2, double b3, double c1, double c2,
                        double c3) { return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1); };
        double scale = 1;
        for (const auto& r : rd) scale = std::max({scale, std::abs(r.s), std::abs(r.t), std::abs(r.rhs)});
        double best_z = INFINITY;
        std::size_t bi = m, bj = m, bk = m;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k) {
                    const RowD &A = rd[i], &B = rd[j], &C = rd[k];
                    const double D = det3d(A.s, A.t, A.z, B.s, B.t, B.z, C.s, C.t, C.z);
                    if (D == 0) continue;
                    const double s = det3d(A.rhs, A.t, A.z, B.rhs, B.t, B.z, C.rhs, C.t, C.z) / D;
                    const double t = det3d(A.s, A.rhs, A.z, B.s, B.rhs, B.z, C.s, C.rhs, C.z) / D;
                    const double z = det3d(A.s, A.t, A.rhs, B.s, B.t, B.rhs, C.s, C.t, C.rhs) / D;
                    if (!(z < best_z)) continue;
                    bool ok = true;
                    for (const auto& r : rd)
                        if (r.s * s + r.t * t + r.z * z > r.rhs + 1e-9 * scale) {
                            ok = false;
                            break;
                        }
                    if (ok) best_z = z, bi = i, bj = j, bk = k;
                }
        if (bi < m) {
            const linf_lp::Row &A = rows[bi], &B = rows[bj], &C = rows[bk];
            const Exact D = det3(A.s, A.t, A.z, B.s, B.t, B.z, C.s, C.t, C.z);
            if (D != 0) {
                const Exact s = det3(A.rhs, A.t, A.z, B.rhs, B.t, B.z, C.rhs, C.t, C.z) / D;
                const Exact t = det3(A.s, A.rhs, A.z, B.s, B.rhs, B.z, C.s, C.rhs, C.z) / D;
                const Exact z = det3(A.s, A.t, A.rhs, B.s, B.t, B.rhs, C.s, C.t, C.rhs) / D;
                bool ok = true;
                for (const auto& r : rows)
                    if (r.s * s + r.t * t + r.z * z > r.rhs) {
                        ok = false;
                        break;
                    }
                // Multipliers: lA·A + lB·B + lC·C = (0, 0, -1).
                const Exact zero(0), neg(-1);
                ok = ok && det3(zero, zero, neg, B.s, B.t, B.z, C.s, C.t, C.z) / D >= 0 &&
                     det3(A.s, A.t, A.z, zero, zero, neg, C.s, C.t, C.z) / D >= 0 &&
                     det3(A.s, A.t, A.z, B.s, B.t, B.z, zero, zero, neg) / D >= 0;
                if (ok) return z;
            }
        }
    }

    return segment_distance_linf_enumerate(dim, p0, p1, q0, q1);
}

/// Largest double that is at most the exact value.
inline double lower_double(const Exact& x) {
    double d = x.convert_to<double>();
    while (Exact(d) > x) d = std::nextafter(d, -INFINITY);
    return d;
}

/// Largest double whose square is at most the exact value (x ≥ 0).
inline double lower_sqrt(const Exact& x) {
    double d = std::sqrt(x.convert_to<double>());
    while (d > 0 && Exact(d) * Exact(d) > x) d = std::nextafter(d, 0.0);
    return d;
}

// ---- fast exact filters for 3D integer coordinates ----

inline constexpr double kIntLimit = 1099511627776.0;  // 2^40

inline bool small_integer(double x) { return std::abs(x) <= kIntLimit && std::floor(x) == x; }

struct Int3 {
    std::int64_t x, y, z;
};

inline Int3 diff3(const double* a, const double* b) {
    return {static_cast<std::int64_t>(a[0] - b[0]), static_cast<std::int64_t>(a[1] - b[1]),
            static_cast<std::int64_t>(a[2] - b[2])};
}

struct Wide3 {
    Int128 x, y, z;
    bool zero() const { return x == 0 && y == 0 && z == 0; }
    double norm2() const {
        const double a = static_cast<double>(x), b = static_cast<double>(y), c = static_cast<double>(z);
        return a * a + b * b + c * c;
    }
};

inline Wide3 cross(const Int3& a, const Int3& b) {
    return {Int128(a.y) * b.z - Int128(a.z) * b.y, Int128(a.z) * b.x - Int128(a.x) * b.z,
            Int128(a.x) * b.y - Int128(a.y) * b.x};
}

/// Line-based filter for 3D segments with integer coordinates of magnitude at
/// most 2^40. Returns true when the segments are certainly at Euclidean
/// distance ≥ r (r > 0), or certainly disjoint when r == 0. False means
/// undecided. The distance between the supporting lines is a lower bound on
/// the segment distance; it is computed exactly in 128-bit integers and
/// compared in doubles with a relative margin that covers the rounding.
inline bool int_lines_apart(const double* p0, const double* p1, const double* q0, const double* q1, double r) {
    const Int3 u = diff3(p1, p0), v = diff3(q1, q0), w = diff3(p0, q0);
    const Wide3 n = cross(u, v);
    const bool u0 = u.x == 0 && u.y == 0 && u.z == 0, v0 = v.x == 0 && v.y == 0 && v.z == 0;
    if (u0 && v0) return false;
    if (!n.zero()) {
        const Int128 wn = Int128(w.x) * n.x + Int128(w.y) * n.y + Int128(w.z) * n.z;
        if (r == 0) return wn != 0;
        const double a = static_cast<double>(wn);
        return a * a >= r * r * n.norm2() * (1 + 1e-12);
    }
    // Parallel (or one segment is a point): distance from a point to the other line.
    const Int3& dir = u0 ? v : u;
    const Wide3 m = cross(w, dir);
    if (r == 0) return !m.zero();
    const double d2 = static_cast<double>(dir.x) * dir.x + static_cast<double>(dir.y) * dir.y +
                      static_cast<double>(dir.z) * dir.z;
    return m.norm2() >= r * r * d2 * (1 + 1e-12);
}

/// Two segments that share the endpoint P, running to A and B, meet only at
/// P unless they point the same way along one line.
inline bool shared_end_overlap(std::size_t dim, const double* P, const double* A, const double* B) {
    bool ints = true;
    for (std::size_t i = 0; ints && i < dim; ++i)
        ints = small_integer(P[i]) && small_integer(A[i]) && small_integer(B[i]);
    if (ints) {
        std::array<Int128, kMaxArity> a, b;
        Int128 dot = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = static_cast<std::int64_t>(A[i]) - static_cast<std::int64_t>(P[i]);
            b[i] = static_cast<std::int64_t>(B[i]) - static_cast<std::int64_t>(P[i]);
            dot += a[i] * b[i];
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                if (a[i] * b[j] != a[j] * b[i]) return false;
        return dot > 0;
    }
    std::array<Exact, kMaxArity> a, b;
    Exact dot = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        a[i] = Exact(A[i]) - Exact(P[i]);
        b[i] = Exact(B[i]) - Exact(P[i]);
        dot += a[i] * b[i];
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return dot > 0;
}

}  // namespace cwire::geo::detail
