#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "../error.hpp"

namespace cwire::geo {

using Point = std::vector<double>;

/// Height at which a unit horizontal step in the half-space model has
/// hyperbolic length exactly 1.
inline const double h0 = 1.0 / std::sqrt(2.0 * (std::cosh(1.0) - 1.0));

/// Largest coordinate count handled by the fixed-size segment code.
inline constexpr std::size_t kMaxArity = 8;

enum class SpaceKind { l2, linf, halfspace, product_l2, product_max };

/// Metric model space. Points are flat coordinate vectors; a product's
/// coordinates are its factors' coordinates concatenated in order.
/// HalfSpace(q) uses (x_1..x_{q-1}; x_q) with x_q > 0.
struct Space {
    SpaceKind kind = SpaceKind::l2;
    std::size_t dim = 0;
    std::vector<Space> parts;
    /// Optional restriction of a one-dimensional Euclidean factor to [lo, hi].
    std::optional<std::pair<double, double>> interval;

    static Space euclidean(std::size_t d) { return leaf(SpaceKind::l2, d); }
    static Space linf(std::size_t d) { return leaf(SpaceKind::linf, d); }
    static Space halfspace(std::size_t q) {
        if (q < 2) throw ValidationError("half-space model needs dimension >= 2");
        return leaf(SpaceKind::halfspace, q);
    }
    static Space segment(double lo, double hi) {
        if (!(lo < hi)) throw ValidationError("interval factor needs lo < hi");
        Space s = leaf(SpaceKind::l2, 1);
        s.interval = std::make_pair(lo, hi);
        return s;
    }
    static Space product_l2(std::vector<Space> ps) { return product(SpaceKind::product_l2, std::move(ps)); }
    static Space product_max(std::vector<Space> ps) { return product(SpaceKind::product_max, std::move(ps)); }

    bool is_product() const { return kind == SpaceKind::product_l2 || kind == SpaceKind::product_max; }
    bool is_euclidean() const { return kind == SpaceKind::l2 || kind == SpaceKind::linf; }

    std::size_t arity() const {
        if (!is_product()) return dim;
        std::size_t a = 0;
        for (const auto& p : parts) a += p.arity();
        return a;
    }

    std::string describe() const {
        switch (kind) {
            case SpaceKind::l2:
                if (interval)
                    return "[" + fmt(interval->first) + "," + fmt(interval->second) + "]";
                return "E" + std::to_string(dim);
            case SpaceKind::linf: return "Linf" + std::to_string(dim);
            case SpaceKind::halfspace: return "H" + std::to_string(dim);
            default: break;
        }
        std::string s = kind == SpaceKind::product_l2 ? "L2(" : "Max(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " x " : "") + parts[i].describe();
        return s + ")";
    }

    friend bool operator==(const Space&, const Space&) = default;

private:
    static Space leaf(SpaceKind k, std::size_t d) {
        if (d < 1) throw ValidationError("space dimension must be positive");
        Space s;
        s.kind = k;
        s.dim = d;
        return s;
    }
    static Space product(SpaceKind k, std::vector<Space> ps) {
        if (ps.empty()) throw ValidationError("product space needs at least one factor");
        Space s;
        s.kind = k;
        s.parts = std::move(ps);
        if (s.arity() > kMaxArity) throw ValidationError("space arity above " + std::to_string(kMaxArity));
        return s;
    }
    static std::string fmt(double x) {
        std::string s = std::to_string(x);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }
};

namespace detail {

inline double sq(double x) { return x * x; }

// Hyperbolic distance from the Euclidean gap and the two heights:
// cosh d = 1 + |p-q|^2 / (2 p_q q_q), written with asinh for accuracy near 0.
inline double hyperbolic_from(double euclid, double hp, double hq) {
    return 2.0 * std::asinh(euclid / (2.0 * std::sqrt(hp * hq)));
}

inline double distance_at(const Space& s, const double* p, const double* q) {
    switch (s.kind) {
        case SpaceKind::l2: {
            double a = 0;
            for (std::size_t i = 0; i < s.dim; ++i) a += sq(p[i] - q[i]);
            return std::sqrt(a);
        }
        case SpaceKind::linf: {
            double a = 0;
            for (std::size_t i = 0; i < s.dim; ++i) a = std::max(a, std::abs(p[i] - q[i]));
            return a;
        }
        case SpaceKind::halfspace: {
            double a = 0;
            for (std::size_t i = 0; i < s.dim; ++i) a += sq(p[i] - q[i]);
            return hyperbolic_from(std::sqrt(a), p[s.dim - 1], q[s.dim - 1]);
        }
        case SpaceKind::product_l2: {
            double a = 0;
            for (const auto& f : s.parts) {
                a += sq(distance_at(f, p, q));
                p += f.arity();
                q += f.arity();
            }
            return std::sqrt(a);
        }
        case SpaceKind::product_max: {
            double a = 0;
            for (const auto& f : s.parts) {
                a = std::max(a, distance_at(f, p, q));
                p += f.arity();
                q += f.arity();
            }
            return a;
        }
    }
    return 0;
}

inline void validate_at(const Space& s, const double* p, std::string& why) {
    if (s.is_product()) {
        for (const auto& f : s.parts) {
            validate_at(f, p, why);
            p += f.arity();
        }
        return;
    }
    for (std::size_t i = 0; i < s.dim; ++i)
        if (!std::isfinite(p[i])) why = "non-finite coordinate";
    if (s.kind == SpaceKind::halfspace && !(p[s.dim - 1] > 0))
        why = "half-space point with last coordinate " + std::to_string(p[s.dim - 1]) + " <= 0";
    if (s.interval && (p[0] < s.interval->first || p[0] > s.interval->second))
        why = "coordinate " + std::to_string(p[0]) + " outside " + s.describe();
}

}  // namespace detail

inline void validate_point(const Space& s, const Point& p) {
    if (p.size() != s.arity())
        throw ValidationError("point has " + std::to_string(p.size()) + " coordinates, " + s.describe() + " needs " +
                              std::to_string(s.arity()));
    std::string why;
    detail::validate_at(s, p.data(), why);
    if (!why.empty()) throw ValidationError(why);
}

/// Metric distance. Products combine factor distances by the L2 or max rule.
inline double distance(const Space& s, const Point& p, const Point& q) {
    validate_point(s, p);
    validate_point(s, q);
    return detail::distance_at(s, p.data(), q.data());
}

/// Volume of a closed ball of radius r. Products use the product of factor
/// balls, which contains the ball, so the value is an upper bound there.
inline double ball_volume(const Space& s, double r) {
    using std::numbers::pi;
    if (r < 0) throw ValidationError("ball radius must be nonnegative");
    switch (s.kind) {
        case SpaceKind::l2: {
            if (s.interval) return std::min(2 * r, s.interval->second - s.interval->first);
            const double k = static_cast<double>(s.dim);
            return std::pow(pi, k / 2) / std::tgamma(k / 2 + 1) * std::pow(r, k);
        }
        case SpaceKind::linf: return std::pow(2 * r, static_cast<double>(s.dim));
        case SpaceKind::halfspace:
            if (s.dim == 2) return 4 * pi * detail::sq(std::sinh(r / 2));
            if (s.dim == 3) return pi * (std::sinh(2 * r) - 2 * r);
            throw UnsupportedError("no closed-form ball volume for " + s.describe());
        default: {
            double v = 1;
            for (const auto& f : s.parts) v *= ball_volume(f, r);
            return v;
        }
    }
}

/// Upper bound on the metric speed of t -> a + t(b - a), t in [0,1].
inline double speed_bound(const Space& s, const double* a, const double* b) {
    switch (s.kind) {
        case SpaceKind::l2:
        case SpaceKind::linf: {
            double e = 0, m = 0;
            for (std::size_t i = 0; i < s.dim; ++i) {
                e += detail::sq(b[i] - a[i]);
                m = std::max(m, std::abs(b[i] - a[i]));
            }
            return s.kind == SpaceKind::l2 ? std::sqrt(e) : m;
        }
        case SpaceKind::halfspace: {
            double e = 0;
            for (std::size_t i = 0; i < s.dim; ++i) e += detail::sq(b[i] - a[i]);
            return std::sqrt(e) / std::min(a[s.dim - 1], b[s.dim - 1]);
        }
        default: {
            double acc = 0;
            for (const auto& f : s.parts) {
                const double v = speed_bound(f, a, b);
                acc = s.kind == SpaceKind::product_l2 ? acc + v * v : std::max(acc, v);
                a += f.arity();
                b += f.arity();
            }
            return s.kind == SpaceKind::product_l2 ? std::sqrt(acc) : acc;
        }
    }
}

}  // namespace cwire::geo
