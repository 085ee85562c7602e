#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "geometry/embedding.hpp"
#include "wiring.hpp"

// SVG scenes. Euclidean points are drawn by their first two coordinates;
// when the space has a half-space factor the picture is (x, log height) of
// that factor, so horocycles become horizontal lines.

namespace cwire::svg {

namespace detail {

struct Plane {
    std::size_t x = 0, y = 1;  // coordinate indices
    bool log_y = false;
    bool flat = false;  // one-dimensional: y = 0
};

inline Plane plane_for(const geo::Space& s) {
    Plane p;
    std::size_t offset = 0;
    auto find = [&](auto&& self, const geo::Space& f) -> bool {
        if (f.is_product()) {
            for (const auto& g : f.parts)
                if (self(self, g)) return true;
            return false;
        }
        if (f.kind == geo::SpaceKind::halfspace) {
            p.x = offset;
            p.y = offset + f.dim - 1;
            p.log_y = true;
            return true;
        }
        offset += f.dim;
        return false;
    };
    if (!find(find, s)) {
        p.x = 0;
        p.y = 1;
        p.flat = s.arity() < 2;
    }
    return p;
}

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace detail

/// Render an embedding: edge paths as polylines, vertices as dots.
inline std::string scene(const geo::ThickEmbedding& e, double width = 800) {
    const auto pl = detail::plane_for(e.space);
    auto project = [&](const geo::Point& p) {
        const double x = p[pl.x];
        const double y = pl.flat ? 0.0 : (pl.log_y ? std::log(p[pl.y]) : p[pl.y]);
        return std::pair{x, y};
    };
    double lx = std::numeric_limits<double>::infinity(), hx = -lx, ly = lx, hy = -lx;
    auto grow = [&](const geo::Point& p) {
        auto [x, y] = project(p);
        lx = std::min(lx, x), hx = std::max(hx, x), ly = std::min(ly, y), hy = std::max(hy, y);
    };
    for (const auto& p : e.vertex_points) grow(p);
    for (const auto& path : e.edge_paths)
        for (const auto& p : path) grow(p);
    if (!(lx <= hx)) lx = ly = 0, hx = hy = 1;
    const double span = std::max({hx - lx, hy - ly, 1e-9});
    const double margin = 20, scale = (width - 2 * margin) / span;
    const double height = (hy - ly) * scale + 2 * margin;
    auto at = [&](const geo::Point& p) {
        auto [x, y] = project(p);
        return std::pair{margin + (x - lx) * scale, height - margin - (y - ly) * scale};
    };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(width) + "\" height=\"" +
                      detail::num(height) + "\" viewBox=\"0 0 " + detail::num(width) + " " + detail::num(height) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<!-- space " + e.space.describe() + (pl.log_y ? ", vertical axis is log height" : "") + " -->\n";
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) {
        out += "<polyline fill=\"none\" stroke=\"hsl(" + std::to_string(i * 47 % 360) +
               ",60%,40%)\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : e.edge_paths[i]) {
            auto [x, y] = at(p);
            out += detail::num(x) + "," + detail::num(y) + " ";
        }
        out += "\"/>\n";
    }
    for (std::size_t v = 0; v < e.vertex_points.size(); ++v) {
        auto [x, y] = at(e.vertex_points[v]);
        out += "<circle cx=\"" + detail::num(x) + "\" cy=\"" + detail::num(y) + "\" r=\"4\" fill=\"black\"><title>v" +
               std::to_string(v) + "</title></circle>\n";
    }
    return out + "</svg>\n";
}

/// A wiring into a grid host drawn on its first two coordinates.
inline std::string scene(const Wiring& w, double width = 800) {
    if (!w.host.is_grid_like()) throw ValidationError("SVG export of wirings needs a grid host");
    geo::ThickEmbedding e{w.domain, geo::Space::euclidean(std::min<std::size_t>(2, w.host.dim())), {}, {}};
    auto point = [&](VertexId x) {
        auto c = w.host.coords(x);
        geo::Point p;
        for (std::size_t i = 0; i < e.space.dim; ++i) p.push_back(static_cast<double>(c[i]));
        return p;
    };
    for (VertexId x : w.vertex_map) e.vertex_points.push_back(point(x));
    for (const auto& walk : w.walks) {
        geo::Polyline path;
        for (VertexId x : walk) path.push_back(point(x));
        e.edge_paths.push_back(std::move(path));
    }
    return scene(e, width);
}

}  // namespace cwire::svg
