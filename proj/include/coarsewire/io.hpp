#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "geometry/bridge.hpp"
#include "wiring.hpp"

// JSON interchange. Keys keep insertion order so output is byte-stable.

namespace cwire::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

template <class T>
T get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing JSON field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad JSON field \"") + key + "\": " + e.what());
    }
}

inline std::pair<Vertex, Vertex> parse_edge_key(const std::string& key) {
    const auto dash = key.find('-');
    try {
        if (dash == std::string::npos) throw std::invalid_argument(key);
        return {static_cast<Vertex>(std::stoull(key.substr(0, dash))),
                static_cast<Vertex>(std::stoull(key.substr(dash + 1)))};
    } catch (const std::exception&) {
        throw ValidationError("bad edge key \"" + key + "\", expected \"u-v\"");
    }
}

}  // namespace detail

// ---- files ----

inline Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- graphs ----

inline Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return Json{{"n", g.vertex_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
    const auto n = detail::get<std::size_t>(j, "n");
    std::vector<Edge> edges;
    for (const auto& e : detail::get<Json>(j, "edges")) {
        if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be a pair [u, v]");
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return Graph(n, std::move(edges));
}

// ---- hosts ----

inline Json to_json(const Host& h) {
    switch (h.kind()) {
        case HostKind::grid: return Json{{"kind", "grid"}, {"n", h.dim()}, {"r", h.side()}};
        case HostKind::z2box: return Json{{"kind", "z2box"}, {"m", h.side()}};
        case HostKind::lamplighter: return Json{{"kind", "lamplighter"}, {"k", h.lamp_k()}};
        case HostKind::thickened: return Json{{"kind", "thickened"}, {"base", to_json(h.base())}, {"t", h.t()}};
        case HostKind::explicit_graph: return Json{{"kind", "explicit"}, {"graph", to_json(h.graph())}};
    }
    return {};
}

inline Host host_from_json(const Json& j) {
    const auto kind = detail::get<std::string>(j, "kind");
    if (kind == "grid") return grid(detail::get<std::uint32_t>(j, "n"), detail::get<std::uint64_t>(j, "r"));
    if (kind == "z2box") return z2_box(detail::get<std::uint64_t>(j, "m"));
    if (kind == "lamplighter") return lamplighter_ball(detail::get<std::uint32_t>(j, "k"));
    if (kind == "thickened") return thicken(host_from_json(detail::get<Json>(j, "base")), detail::get<std::uint32_t>(j, "t"));
    if (kind == "explicit") return Host::from_graph(graph_from_json(detail::get<Json>(j, "graph")));
    throw ValidationError("unknown host kind \"" + kind + "\"");
}

/// Host vertex in kind-specific form: coordinate tuple, lamp string plus
/// marker, layered pair, or plain index.
inline Json vertex_to_json(const Host& h, VertexId v) {
    switch (h.kind()) {
        case HostKind::grid:
        case HostKind::z2box: return Json(h.coords(v));
        case HostKind::lamplighter: {
            const auto s = h.lamp_state(v);
            std::string lamps;
            for (std::uint32_t l = 0; l < h.lamp_count(); ++l) lamps += (s.lamps >> l & 1) ? '1' : '0';
            return Json{{"lamps", lamps}, {"pos", s.pos}};
        }
        case HostKind::thickened: {
            const auto x = h.layered(v);
            return Json{{"base", vertex_to_json(h.base(), x.base)}, {"layer", x.layer}};
        }
        case HostKind::explicit_graph: return Json(v);
    }
    return {};
}

inline VertexId vertex_from_json(const Host& h, const Json& j) {
    switch (h.kind()) {
        case HostKind::grid:
        case HostKind::z2box: {
            if (!j.is_array()) throw ValidationError("grid vertex must be a coordinate array");
            return h.vertex_at(j.get<std::vector<std::int64_t>>());
        }
        case HostKind::lamplighter: {
            const auto lamps = detail::get<std::string>(j, "lamps");
            if (lamps.size() != h.lamp_count()) throw ValidationError("lamp string has wrong length");
            LampState s;
            s.pos = detail::get<std::uint32_t>(j, "pos");
            for (std::uint32_t l = 0; l < lamps.size(); ++l) {
                if (lamps[l] != '0' && lamps[l] != '1') throw ValidationError("lamp string must be 0/1");
                if (lamps[l] == '1') s.lamps |= std::uint64_t{1} << l;
            }
            return h.encode(s);
        }
        case HostKind::thickened:
            return h.encode(Layered{vertex_from_json(h.base(), detail::get<Json>(j, "base")),
                                    detail::get<std::uint32_t>(j, "layer")});
        case HostKind::explicit_graph: {
            const auto v = j.get<VertexId>();
            h.require(v);
            return v;
        }
    }
    return 0;
}

// ---- wirings ----

inline Json to_json(const Wiring& w) {
    Json vm = Json::array(), walks = Json::object();
    for (VertexId x : w.vertex_map) vm.push_back(vertex_to_json(w.host, x));
    for (std::size_t i = 0; i < w.walks.size(); ++i) {
        Json walk = Json::array();
        for (VertexId x : w.walks[i]) walk.push_back(vertex_to_json(w.host, x));
        walks[edge_key(w.domain.edges()[i])] = std::move(walk);
    }
    return Json{{"domain", to_json(w.domain)}, {"host", to_json(w.host)}, {"vertex_map", vm}, {"walks", walks}};
}

inline Wiring wiring_from_json(const Json& j) {
    Wiring w;
    w.domain = graph_from_json(detail::get<Json>(j, "domain"));
    w.host = host_from_json(detail::get<Json>(j, "host"));
    for (const auto& x : detail::get<Json>(j, "vertex_map")) w.vertex_map.push_back(vertex_from_json(w.host, x));
    const auto walks = detail::get<Json>(j, "walks");
    if (!walks.is_object()) throw ValidationError("walks must be an object keyed by \"u-v\"");
    w.walks.assign(w.domain.edge_count(), {});
    std::vector<char> seen(w.domain.edge_count(), 0);
    for (const auto& [key, list] : walks.items()) {
        auto [u, v] = detail::parse_edge_key(key);
        const auto idx = w.domain.edge_index(u, v);
        if (!idx) throw ValidationError("walk for non-edge " + key);
        for (const auto& x : list) w.walks[*idx].push_back(vertex_from_json(w.host, x));
        seen[*idx] = 1;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw ValidationError("missing walk for edge " + edge_key(w.domain.edges()[i]));
    return w;
}

inline Json to_json(const WiringReport& r) {
    return Json{{"k", r.k},
                {"max_vertex_multiplicity", r.max_vertex_multiplicity},
                {"max_edge_multiplicity", r.max_edge_multiplicity},
                {"volume", r.volume},
                {"diameter", r.diameter},
                {"disconnected", r.disconnected}};
}

// ---- geometry ----

inline Json to_json(const geo::Space& s) {
    using geo::SpaceKind;
    switch (s.kind) {
        case SpaceKind::l2:
            if (s.interval) return Json{{"kind", "segment"}, {"lo", s.interval->first}, {"hi", s.interval->second}};
            return Json{{"kind", "euclidean"}, {"dim", s.dim}};
        case SpaceKind::linf: return Json{{"kind", "linf"}, {"dim", s.dim}};
        case SpaceKind::halfspace: return Json{{"kind", "halfspace"}, {"dim", s.dim}};
        default: break;
    }
    Json parts = Json::array();
    for (const auto& p : s.parts) parts.push_back(to_json(p));
    return Json{{"kind", s.kind == SpaceKind::product_l2 ? "product_l2" : "product_max"}, {"parts", parts}};
}

inline geo::Space space_from_json(const Json& j) {
    using geo::Space;
    const auto kind = detail::get<std::string>(j, "kind");
    if (kind == "euclidean") return Space::euclidean(detail::get<std::size_t>(j, "dim"));
    if (kind == "linf") return Space::linf(detail::get<std::size_t>(j, "dim"));
    if (kind == "halfspace") return Space::halfspace(detail::get<std::size_t>(j, "dim"));
    if (kind == "segment") return Space::segment(detail::get<double>(j, "lo"), detail::get<double>(j, "hi"));
    if (kind == "product_l2" || kind == "product_max") {
        std::vector<Space> parts;
        for (const auto& p : detail::get<Json>(j, "parts")) parts.push_back(space_from_json(p));
        return kind == "product_l2" ? Space::product_l2(std::move(parts)) : Space::product_max(std::move(parts));
    }
    throw ValidationError("unknown space kind \"" + kind + "\"");
}

/// Coordinates are written as the shortest decimal that reads back to the
/// same double (at most 17 significant digits).
inline Json to_json(const geo::ThickEmbedding& e) {
    Json paths = Json::object();
    for (std::size_t i = 0; i < e.edge_paths.size(); ++i) paths[edge_key(e.graph.edges()[i])] = e.edge_paths[i];
    return Json{{"space", to_json(e.space)}, {"graph", to_json(e.graph)}, {"vertex_points", e.vertex_points},
                {"edge_paths", paths}};
}

inline geo::ThickEmbedding embedding_from_json(const Json& j) {
    geo::ThickEmbedding e;
    e.space = space_from_json(detail::get<Json>(j, "space"));
    e.graph = graph_from_json(detail::get<Json>(j, "graph"));
    e.vertex_points = detail::get<std::vector<geo::Point>>(j, "vertex_points");
    const auto paths = detail::get<Json>(j, "edge_paths");
    if (!paths.is_object()) throw ValidationError("edge_paths must be an object keyed by \"u-v\"");
    e.edge_paths.assign(e.graph.edge_count(), {});
    for (const auto& [key, list] : paths.items()) {
        auto [u, v] = detail::parse_edge_key(key);
        const auto idx = e.graph.edge_index(u, v);
        if (!idx) throw ValidationError("path for non-edge " + key);
        e.edge_paths[*idx] = list.get<geo::Polyline>();
    }
    geo::validate_embedding(e);
    return e;
}

inline Json feature_json(const geo::ThickEmbedding& e, const geo::FeatureRef& f) {
    if (!f.is_edge) return Json{{"vertex", f.index}};
    return Json{{"edge", edge_key(e.graph.edges()[f.index])}};
}

/// Infinite bounds (no constrained pairs) are written as null.
inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const geo::ThicknessCertificate& c, const geo::ThickEmbedding& e) {
    Json worst = Json::array();
    for (const auto& w : c.worst)
        worst.push_back(Json{{"a", feature_json(e, w.a)},
                             {"b", feature_json(e, w.b)},
                             {"lower", finite_or_null(w.lower)},
                             {"sampled", finite_or_null(w.sampled)}});
    return Json{{"status", geo::to_string(c.status)},
                {"target", c.target},
                {"tol", c.tol},
                {"certified_lower_bound", finite_or_null(c.certified_lower_bound)},
                {"sampled_min", finite_or_null(c.sampled_min)},
                {"exact", c.exact},
                {"lipschitz", c.lipschitz},
                {"step", c.step},
                {"simple", c.simple},
                {"problem", c.problem},
                {"segment_pairs", c.segment_pairs},
                {"boxes", c.boxes},
                {"worst", worst}};
}

// ---- bounds ----

inline Json to_json(const CutPullbackTrace& t, const Host& host) {
    auto verts = [&](const std::vector<VertexId>& xs) {
        Json a = Json::array();
        for (VertexId x : xs) a.push_back(vertex_to_json(host, x));
        return a;
    };
    Json levels = Json::array();
    for (const auto& l : t.levels)
        levels.push_back(Json{{"size", l.size}, {"cut", verts(l.cut)}, {"heaviest_images", l.heaviest_images}});
    return Json{{"exact", t.exact},
                {"image_size", t.image_size},
                {"host_max_degree", t.host_max_degree},
                {"k", t.k},
                {"levels", levels},
                {"host_cut", verts(t.host_cut)},
                {"domain_cut", t.domain_cut},
                {"lhs", t.lhs},
                {"rhs", t.rhs},
                {"cut_set_valid", t.cut_set_valid},
                {"bound_holds", t.bound_holds},
                {"levels_ok", t.levels_ok},
                {"warnings", t.warnings}};
}

}  // namespace cwire::io
