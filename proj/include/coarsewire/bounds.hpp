#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cut.hpp"
#include "graph.hpp"
#include "host.hpp"
#include "wiring.hpp"

namespace cwire {

struct PullbackLevel {
    std::size_t size = 0;             ///< |Γ'_s|
    std::vector<VertexId> vertices;   ///< Γ'_s as host codes, sorted
    std::vector<VertexId> cut;        ///< C'_s as host codes, sorted
    std::size_t heaviest_images = 0;  ///< most vertex images left in one component after the cut
};

struct CutPullbackTrace {
    std::vector<PullbackLevel> levels;
    std::vector<VertexId> host_cut;  ///< C', sorted host codes
    std::vector<Vertex> domain_cut;  ///< C, sorted
    std::size_t image_size = 0;      ///< |Γ'|
    std::size_t host_max_degree = 0;
    std::size_t k = 0;
    std::size_t lhs = 0;  ///< |C|
    std::size_t rhs = 0;  ///< k·Δ_Y·Σ|C'_s|
    bool exact = false;
    bool cut_set_valid = false;  ///< C is a cut set of the domain
    bool bound_holds = false;    ///< |C| ≤ k·Δ_Y·|C'|
    bool levels_ok = false;      ///< |Γ'_s| ≤ 2^-s |Γ'| and the level count bound
    std::vector<std::string> warnings;
};

namespace detail {

inline std::size_t ceil_log2(std::size_t x) {
    std::size_t r = 0;
    while ((std::size_t{1} << r) < x) ++r;
    return r;
}

}  // namespace detail

/// Divide-and-conquer cut pullback. Γ' is the image graph of w (walk edges
/// only). Starting from Γ'_0 = Γ', cut Γ'_s by a cut set C'_s and recurse
/// into the component that still carries more than half of the domain's
/// vertex images. C collects the endpoints of domain edges whose walk meets
/// C' together with domain vertices mapped into C'.
///
/// Exact mode throws ConsistencyError when C is not a cut set or the level
/// sizes fail to halve; heuristic mode records warnings instead.
inline CutPullbackTrace pullback_cut(const Wiring& input, CutMode mode, const CutOptions& opt = {}) {
    Wiring w = input;
    normalize_and_check(w);
    const auto rep = verify_coarse_wiring(w);
    const Graph& domain = w.domain;
    const std::size_t n = domain.vertex_count();

    CutPullbackTrace tr;
    tr.exact = mode == CutMode::exact;
    tr.k = rep.k;
    tr.host_max_degree = w.host.max_degree();

    auto img = image_subgraph(w);
    const Graph& gp = img.graph;
    tr.image_size = gp.vertex_count();

    std::vector<std::size_t> images(gp.vertex_count(), 0);
    for (VertexId x : w.vertex_map) ++images[static_cast<std::size_t>(img.index_of(x))];

    std::vector<char> in_cut(gp.vertex_count(), 0);
    std::vector<Vertex> current(gp.vertex_count());
    for (Vertex v = 0; v < current.size(); ++v) current[v] = v;

    // A component is heavy when it carries more than half of the vertex images.
    auto heavy = [&](std::size_t count) { return 2 * count > n; };

    bool go = n > 0;
    while (go) {
        Graph sub = induced_subgraph(gp, current);
        auto cr = min_cut_set(sub, mode, opt);
        PullbackLevel lvl;
        lvl.size = current.size();
        for (Vertex v : current) lvl.vertices.push_back(img.labels[v]);
        std::vector<char> removed(sub.vertex_count(), 0);
        for (Vertex v : cr.cut_set) {
            removed[v] = 1;
            in_cut[current[v]] = 1;
            lvl.cut.push_back(img.labels[current[v]]);
        }
        std::sort(lvl.cut.begin(), lvl.cut.end());

        auto comps = components(sub, removed);
        std::vector<std::size_t> load(comps.count(), 0);
        for (Vertex v = 0; v < sub.vertex_count(); ++v)
            if (!removed[v]) load[comps.label[v]] += images[current[v]];
        std::size_t worst = 0, worst_id = 0;
        for (std::size_t c = 0; c < load.size(); ++c)
            if (load[c] > worst) worst = load[c], worst_id = c;
        lvl.heaviest_images = worst;
        tr.levels.push_back(std::move(lvl));

        go = heavy(worst);
        if (go) {
            std::vector<Vertex> next;
            for (Vertex v = 0; v < sub.vertex_count(); ++v)
                if (!removed[v] && comps.label[v] == worst_id) next.push_back(current[v]);
            current = std::move(next);
        }
    }

    for (Vertex v = 0; v < in_cut.size(); ++v)
        if (in_cut[v]) tr.host_cut.push_back(img.labels[v]);

    std::vector<char> in_c(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (in_cut[static_cast<std::size_t>(img.index_of(w.vertex_map[v]))]) in_c[v] = 1;
    for (std::size_t e = 0; e < w.walks.size(); ++e)
        for (VertexId x : w.walks[e])
            if (in_cut[static_cast<std::size_t>(img.index_of(x))]) {
                in_c[domain.edges()[e].first] = 1;
                in_c[domain.edges()[e].second] = 1;
                break;
            }
    tr.domain_cut = detail::mask_to_list(in_c);

    std::size_t sum = 0;
    for (const auto& l : tr.levels) sum += l.cut.size();
    tr.lhs = tr.domain_cut.size();
    tr.rhs = tr.k * tr.host_max_degree * sum;
    tr.cut_set_valid = is_cut_set(domain, tr.domain_cut);
    tr.bound_holds = tr.lhs <= tr.k * tr.host_max_degree * tr.host_cut.size();

    tr.levels_ok = tr.levels.size() <= detail::ceil_log2(std::max<std::size_t>(tr.image_size, 1)) + 1;
    for (std::size_t s = 0; s < tr.levels.size(); ++s)
        if ((tr.levels[s].size << s) > tr.image_size) tr.levels_ok = false;

    auto fail = [&](const std::string& what) {
        std::string msg = "pullback cut: " + what + " (levels:";
        for (const auto& l : tr.levels) msg += " " + std::to_string(l.size) + "/" + std::to_string(l.cut.size());
        msg += ", |C|=" + std::to_string(tr.lhs) + ")";
        if (tr.exact) throw ConsistencyError(msg);
        tr.warnings.push_back(msg);
    };
    if (!tr.cut_set_valid) fail("pulled-back set is not a cut set of the domain");
    if (!tr.levels_ok) fail("level sizes do not halve");
    // Each host vertex of C' meets at most k·Δ_Y nontrivial walks (two endpoints
    // each) and at most k vertex preimages; anything above that is a bug.
    if (tr.lhs > (2 * tr.host_max_degree + 1) * tr.k * tr.host_cut.size()) fail("|C| exceeds (2Δ+1)k|C'|");
    return tr;
}

struct SepSumReport {
    std::size_t domain_cut = 0;  ///< exact cut(Γ)
    std::size_t rhs = 0;         ///< k·Δ_Y·Σ|C'_s|
    bool holds = false;
};

/// Per-instance check cut(Γ) ≤ k·Δ_Y·Σ_s|C'_s| with the exact cut(Γ).
inline SepSumReport sep_sum_check(const Wiring& w, const CutPullbackTrace& tr, const CutOptions& opt = {}) {
    SepSumReport r;
    r.domain_cut = min_cut_set(w.domain, CutMode::exact, opt).cut_set.size();
    r.rhs = tr.rhs;
    r.holds = r.domain_cut <= r.rhs;
    return r;
}

/// Lower bound on the wiring profile from sep_X ≳ n^r ln^s n and
/// sep_Y ≃ n^p ln^q n: n^{r/p} ln(n)^{(s-q)/p} for p > 0, and
/// exp(n^{r/(q+1)} ln(n)^{s/(q+1)}) for p = 0.
inline double profile_lower_bound(double r, double s, double p, double q, double n) {
    if (p < 0) throw ValidationError("profile lower bound needs p >= 0");
    if (!(n > 1)) throw ValidationError("profile lower bound needs n > 1");
    const double ln = std::log(n);
    if (p > 0) return std::pow(n, r / p) * std::pow(ln, (s - q) / p);
    if (q + 1 <= 0) throw ValidationError("profile lower bound with p = 0 needs q > -1");
    return std::exp(std::pow(n, r / (q + 1)) * std::pow(ln, s / (q + 1)));
}

}  // namespace cwire
