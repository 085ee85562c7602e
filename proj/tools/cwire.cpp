// cwire: generate graphs, build wirings and thick embeddings, verify,
// measure, bound, sweep and export.
//
// Every command prints a JSON report on stdout. Artifacts go to --out when
// given, otherwise they are embedded in the report. Exit codes: 0 success,
// 1 verification failure or failed computation, 2 usage or input error.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "coarsewire/coarsewire.hpp"

using namespace cwire;
using io::Json;

namespace {

constexpr int kUsage = 2;
constexpr int kFailed = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json header(const std::string& command, Json params) {
    return Json{{"tool", "cwire"}, {"version", io::kVersion}, {"command", command}, {"params", std::move(params)}};
}

void emit(const Json& report) { std::cout << io::dump(report); }

// Artifact to --out, or into the report under `key`.
void deliver(Json& report, const std::string& key, const Json& artifact, const std::string& out) {
    if (out.empty()) {
        report[key] = artifact;
    } else {
        io::write_text(out, io::dump(artifact));
        report[key + "_file"] = out;
    }
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Instance seed from the master seed and the instance index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return splitmix(master ^ splitmix(index)); }

std::size_t workers() {
    if (const char* env = std::getenv("CWIRE_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 256) return static_cast<std::size_t>(v);
        throw UsageError("CWIRE_WORKERS must be an integer in 1..256");
    }
    return 1;
}

Graph make_graph(const std::string& family, std::size_t n, std::size_t d, std::uint64_t seed) {
    if (family == "random-regular") return random_regular(n, d, seed);
    if (family == "complete") return complete_graph(n);
    if (family == "path") return path_graph(n);
    if (family == "cycle") return cycle_graph(n);
    throw UsageError("unknown graph family \"" + family + "\"");
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    try {
        const auto dots = text.find("..");
        if (dots != std::string::npos) {
            const std::size_t lo = std::stoul(text.substr(0, dots)), hi = std::stoul(text.substr(dots + 2));
            if (lo < 1 || hi < lo) throw UsageError("size range must satisfy 1 <= lo <= hi");
            for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
        } else {
            std::stringstream ss(text);
            std::string part;
            while (std::getline(ss, part, ',')) out.push_back(std::stoul(part));
        }
    } catch (const std::logic_error&) {
        throw UsageError("bad size list \"" + text + "\"; use lo..hi (doubling) or a,b,c");
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw UsageError("sizes must be increasing");
    return out;
}

struct Fit {
    double slope = 0, stderr_ = 0, intercept = 0;
};

/// Least squares fit of log y against log x.
Fit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) mx += std::log(x[i]), my += std::log(y[i]);
    mx /= m, my /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    }
    Fit f;
    f.slope = sxx > 0 ? sxy / sxx : 0;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = std::log(y[i]) - f.intercept - f.slope * std::log(x[i]);
        ssr += r * r;
    }
    f.stderr_ = m > 2 && sxx > 0 ? std::sqrt(ssr / static_cast<double>(m - 2) / sxx) : 0;
    return f;
}

Json fit_json(const Fit& f) { return Json{{"slope", f.slope}, {"stderr", f.stderr_}, {"intercept", f.intercept}}; }

std::vector<std::int64_t> parse_ints(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string part;
    try {
        while (std::getline(ss, part, ',')) out.push_back(std::stoll(part));
    } catch (const std::logic_error&) {
        throw UsageError("bad integer list \"" + text + "\"");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse wirings and thick embeddings of graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("cwire ") + io::kVersion);

    std::string in, out, report_out;
    std::uint64_t seed = 0;

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a graph");
    std::string family;
    std::size_t gen_n = 0, degree = 3;
    gen->add_option("family", family, "random-regular | complete | path | cycle")->required();
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--d", degree, "degree for random-regular");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", out, "graph JSON file");

    // ---- wire ----
    auto* wire = app.add_subcommand("wire", "build a coarse wiring");
    std::string construction;
    std::uint32_t dim = 3;
    std::size_t max_attempts = 1000, inject_d = 0, inject_k = 0;
    wire->add_option("construction", construction, "lamplighter | diagonal | kb | inject")->required();
    wire->add_option("--in", in, "graph JSON (wiring JSON for inject)")->required();
    wire->add_option("--dim", dim, "grid dimension for kb");
    wire->add_option("--seed", seed, "random seed for kb");
    wire->add_option("--max-attempts", max_attempts, "candidate paths per edge for kb");
    wire->add_option("--d", inject_d, "degree bound for inject (default: max degree)");
    wire->add_option("--k", inject_k, "multiplicity for inject (default: measured k)");
    wire->add_option("--out", out, "wiring JSON file");

    // ---- embed ----
    auto* embed = app.add_subcommand("embed", "build a thick embedding");
    std::string embed_kind;
    std::size_t embed_n = 0, real_k = 0, real_d = 0;
    std::string box;
    double coarse_T = 1;
    std::size_t horo_q = 3, horo_r = 0;
    embed->add_option("kind", embed_kind, "slab | h3 | h2xr | h2slab | horo | realize | coarsen")->required();
    embed->add_option("--n", embed_n, "complete graph size for slab, h3, h2xr, h2slab");
    embed->add_option("--in", in, "wiring JSON (realize) or embedding JSON (horo, coarsen)");
    embed->add_option("--k", real_k, "coarse multiplicity for realize (default: measured k)");
    embed->add_option("--d", real_d, "degree bound for realize (default: max degree)");
    embed->add_option("--seed", seed, "template seed for realize");
    embed->add_option("--box", box, "lattice net box lo1,..,lom:hi1,..,him for coarsen");
    embed->add_option("--T", coarse_T, "thickness scale for coarsen");
    embed->add_option("--q", horo_q, "hyperbolic dimension for horo");
    embed->add_option("--r", horo_r, "Euclidean dimension for horo");
    embed->add_option("--out", out, "output JSON file");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "verify a wiring or an embedding");
    std::string verify_kind;
    double eps = 1, tol = 0;
    std::size_t k_bound = 0, budget = 1u << 20;
    bool incident = false;
    verify->add_option("kind", verify_kind, "wiring | injective | embedding")->required();
    verify->add_option("--in", in, "input JSON")->required();
    verify->add_option("--k", k_bound, "fail if the wiring is not a coarse k-wiring");
    verify->add_option("--eps", eps, "thickness target");
    verify->add_option("--tol", tol, "thickness tolerance");
    verify->add_option("--budget", budget, "refinement boxes per segment pair");
    verify->add_flag("--incident", incident, "also require paths of incident edges to meet only at their vertex");
    verify->add_option("--report", report_out, "also write the report here");

    // ---- measure ----
    auto* measure = app.add_subcommand("measure", "diameter and volume");
    double spacing = 0, diam_tol = 1e-6;
    measure->add_option("--in", in, "embedding or wiring JSON")->required();
    measure->add_option("--spacing", spacing, "net spacing for the volume bound (default: 0.5, coarser for long paths)");
    measure->add_option("--diam-tol", diam_tol, "diameter bracket width");

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "separation bounds");
    std::string bound_kind;
    bool exact = false;
    double pr = 1, ps = 0, pp = 0.5, pq = 0, pn = 2;
    std::size_t exact_cap = 16;
    bound->add_option("kind", bound_kind, "pullback | sep | profile")->required();
    bound->add_option("--in", in, "wiring JSON for pullback and sep");
    bound->add_flag("--exact", exact, "exact host cuts (pullback)");
    bound->add_option("--exact-cap", exact_cap, "largest graph for exact cuts");
    bound->add_option("--r", pr);
    bound->add_option("--s", ps);
    bound->add_option("--p", pp);
    bound->add_option("--q", pq);
    bound->add_option("--size", pn, "n for profile");
    bound->add_option("--out", out, "trace JSON file");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "fit volume and diameter growth over a size range");
    std::string sizes_text = "16..128", csv;
    std::size_t seeds = 3;
    sweep->add_option("--construction", construction, "lamplighter | diagonal | kb | realize")->required();
    sweep->add_option("--family", family, "random-regular | complete | path | cycle")->required();
    sweep->add_option("--d", degree, "degree for random-regular");
    sweep->add_option("--dim", dim, "grid dimension for kb and realize");
    sweep->add_option("--sizes", sizes_text, "lo..hi (doubling) or a,b,c");
    sweep->add_option("--seeds", seeds, "instances per size");
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--csv", csv, "write the table as CSV");

    // ---- export ----
    auto* exp = app.add_subcommand("export", "SVG scene of an embedding or a grid wiring");
    exp->add_option("--in", in, "embedding or wiring JSON")->required();
    exp->add_option("--out", out, "SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (gen->parsed()) {
            Json r = header("gen", {{"family", family}, {"n", gen_n}, {"d", degree}, {"seed", seed}});
            deliver(r, "graph", io::to_json(make_graph(family, gen_n, degree, seed)), out);
            emit(r);
            return 0;
        }

        if (wire->parsed()) {
            Json params{{"construction", construction}, {"in", in}};
            Wiring w;
            Json extra = Json::object();
            if (construction == "inject") {
                const Wiring src = io::wiring_from_json(io::read_json(in));
                const std::size_t d = inject_d ? inject_d : max_degree(src.domain);
                const std::size_t k = inject_k ? inject_k : verify_coarse_wiring(src).k;
                params["d"] = d;
                params["k"] = k;
                w = make_injective(src, d, k);
                std::string why;
                extra["injective"] = is_injective_wiring(w, &why);
                if (!why.empty()) extra["why"] = why;
            } else {
                const Graph g = io::graph_from_json(io::read_json(in));
                if (construction == "lamplighter") {
                    w = lamplighter_wiring(g);
                } else if (construction == "diagonal") {
                    w = diagonal_wiring_z2(g);
                } else if (construction == "kb") {
                    params["dim"] = dim;
                    params["seed"] = seed;
                    params["max_attempts"] = max_attempts;
                    auto res = kb_wiring(g, kb_params(g, dim, seed, max_attempts));
                    w = std::move(res.wiring);
                    extra = Json{{"C", res.params.C},
                                 {"R", res.params.R},
                                 {"side", res.params.side()},
                                 {"mean_attempts", res.stats.mean_attempts()},
                                 {"max_attempts", res.stats.max_attempts()}};
                } else {
                    throw UsageError("unknown construction \"" + construction + "\"");
                }
                extra["max_degree"] = max_degree(g);
            }
            Json r = header("wire", params);
            r["report"] = io::to_json(verify_coarse_wiring(w));
            r["construction"] = extra;
            deliver(r, "wiring", io::to_json(w), out);
            emit(r);
            return 0;
        }

        if (embed->parsed()) {
            Json params{{"kind", embed_kind}};
            geo::ThickEmbedding e;
            Json extra = Json::object();
            auto need_n = [&] {
                if (embed_n < 1) throw UsageError("--n >= 1 is required for " + embed_kind);
                params["n"] = embed_n;
            };
            if (embed_kind == "slab") {
                need_n();
                e = geo::complete_slab_embedding(embed_n);
            } else if (embed_kind == "h3") {
                need_n();
                e = geo::slab_to_h3(geo::complete_slab_embedding(embed_n));
                extra = Json{{"diameter_bound", geo::h3_diameter_bound(embed_n)},
                             {"volume_bound", geo::h3_volume_constant() * double(embed_n) * double(embed_n)}};
            } else if (embed_kind == "h2xr") {
                need_n();
                e = geo::slab_to_h2xr(geo::complete_slab_embedding(embed_n));
            } else if (embed_kind == "h2slab") {
                need_n();
                e = geo::h2slab_complete_wiring(embed_n);
                extra = Json{{"diameter_bound", geo::h2slab_diameter_bound(embed_n)},
                             {"volume_bound", geo::h2slab_volume_bound(embed_n)}};
            } else if (embed_kind == "horo") {
                if (in.empty()) throw UsageError("horo needs --in embedding.json");
                params["q"] = horo_q;
                params["r"] = horo_r;
                e = geo::horoproduct_embed(io::embedding_from_json(io::read_json(in)), horo_q, horo_r);
            } else if (embed_kind == "realize") {
                if (in.empty()) throw UsageError("realize needs --in wiring.json");
                const Wiring w = io::wiring_from_json(io::read_json(in));
                const std::size_t k = real_k ? real_k : verify_coarse_wiring(w).k;
                const std::size_t d = real_d ? real_d : max_degree(w.domain);
                params.update(Json{{"in", in}, {"k", k}, {"d", d}, {"seed", seed}});
                auto res = geo::realize_grid_wiring(w, k, d, seed);
                e = std::move(res.embedding);
                extra = Json{{"T", res.tmpl.T},
                             {"cell", std::ldexp(double(res.tmpl.s0), int(res.tmpl.shift))},
                             {"template_types", res.tmpl.types.size()},
                             {"template_attempts", res.tmpl.attempts},
                             {"template_eps", res.eps},
                             {"c_diam", res.c_diam},
                             {"c_vol", res.c_vol}};
            } else if (embed_kind == "coarsen") {
                if (in.empty() || box.empty()) throw UsageError("coarsen needs --in embedding.json and --box lo:hi");
                const auto src = io::embedding_from_json(io::read_json(in));
                const auto colon = box.find(':');
                if (colon == std::string::npos) throw UsageError("--box must be lo1,..,lom:hi1,..,him");
                const auto net = geo::lattice_net(parse_ints(box.substr(0, colon)), parse_ints(box.substr(colon + 1)));
                params.update(Json{{"in", in}, {"box", box}, {"T", coarse_T}});
                auto res = geo::coarsen_embedding(src, net, coarse_T);
                const auto b = geo::coarsening_instance_bound(net, src.space, coarse_T, max_degree(src.graph));
                Json r = header("embed", params);
                r["report"] = io::to_json(res.report);
                r["k_bound"] = b.k_bound;
                r["lambda"] = b.lambda;
                r["chain_lengths"] = res.chain_lengths;
                deliver(r, "wiring", io::to_json(res.wiring), out);
                emit(r);
                return res.report.k <= b.k_bound ? 0 : kFailed;
            } else {
                throw UsageError("unknown embedding kind \"" + embed_kind + "\"");
            }
            Json r = header("embed", params);
            r["space"] = e.space.describe();
            r["construction"] = extra;
            deliver(r, "embedding", io::to_json(e), out);
            emit(r);
            return 0;
        }

        if (verify->parsed()) {
            const Json src = io::read_json(in);
            Json r = header("verify", {{"kind", verify_kind}, {"in", in}});
            bool ok = true;
            if (verify_kind == "wiring" || verify_kind == "injective") {
                const Wiring w = io::wiring_from_json(src);
                const auto rep = verify_coarse_wiring(w);
                r["report"] = io::to_json(rep);
                ok = !rep.disconnected && (k_bound == 0 || rep.k <= k_bound);
                if (k_bound) r["params"]["k"] = k_bound;
                if (verify_kind == "injective") {
                    std::string why;
                    const bool inj = is_injective_wiring(w, &why);
                    r["injective"] = inj;
                    if (!inj) r["why"] = why;
                    ok = ok && inj;
                }
            } else if (verify_kind == "embedding") {
                const auto e = io::embedding_from_json(src);
                geo::ThicknessOptions opt;
                opt.box_budget = budget;
                opt.check_incident = incident;
                r["params"].update(Json{{"eps", eps}, {"tol", tol}, {"budget", budget}, {"incident", incident}});
                const auto cert = geo::verify_thickness(e, eps, tol, opt);
                r["certificate"] = io::to_json(cert, e);
                ok = cert.passed();
            } else {
                throw UsageError("unknown verify kind \"" + verify_kind + "\"");
            }
            r["ok"] = ok;
            if (!report_out.empty()) io::write_text(report_out, io::dump(r));
            emit(r);
            return ok ? 0 : kFailed;
        }

        if (measure->parsed()) {
            const Json src = io::read_json(in);
            Json r = header("measure", {{"in", in}});
            if (src.contains("space")) {
                const auto e = io::embedding_from_json(src);
                if (spacing <= 0) {
                    double length = 0;
                    for (const auto& path : e.edge_paths)
                        for (std::size_t i = 1; i < path.size(); ++i) length += geo::distance(e.space, path[i - 1], path[i]);
                    spacing = std::max(0.5, length / 2e5);
                }
                const auto d = geo::embedding_diameter(e, diam_tol);
                r["params"].update(Json{{"spacing", spacing}, {"diam_tol", diam_tol}});
                r["diameter"] = Json{{"lower", d.lower}, {"upper", d.upper}};
                const auto v = geo::estimate_volume(e, spacing);
                r["volume"] = Json{{"upper_bound", v.volume},
                                   {"net_points", v.net_points},
                                   {"ball_radius", v.ball_radius},
                                   {"ball_volume", v.ball_volume}};
            } else {
                r["report"] = io::to_json(verify_coarse_wiring(io::wiring_from_json(src)));
            }
            emit(r);
            return 0;
        }

        if (bound->parsed()) {
            if (bound_kind == "profile") {
                Json r = header("bound", {{"kind", "profile"}, {"r", pr}, {"s", ps}, {"p", pp}, {"q", pq}, {"n", pn}});
                r["value"] = profile_lower_bound(pr, ps, pp, pq, pn);
                emit(r);
                return 0;
            }
            if (in.empty()) throw UsageError(bound_kind + " needs --in wiring.json");
            const Wiring w = io::wiring_from_json(io::read_json(in));
            CutOptions opt;
            opt.exact_cap = exact_cap;
            if (bound_kind == "pullback") {
                const auto tr = pullback_cut(w, exact ? CutMode::exact : CutMode::heuristic, opt);
                Json r = header("bound", {{"kind", "pullback"}, {"in", in}, {"exact", exact}, {"exact_cap", exact_cap}});
                deliver(r, "trace", io::to_json(tr, w.host), out);
                const bool ok = tr.cut_set_valid && tr.bound_holds && tr.levels_ok;
                r["ok"] = ok;
                emit(r);
                return ok ? 0 : kFailed;
            }
            if (bound_kind == "sep") {
                const auto tr = pullback_cut(w, CutMode::exact, opt);
                const auto s = sep_sum_check(w, tr, opt);
                Json r = header("bound", {{"kind", "sep"}, {"in", in}, {"exact_cap", exact_cap}});
                r["cut"] = s.domain_cut;
                r["rhs"] = s.rhs;
                r["ok"] = s.holds;
                emit(r);
                return s.holds ? 0 : kFailed;
            }
            throw UsageError("unknown bound kind \"" + bound_kind + "\"");
        }

        if (sweep->parsed()) {
            const auto sizes = parse_sizes(sizes_text);
            if (sizes.size() < 3) throw UsageError("a sweep needs at least 3 sizes");
            if (seeds < 1) throw UsageError("--seeds must be positive");
            if (construction != "lamplighter" && construction != "diagonal" && construction != "kb" &&
                construction != "realize")
                throw UsageError("unknown construction \"" + construction + "\"");
            make_graph(family, 4, 2, 0);  // reject unknown families early

            // One template for all realize instances: T = (d + n)(d + 1).
            std::optional<geo::GridTemplate> tmpl;
            std::size_t real_k_all = 0, real_d_all = 0;
            if (construction == "realize") {
                std::size_t dmax = degree;
                if (family != "random-regular") dmax = family == "complete" ? sizes.back() - 1 : 2;
                real_k_all = dmax + dim;
                real_d_all = dmax;
                tmpl = geo::build_grid_template(dim, static_cast<std::uint32_t>(real_k_all * (dmax + 1)),
                                                derive_seed(seed, 0x7e11));
            }

            struct Row {
                std::size_t n = 0, index = 0;
                std::uint64_t seed = 0;
                double volume = 0, diameter = 0;
                std::size_t k = 0;
                std::string status = "ok";
            };
            std::vector<Row> rows;
            for (std::size_t n : sizes)
                for (std::size_t s = 0; s < seeds; ++s) {
                    Row row;
                    row.n = n;
                    row.index = rows.size();
                    row.seed = derive_seed(seed, rows.size());
                    rows.push_back(row);
                }
            std::atomic<std::size_t> next{0};
            std::mutex err_mu;
            std::string first_error;
            auto run_one = [&](Row& row) {
                const Graph g = make_graph(family, row.n, degree, row.seed);
                if (construction == "lamplighter" || construction == "diagonal") {
                    const auto w = construction == "lamplighter" ? lamplighter_wiring(g) : diagonal_wiring_z2(g);
                    const auto rep = verify_coarse_wiring(w);
                    row.volume = double(rep.volume), row.diameter = double(rep.diameter), row.k = rep.k;
                    return;
                }
                auto kb = kb_wiring(g, kb_params(g, dim, row.seed));
                const auto rep = verify_coarse_wiring(kb.wiring);
                row.k = rep.k;
                if (construction == "kb") {
                    row.volume = double(rep.volume), row.diameter = double(rep.diameter);
                    return;
                }
                auto res = geo::realize_grid_wiring(kb.wiring, real_k_all, real_d_all, *tmpl);
                const auto cert = geo::verify_thickness(res.embedding, 1, 0);
                row.status = geo::to_string(cert.status);
                const double cell = std::ldexp(double(tmpl->s0), int(tmpl->shift));
                row.volume = geo::estimate_volume(res.embedding, 2 * cell).volume;
                row.diameter = geo::embedding_diameter(res.embedding).upper;
            };
            auto worker = [&] {
                for (std::size_t i; (i = next++) < rows.size();) {
                    try {
                        run_one(rows[i]);
                    } catch (const std::exception& e) {
                        std::lock_guard lock(err_mu);
                        rows[i].status = std::string("error: ") + e.what();
                        if (first_error.empty()) first_error = e.what();
                    }
                }
            };
            const std::size_t nw = std::min(workers(), rows.size());
            std::vector<std::thread> pool;
            for (std::size_t t = 1; t < nw; ++t) pool.emplace_back(worker);
            worker();
            for (auto& t : pool) t.join();

            std::vector<double> xs, vols, diams;
            Json table = Json::array();
            bool ok = true;
            for (const auto& row : rows) {
                table.push_back(Json{{"n", row.n}, {"seed", row.seed}, {"k", row.k}, {"volume", row.volume},
                                     {"diameter", row.diameter}, {"status", row.status}});
                if (row.status != "ok" && row.status != "pass") {
                    ok = false;
                    continue;
                }
                xs.push_back(double(row.n));
                vols.push_back(std::max(row.volume, 1e-300));
                diams.push_back(std::max(row.diameter, 1e-300));
            }
            Json r = header("sweep", {{"construction", construction},
                                      {"family", family},
                                      {"d", degree},
                                      {"dim", dim},
                                      {"sizes", sizes},
                                      {"seeds", seeds},
                                      {"seed", seed},
                                      {"workers", nw}});
            r["rows"] = table;
            if (xs.size() >= 3) {
                r["volume_fit"] = fit_json(loglog_fit(xs, vols));
                r["diameter_fit"] = fit_json(loglog_fit(xs, diams));
            }
            r["ok"] = ok;
            if (!csv.empty()) {
                std::string text = "n,seed,k,volume,diameter,status\n";
                for (const auto& row : rows) {
                    std::ostringstream line;
                    line.precision(17);
                    line << row.n << ',' << row.seed << ',' << row.k << ',' << row.volume << ',' << row.diameter << ','
                         << row.status << '\n';
                    text += line.str();
                }
                io::write_text(csv, text);
            }
            emit(r);
            return ok ? 0 : kFailed;
        }

        if (exp->parsed()) {
            const Json src = io::read_json(in);
            const std::string scene = src.contains("space") ? svg::scene(io::embedding_from_json(src))
                                                            : svg::scene(io::wiring_from_json(src));
            io::write_text(out, scene);
            Json r = header("export", {{"in", in}, {"out", out}});
            r["bytes"] = scene.size();
            emit(r);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "cwire: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "cwire: invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "cwire: " << e.what() << "\n";
        emit(Json{{"tool", "cwire"}, {"version", io::kVersion}, {"error", e.what()}});
        return kFailed;
    }
    return kUsage;
}
