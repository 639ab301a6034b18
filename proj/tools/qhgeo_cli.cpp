// Command-line front end for the quasihyperbolic geometry engine: distances,
// geodesic and sphere traces, axiom checks, homogeneity isotopies and the
// finite-dimensionality embedding, emitting CSV/JSON for external tooling.
//
// Exit codes: 0 success/pass, 1 check failed (witness emitted), 2 usage
// error, 3 numeric error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qhgeo/qhgeo.hpp"

namespace {

using nlohmann::json;
using namespace qhgeo;

HPoint parse_point(const std::string& text, const std::string& flag) {
    std::istringstream in(text);
    double x = 0.0, y = 0.0;
    char comma = 0;
    if (!(in >> x >> comma >> y) || comma != ',')
        throw std::invalid_argument(flag + ": expected 'x,y', got '" + text + "'");
    return {x, y};
}

struct SpaceChoice {
    std::string id = "stadium";
    std::shared_ptr<const Space> space;
    std::optional<NormModel> norm; // half-plane engine norm, when one exists

    void resolve() {
        if (id == "stadium") {
            space = std::make_shared<StadiumSpace>();
            norm = NormModel::stadium();
        } else if (id == "euclidean") {
            space = std::make_shared<EuclideanPlaneSpace>();
        } else if (id == "hyperbolic") {
            space = std::make_shared<QuasihyperbolicSpace>(NormModel::euclidean());
            norm = NormModel::euclidean();
        } else if (id.rfind("indicatrix:", 0) == 0) {
            NormModel m = load_indicatrix_norm(id.substr(std::string("indicatrix:").size()));
            space = std::make_shared<QuasihyperbolicSpace>(m);
            norm = m;
        } else {
            throw std::invalid_argument(
                "--space: expected stadium|euclidean|hyperbolic|indicatrix:<path>");
        }
    }

    const NormModel& require_norm(const char* cmd) const {
        if (!norm)
            throw std::invalid_argument(std::string(cmd) +
                                        ": requires a half-plane space (not euclidean)");
        return *norm;
    }
};

struct Output {
    std::string path;

    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file) {
            std::string full = path;
            const char* dir = std::getenv("QHGEO_OUTPUT_DIR");
            if (dir && *dir && full.front() != '/') full = std::string(dir) + "/" + full;
            file = std::make_unique<std::ofstream>(full);
            if (!*file) throw std::invalid_argument("cannot open output file: " + full);
        }
        return *file;
    }
};

void emit_json(Output& out, const json& j) { out.stream() << j.dump(2) << "\n"; }

int verdict_exit(const CheckReport& rep) {
    switch (rep.verdict) {
    case Verdict::pass: return 0;
    case Verdict::fail: return 1;
    case Verdict::inconclusive: return 3;
    }
    return 3;
}

std::vector<HPoint> trace_through(const SpaceChoice& sc, HPoint p, HPoint q, int n) {
    if (!sc.norm) { // flat plane: the affine segment, padded a little
        std::vector<HPoint> pts;
        for (int i = 0; i <= n; ++i) {
            const double t = -0.25 + 1.5 * i / n;
            pts.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
        return pts;
    }
    const NormModel& norm = *sc.norm;
    const Geodesic g = geodesic_through(norm, p, q);
    if (const auto* ls = std::get_if<GenericLevelSet>(&g))
        return generic_geodesic_trace(norm, ls->a, ls->k, std::max(32, n)).polyline;
    std::vector<HPoint> pts;
    if (std::holds_alternative<VerticalLine>(g)) {
        const double ylo = 0.5 * std::min(p.y, q.y), yhi = 2.0 * std::max(p.y, q.y);
        for (int i = 0; i <= n; ++i)
            pts.push_back(point_at_arc(norm, g, p,
                                       norm(Vec2{0, 1}) * std::log(ylo / p.y) +
                                           norm(Vec2{0, 1}) * std::log(yhi / ylo) * i / n));
    } else {
        const double pad = 0.25 * (arc_length(norm, g, p, q) + 0.5);
        const auto& arch = std::get<StadiumParabola>(g);
        const double s0 = stadium::signed_coord(arch, p), s1 = stadium::signed_coord(arch, q);
        const double lo = std::min(s0, s1) - pad, hi = std::max(s0, s1) + pad;
        for (int i = 0; i <= n; ++i)
            pts.push_back(point_at_arc(norm, g, HPoint{arch.a, arch.lambda},
                                       lo + (hi - lo) * i / n));
    }
    return pts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasihyperbolic plane geometry engine"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    SpaceChoice sc;
    Output out;
    std::string format = "json";
    std::uint64_t seed = 2024;
    app.add_option("--space", sc.id, "stadium|euclidean|hyperbolic|indicatrix:<path>")
        ->capture_default_str();
    app.add_option("--out", out.path, "output file (default stdout; QHGEO_OUTPUT_DIR applies)");
    app.add_option("--output", format, "csv|json")->capture_default_str();
    app.add_option("--seed", seed, "RNG seed for sampling checks")->capture_default_str();

    std::string p_text, q_text, center_text = "0,1", viewpoint_text, v_text, at_text;
    double K = 1.0, eps = 0.5, radius = 0.5, s_len = 0.5, separation = 1e-3;
    int n = 256, trials = 500, grid = 2, frames = 33, pool = 2048, pairs = 200, curve_n = 0;
    double span = 0.25, removed_angle = 0.0, delta = 0, eps1 = 0, eps2 = 0, orbal_r = 0;
    bool run_check = false, want_dual = false;

    auto* dist = app.add_subcommand("dist", "distance between two points");
    dist->add_option("--p", p_text, "first point x,y")->required();
    dist->add_option("--q", q_text, "second point x,y")->required();

    auto* geo = app.add_subcommand("geodesic", "trace the geodesic through two points");
    geo->add_option("--p", p_text)->required();
    geo->add_option("--q", q_text)->required();
    geo->add_option("--n", n, "trace samples")->capture_default_str();

    auto* sph = app.add_subcommand("sphere", "trace a metric sphere");
    sph->add_option("--center", center_text)->capture_default_str();
    sph->add_option("--K", K, "geodesic radius")->capture_default_str();
    sph->add_option("--n", n, "trace samples")->capture_default_str();

    auto* tan = app.add_subcommand("tangents", "closed-form sphere tangent slopes (stadium)");
    tan->add_option("--center", center_text)->capture_default_str();
    tan->add_option("--K", K)->capture_default_str();
    tan->add_option("--n", n, "samples per arc")->capture_default_str();
    tan->add_option("--at", at_text, "single query point x,y (optional)");

    auto* axioms = app.add_subcommand("check-axioms", "Menger, extendibility, unique extension");
    axioms->add_option("--trials", trials)->capture_default_str();
    axioms->add_option("--center", center_text, "region center")->capture_default_str();
    axioms->add_option("--radius", radius, "extendibility ball radius")->capture_default_str();

    auto* star = app.add_subcommand("check-starlike", "sphere visibility from a viewpoint");
    star->add_option("--center", center_text)->capture_default_str();
    star->add_option("--eps", eps, "sphere radius")->capture_default_str();
    star->add_option("--viewpoint", viewpoint_text, "defaults to the center");
    star->add_option("--n", n, "sphere samples")->capture_default_str();

    auto* conv = app.add_subcommand("check-convexity", "geodesic convexity of a ball");
    conv->add_option("--center", center_text)->capture_default_str();
    conv->add_option("--K", K)->capture_default_str();

    auto* ulghc = app.add_subcommand("ulgh", "uniform local G-homogeneity region and check");
    ulghc->add_option("--K", K)->capture_default_str();
    ulghc->add_option("--grid", grid)->capture_default_str();
    ulghc->add_flag("--check", run_check, "also run the starlikeness sweep");

    auto* iso = app.add_subcommand("isotopy", "sphere isotopy frame dump");
    iso->add_option("--x", center_text, "sphere center")->capture_default_str();
    iso->add_option("--eps", eps)->capture_default_str();
    iso->add_option("--frames", frames)->capture_default_str();
    iso->add_option("--span", span, "path arc fraction of the sphere")->capture_default_str();
    iso->add_option("--queries", n, "query points on the sphere")->default_val(8);

    auto* ret = app.add_subcommand("retract", "punctured-sphere retract flow frames");
    ret->add_option("--center", center_text)->capture_default_str();
    ret->add_option("--r", radius)->capture_default_str();
    ret->add_option("--removed-angle", removed_angle)->capture_default_str();
    ret->add_option("--frames", frames)->capture_default_str();
    ret->add_option("--queries", n)->default_val(8);

    auto* emb = app.add_subcommand("embed", "distance-vector landmark net and injectivity");
    emb->add_option("--K", K, "derive parameters from ulgh region")->capture_default_str();
    emb->add_option("--delta", delta, "override delta");
    emb->add_option("--eps1", eps1, "override eps1");
    emb->add_option("--eps2", eps2, "override eps2");
    emb->add_option("--r", orbal_r, "override orbal radius");
    emb->add_option("--center", center_text)->capture_default_str();
    emb->add_option("--pool", pool)->capture_default_str();
    emb->add_option("--pairs", pairs)->capture_default_str();
    emb->add_option("--separation", separation)->capture_default_str();

    auto* nrm = app.add_subcommand("norm", "evaluate the norm and its dual");
    nrm->add_option("--v", v_text, "vector u1,u2");
    nrm->add_flag("--dual", want_dual, "evaluate F* instead of F");
    nrm->add_option("--curve", curve_n, "emit the dual unit curve with n samples");

    auto* ext = app.add_subcommand("extend", "prolong the segment p->q by s");
    ext->add_option("--p", p_text)->required();
    ext->add_option("--q", q_text)->required();
    ext->add_option("--s", s_len)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        sc.resolve();
        const HPoint center = parse_point(center_text, "--center");

        if (dist->parsed()) {
            const HPoint p = parse_point(p_text, "--p"), q = parse_point(q_text, "--q");
            const double d = sc.space->distance(p, q);
            if (format == "json")
                emit_json(out, json{{"space", sc.space->name()}, {"distance", d}});
            else
                out.stream() << std::setprecision(17) << d << "\n";
            return 0;
        }

        if (geo->parsed()) {
            const HPoint p = parse_point(p_text, "--p"), q = parse_point(q_text, "--q");
            const auto pts = trace_through(sc, p, q, n);
            if (format == "csv") {
                write_polyline_csv(out.stream(), pts, "geodesic");
            } else {
                json j{{"space", sc.space->name()}, {"polyline", to_json(pts)}};
                if (sc.norm) {
                    const Geodesic g = geodesic_through(*sc.norm, p, q);
                    j.update(to_json(*sc.norm, g, p, q));
                }
                emit_json(out, j);
            }
            return 0;
        }

        if (sph->parsed()) {
            if (sc.id == "stadium") {
                const auto trace = sphere_trace(sc.require_norm("sphere"), center, K, n);
                if (format == "csv")
                    write_sphere_csv(out.stream(), trace);
                else
                    emit_json(out, to_json(trace));
            } else {
                std::vector<HPoint> pts;
                for (int i = 0; i < n; ++i)
                    pts.push_back(sc.space->sphere_point(center, K, 2.0 * kPi * i / n));
                if (format == "csv")
                    write_polyline_csv(out.stream(), pts, "sphere");
                else
                    emit_json(out, json{{"space", sc.space->name()},
                                        {"K", K},
                                        {"polyline", to_json(pts)}});
            }
            return 0;
        }

        if (tan->parsed()) {
            const auto trace = sphere_trace(sc.require_norm("tangents"), center, K,
                                            std::max(6 * n, 96));
            json rows = json::array();
            auto emit_point = [&](SphereArc arc, HPoint p) {
                const TangentSlope ts = sphere_tangent_slope(trace, arc, p);
                json row{{"arc", arc_label(arc, true)},
                         {"point", to_json(p)},
                         {"dxdy", ts.dxdy},
                         {"lambda", ts.lambda},
                         {"vertical", ts.vertical}};
                if (!ts.vertical) row["dydx"] = ts.dydx;
                rows.push_back(std::move(row));
            };
            if (!at_text.empty()) {
                const HPoint at = parse_point(at_text, "--at");
                for (SphereArc arc : {SphereArc::B1, SphereArc::B2, SphereArc::B3}) {
                    try {
                        emit_point(arc, at);
                        break;
                    } catch (const std::invalid_argument&) {
                        continue; // not on this arc
                    }
                }
                if (rows.empty())
                    throw std::invalid_argument("tangents: point does not lie on the sphere");
            } else {
                for (SphereArc arc : {SphereArc::B1, SphereArc::B2, SphereArc::B3}) {
                    const auto& pts = trace.arc(arc, true);
                    const int step = std::max<int>(1, static_cast<int>(pts.size()) / n);
                    for (std::size_t i = 1; i + 1 < pts.size(); i += step)
                        emit_point(arc, pts[i]);
                }
            }
            emit_json(out, json{{"center", to_json(center)}, {"K", K}, {"tangents", rows}});
            return 0;
        }

        if (axioms->parsed()) {
            PointSampler sampler =
                (sc.id == "euclidean")
                    ? box_sampler({center.x - 1.5, center.y - 1.5}, {center.x + 1.5, center.y + 1.5})
                    : box_sampler({center.x - 1.5 * center.y, 0.5 * center.y},
                                  {center.x + 1.5 * center.y, 2.0 * center.y});
            std::vector<CheckReport> reports;
            reports.push_back(check_menger_batch(*sc.space, sampler, trials, seed));
            reports.push_back(check_extendibility(*sc.space, center, radius, trials, seed + 1));
            reports.push_back(check_unique_extension_batch(*sc.space, sampler, trials, seed + 2));
            reports.push_back(check_rho_lipschitz(*sc.space, sampler, trials, seed + 3));
            json arr = json::array();
            int exit_code = 0;
            for (const auto& r : reports) {
                arr.push_back(to_json(r));
                exit_code = std::max(exit_code, verdict_exit(r));
            }
            emit_json(out, json{{"space", sc.space->name()}, {"reports", arr}});
            return exit_code;
        }

        if (star->parsed()) {
            const HPoint vp =
                viewpoint_text.empty() ? center : parse_point(viewpoint_text, "--viewpoint");
            const CheckReport rep = check_starlike(*sc.space, center, eps, vp, n);
            emit_json(out, to_json(rep));
            return verdict_exit(rep);
        }

        if (conv->parsed()) {
            const CheckReport rep = check_ball_convexity(*sc.space, center, K, seed);
            emit_json(out, to_json(rep));
            return verdict_exit(rep);
        }

        if (ulghc->parsed()) {
            const ULGHRegion reg = ulgh_region(K);
            json j{{"K", reg.K},          {"lambda0", reg.lambda0}, {"lambda1", reg.lambda1},
                   {"y1", reg.y1},        {"nu", reg.nu},           {"eta", reg.eta},
                   {"xi", reg.xi},        {"x0_abs", reg.x0_abs},
                   {"inner_shift", reg.inner_shift()},
                   {"outer_shift", reg.outer_shift()}};
            int code = 0;
            if (run_check) {
                const ULGHParams params = ulgh_params_from_region(K);
                const CheckReport rep = check_ulgh(*sc.space, params, grid);
                j["params"] = {{"c0", to_json(params.c0)},
                               {"r", params.r},
                               {"delta", params.delta},
                               {"eps1", params.eps1},
                               {"eps2", params.eps2}};
                j["check"] = to_json(rep);
                code = verdict_exit(rep);
            }
            emit_json(out, j);
            return code;
        }

        if (iso->parsed()) {
            const int nq = n;
            std::vector<HPoint> path;
            for (int i = 0; i < frames; ++i)
                path.push_back(sc.space->sphere_point(
                    center, eps, 0.5 * kPi + 2.0 * kPi * span * i / (frames - 1)));
            std::vector<HPoint> queries;
            for (int i = 0; i < nq; ++i)
                queries.push_back(sc.space->sphere_point(center, eps, 2.0 * kPi * i / nq));
            std::vector<IsotopyFrame> dump;
            for (int f = 0; f < frames; ++f) {
                IsotopyFrame frame;
                frame.t = double(f) / (frames - 1);
                for (const HPoint& q : queries)
                    frame.pairs.emplace_back(q, sphere_isotopy(*sc.space, center, eps, path,
                                                               static_cast<std::size_t>(f), q));
                dump.push_back(std::move(frame));
            }
            emit_json(out, to_json(dump));
            return 0;
        }

        if (ret->parsed()) {
            const HPoint removed = sc.space->sphere_point(center, radius, removed_angle);
            std::vector<HPoint> queries;
            for (int i = 0; i < n; ++i) {
                const HPoint q =
                    sc.space->sphere_point(center, radius, removed_angle + 2.0 * kPi * (i + 1) / (n + 2));
                queries.push_back(q);
            }
            std::vector<IsotopyFrame> dump;
            for (int f = 0; f < frames; ++f) {
                IsotopyFrame frame;
                frame.t = double(f) / (frames - 1);
                for (const HPoint& q : queries)
                    frame.pairs.emplace_back(
                        q, sphere_retract_flow(*sc.space, center, radius, removed, q, frame.t));
                dump.push_back(std::move(frame));
            }
            emit_json(out, to_json(dump));
            return 0;
        }

        if (emb->parsed()) {
            ULGHParams params;
            if (delta > 0.0 && eps1 > 0.0 && eps2 > 0.0 && orbal_r > 0.0) {
                params = ULGHParams{center, orbal_r, delta, eps1, eps2};
                params.validate();
            } else if (sc.id == "stadium") {
                params = ulgh_params_from_region(K);
            } else {
                params = ULGHParams{center, 1.25 * K, 0.4 * K, 0.8 * K, K};
                params.validate();
            }
            const EmbeddingConfig cfg = derive_embedding_params(params);
            const EmbeddingResult res = build_net(*sc.space, cfg, pool);
            const CheckReport rep = injectivity_report(*sc.space, res, pairs, separation, seed);
            json j = to_json(res);
            j["injectivity"] = to_json(rep);
            emit_json(out, j);
            return verdict_exit(rep);
        }

        if (nrm->parsed()) {
            NormModel model = sc.id == "euclidean" ? NormModel::euclidean()
                                                   : sc.require_norm("norm");
            const DualNormModel dual(model);
            json j{{"space", sc.id}};
            if (!v_text.empty()) {
                const HPoint v = parse_point(v_text, "--v");
                j["v"] = to_json(v);
                j[want_dual ? "dual_norm" : "norm"] =
                    want_dual ? dual(Vec2{v.x, v.y}) : model(Vec2{v.x, v.y});
            }
            if (curve_n > 0) {
                const auto curve = dual.unit_curve(curve_n);
                json arr = json::array();
                for (const Vec2& u : curve) arr.push_back(json::array({u.u1, u.u2}));
                j["dual_unit_curve"] = std::move(arr);
            }
            emit_json(out, j);
            return 0;
        }

        if (ext->parsed()) {
            const HPoint p = parse_point(p_text, "--p"), q = parse_point(q_text, "--q");
            const HPoint r = sc.space->extend(p, q, s_len);
            emit_json(out, json{{"space", sc.space->name()}, {"r", to_json(r)}});
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
