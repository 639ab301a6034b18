#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qhgeo/core.hpp"
#include "qhgeo/report.hpp"
#include "qhgeo/space.hpp"
#include "qhgeo/ulgh.hpp"

namespace qhgeo {

// Parameters of the distance-vector embedding derived from ULGH data:
//   eps1 < eps1' < eps2' < eps2,   (eps2'-eps1')/2 + eps2' < eps2,
//   r1 = (1/2) min(eps2'-eps1', delta),
//   0 < eps0 < min(delta, eps2-eps2', eps1'-eps1).
struct EmbeddingConfig {
    ULGHParams params;
    double eps1p = 0.0;
    double eps2p = 0.0;
    double r1 = 0.0;
    double eps0 = 0.0;

    void validate() const {
        params.validate();
        if (!(params.eps1 < eps1p && eps1p < eps2p && eps2p < params.eps2))
            throw std::invalid_argument("EmbeddingConfig: eps1 < eps1' < eps2' < eps2 violated");
        if (!(0.5 * (eps2p - eps1p) + eps2p < params.eps2))
            throw std::invalid_argument("EmbeddingConfig: interpolant inequality violated");
        const double r1_bound = 0.5 * std::min(eps2p - eps1p, params.delta);
        if (!(r1 > 0.0 && r1 <= r1_bound + 1e-15))
            throw std::invalid_argument("EmbeddingConfig: r1 out of range");
        const double eps0_bound =
            std::min({params.delta, params.eps2 - eps2p, eps1p - params.eps1});
        if (!(eps0 > 0.0 && eps0 < eps0_bound))
            throw std::invalid_argument("EmbeddingConfig: eps0 out of range");
    }
};

// One-third/two-third interpolants of (eps1, eps2); they satisfy the
// interpolant inequality identically, and eps0 defaults to half its bound.
inline EmbeddingConfig derive_embedding_params(const ULGHParams& params) {
    params.validate();
    EmbeddingConfig cfg;
    cfg.params = params;
    const double gap = (params.eps2 - params.eps1) / 3.0;
    cfg.eps1p = params.eps1 + gap;
    cfg.eps2p = params.eps1 + 2.0 * gap;
    cfg.r1 = 0.5 * std::min(cfg.eps2p - cfg.eps1p, params.delta);
    cfg.eps0 = 0.5 * std::min({params.delta, params.eps2 - cfg.eps2p, cfg.eps1p - params.eps1});
    cfg.validate();
    return cfg;
}

// A landmark pair (x, z) of the net of D = {(x,z) : x in B(c0,r1), z in
// B(c0,r), d(x,z) = eps2'}.
struct Landmark {
    HPoint x;
    HPoint z;
};

struct EmbeddingResult {
    EmbeddingConfig config;
    std::vector<Landmark> landmarks;
    double coverage = 0.0; // probe-grid fraction within eps0 of the net
    long candidates = 0;

    int m() const { return static_cast<int>(landmarks.size()); }
};

namespace detail {

inline double halton(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    for (std::uint64_t n = i + 1; n > 0; n /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(n % base);
    }
    return r;
}

inline double d1(const Space& X, const Landmark& a, const Landmark& b) {
    return std::max(X.distance(a.x, b.x), X.distance(a.z, b.z));
}

// Deterministic candidate family: x on a low-discrepancy polar grid of
// B(c0, r1), z at distance eps2' in evenly spread geodesic directions with a
// phase shift. The direction count must resolve eps0 along the radius-eps2'
// sphere, otherwise the greedy net cannot cover the direction family.
inline int direction_count(const EmbeddingConfig& cfg) {
    return std::max(64, static_cast<int>(std::ceil(2.0 * kPi * cfg.eps2p / (0.5 * cfg.eps0))));
}

inline std::vector<Landmark> candidate_family(const Space& X, const EmbeddingConfig& cfg,
                                              int nx, int dirs, double phase) {
    std::vector<Landmark> out;
    out.reserve(static_cast<std::size_t>(nx) * dirs);
    for (int i = 0; i < nx; ++i) {
        const double theta = 2.0 * kPi * halton(static_cast<std::uint64_t>(i), 2);
        const double rad = cfg.r1 * (0.02 + 0.96 * halton(static_cast<std::uint64_t>(i), 3));
        const HPoint x = (i == 0) ? cfg.params.c0 : X.sphere_point(cfg.params.c0, rad, theta);
        for (int j = 0; j < dirs; ++j) {
            const double dir = 2.0 * kPi * (j + phase) / dirs;
            const HPoint z = X.sphere_point(x, cfg.eps2p, dir);
            if (X.distance(cfg.params.c0, z) <= cfg.params.r) out.push_back({x, z});
        }
    }
    return out;
}

} // namespace detail

// Greedy eps0-net of sampled D under d1 = max of the two distances. The
// retained landmarks are pairwise eps0-separated by construction; the probe
// grid (4x finer) estimates how much of D the net covers.
inline EmbeddingResult build_net(const Space& X, const EmbeddingConfig& cfg, int pool,
                                 bool run_probe = true) {
    cfg.validate();
    if (pool < 1000) throw std::invalid_argument("build_net: need pool >= 1000 candidate pairs");
    EmbeddingResult res;
    res.config = cfg;

    const int dirs = detail::direction_count(cfg);
    const int nx = std::max(48, pool / dirs);
    const auto candidates = detail::candidate_family(X, cfg, nx, dirs, 0.0);
    res.candidates = static_cast<long>(candidates.size());
    std::size_t hint = 0; // consecutive candidates tend to collide with one landmark
    for (const Landmark& cand : candidates) {
        bool separated = true;
        if (hint < res.landmarks.size() &&
            detail::d1(X, cand, res.landmarks[hint]) < cfg.eps0) {
            separated = false;
        } else {
            for (std::size_t i = 0; i < res.landmarks.size(); ++i) {
                if (detail::d1(X, cand, res.landmarks[i]) < cfg.eps0) {
                    separated = false;
                    hint = i;
                    break;
                }
            }
        }
        if (separated) res.landmarks.push_back(cand);
    }

    if (run_probe) {
        // 4x finer probe grid, phase-shifted between the candidate directions.
        const auto probes = detail::candidate_family(X, cfg, 2 * nx, 2 * dirs, 0.5);
        long covered = 0;
        hint = 0;
        for (const Landmark& probe : probes) {
            bool hit = false;
            if (hint < res.landmarks.size() &&
                detail::d1(X, probe, res.landmarks[hint]) <= cfg.eps0) {
                hit = true;
            } else {
                for (std::size_t i = 0; i < res.landmarks.size(); ++i) {
                    if (detail::d1(X, probe, res.landmarks[i]) <= cfg.eps0) {
                        hint = i;
                        hit = true;
                        break;
                    }
                }
            }
            if (hit) ++covered;
        }
        res.coverage = probes.empty() ? 0.0 : double(covered) / double(probes.size());
    }
    return res;
}

// The distance-vector map f(y) = (d(y, z_1), ..., d(y, z_m)).
inline std::vector<double> embed_point(const Space& X, const EmbeddingResult& res, HPoint y) {
    if (X.distance(res.config.params.c0, y) > res.config.r1 * (1.0 + 1e-9))
        throw std::domain_error("embed_point: y outside B(c0, r1)");
    std::vector<double> f;
    f.reserve(res.landmarks.size());
    for (const Landmark& lm : res.landmarks) f.push_back(X.distance(y, lm.z));
    return f;
}

// Statistical injectivity certificate: random separated pairs in B(c0, r1)
// must have distinct images; the minimal sup-coordinate gap is the margin.
inline CheckReport injectivity_report(const Space& X, const EmbeddingResult& res, int pairs,
                                      double separation, std::uint64_t seed = 11) {
    if (!(separation > 0.0))
        throw std::invalid_argument("injectivity_report: separation must be > 0");
    CheckReport rep;
    rep.name = "embedding-injectivity";
    rep.seed = seed;
    rep.tolerance = 0.0; // any strictly positive margin passes
    rep.verdict = Verdict::pass;
    std::mt19937_64 rng(seed);
    double min_margin = infinity();
    const HPoint c0 = res.config.params.c0;
    for (int i = 0; i < pairs; ++i) {
        HPoint u{}, v{};
        double duv = 0.0;
        for (int tries = 0; tries < 64; ++tries) {
            u = sample_in_ball(X, c0, res.config.r1, rng);
            v = sample_in_ball(X, c0, res.config.r1, rng);
            duv = X.distance(u, v);
            if (duv >= separation) break;
        }
        if (duv < separation) continue;
        double margin = 0.0;
        for (const Landmark& lm : res.landmarks)
            margin = std::max(margin, std::abs(X.distance(u, lm.z) - X.distance(v, lm.z)));
        ++rep.samples;
        if (margin < min_margin) min_margin = margin;
        if (!(margin > 0.0)) {
            rep.verdict = Verdict::fail;
            rep.witness = CheckWitness{{{"u", u}, {"v", v}}, {{"d_uv", duv}, {"margin", margin}}};
            rep.worst_residual = 0.0;
            return rep;
        }
    }
    rep.worst_residual = min_margin; // the minimal observed margin
    return rep;
}

inline nlohmann::json to_json(const EmbeddingResult& res) {
    nlohmann::json lms = nlohmann::json::array();
    for (const Landmark& lm : res.landmarks)
        lms.push_back({{"x", to_json(lm.x)}, {"z", to_json(lm.z)}});
    return nlohmann::json{{"eps0", res.config.eps0},
                          {"eps2p", res.config.eps2p},
                          {"r1", res.config.r1},
                          {"m", res.m()},
                          {"coverage", res.coverage},
                          {"landmarks", std::move(lms)}};
}

} // namespace qhgeo
