#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qhgeo/checks.hpp"
#include "qhgeo/core.hpp"
#include "qhgeo/report.hpp"
#include "qhgeo/rootfind.hpp"
#include "qhgeo/space.hpp"
#include "qhgeo/sphere.hpp"

namespace qhgeo {

// Uniform local G-homogeneity parameters on an orbal subset:
// B(c, eps) starlike from every x in U(c, delta), for all eps in (eps1, eps2)
// and all centers c in B(c0, r), with eps2 < r.
struct ULGHParams {
    HPoint c0{0.0, 1.0};
    double r = 0.0;
    double delta = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;

    void validate() const {
        if (!(0.0 < delta && delta <= eps1 && eps1 < eps2 && eps2 < r))
            throw std::invalid_argument(
                "ULGHParams: need 0 < delta <= eps1 < eps2 < r (orbal condition)");
    }
};

// The Stadium viewpoint region for the sphere S((0,1), K): bounded by four
// shifted lambda0-geodesics through the gate points (+-xi, 1), intersected
// with the open ball. All quantities live in the normalized frame with the
// center at (0,1).
struct ULGHRegion {
    double K = 0.0;
    double lambda0 = 0.0;
    double lambda1 = 0.0; // parameter where the sphere's B3 slope reaches -2
    double y1 = 0.0;      // height of that point: y1 = ((sqrt 5 - 1)/2) lambda1
    double nu = 0.0;      // |x(lambda1)| - |x(lambda0)|
    double eta = 0.0;     // max{x : (x,1) in B((0,1),K)}
    double xi = 0.0;      // min(nu, eta)
    double x0_abs = 0.0;  // |x(lambda0)| = (lambda0 - 1/lambda0)/2

    double inner_shift() const { return x0_abs - xi; }
    double outer_shift() const { return x0_abs + xi; }

    // Arch membership: p lies under the lambda0-arch centered at (c, 0)
    // exactly when the Stadium dual of p - (c,0) is at most lambda0.
    bool under_arch(double c, HPoint p) const {
        return stadium_dual(p.x - c, p.y) <= lambda0;
    }

    // The set P = D cap U((0,1), K) in the normalized frame: under both inner
    // arches, outside both outer arches, inside the open metric ball.
    bool contains(HPoint p) const {
        if (!in_upper_halfplane(p)) return false;
        if (!under_arch(inner_shift(), p) || !under_arch(-inner_shift(), p)) return false;
        if (under_arch(outer_shift(), p) || under_arch(-outer_shift(), p)) return false;
        return distance(NormModel::stadium(), HPoint{0.0, 1.0}, p) < K;
    }
};

// Golden-ratio slope point of B3, the over-the-top chord reach at height 1,
// and the horizontal slack xi of the Stadium sphere S((0,1), K). Every root
// is found by safeguarded Newton and re-verifiable to ~1e-15 residual.
inline ULGHRegion ulgh_region(double K) {
    if (!(K > 0.0)) throw std::invalid_argument("ulgh_region: K must be > 0");
    ULGHRegion reg;
    reg.K = K;
    reg.lambda0 = lambda0_of_K(K);
    reg.x0_abs = 0.5 * (reg.lambda0 - 1.0 / reg.lambda0);

    // lambda1: slope dy/dx = -2 on B3 forces y = ((sqrt 5 - 1)/2) lambda
    // there; substituting into the B3 sphere equation pins lambda1.
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    {
        auto f = [&](double lam) {
            const double y = golden * lam;
            return 0.25 * (y * y - 1.0) / (lam * lam) + 0.5 * std::log(y) - K;
        };
        auto df = [&](double lam) {
            return 0.5 / (lam * lam * lam) + 0.5 / lam;
        };
        const double lo = 1.0 / golden;
        const double hi = std::exp(2.0 * K) / golden + 1.0;
        reg.lambda1 = newton_bisect(f, df, lo, hi, 0.5 * (lo + hi), 1e-15 * hi);
        reg.y1 = golden * reg.lambda1;
    }

    reg.nu = 0.5 * (reg.lambda1 - reg.lambda0 + 1.0 / reg.lambda0 - 1.0 / reg.lambda1);

    // eta: the widest over-the-top chord at height 1,
    // d((0,1),(x,1)) = ln(lambda) + (1 - 1/lambda^2)/2 = K with x = lambda - 1/lambda.
    {
        auto f = [&](double lam) {
            return std::log(lam) + 0.5 * (1.0 - 1.0 / (lam * lam)) - K;
        };
        auto df = [&](double lam) { return 1.0 / lam + 1.0 / (lam * lam * lam); };
        const double hi = std::exp(K) + 1.0;
        const double lam_eta = newton_bisect(f, df, 1.0, hi, std::exp(0.5 * K), 1e-15 * hi);
        reg.eta = lam_eta - 1.0 / lam_eta;
    }

    reg.xi = std::min(reg.nu, reg.eta);
    return reg;
}

// Conservative ULGH parameters derived from the region construction: the
// admissible viewpoint radius delta is the largest sampled metric ball
// around the center that stays inside P(eps) for every eps in [eps1, eps2].
inline ULGHParams ulgh_params_from_region(double K, int probe_dirs = 64) {
    ULGHParams params;
    params.c0 = {0.0, 1.0};
    params.eps2 = K;
    params.eps1 = 0.8 * K;
    params.r = 1.25 * K;

    const StadiumSpace space;
    std::vector<ULGHRegion> regions;
    for (const double eps : {params.eps1, 0.5 * (params.eps1 + params.eps2), params.eps2})
        regions.push_back(ulgh_region(eps));

    auto ok = [&](double rad) {
        for (int i = 0; i < probe_dirs; ++i) {
            const HPoint p = space.sphere_point(params.c0, rad, 2.0 * kPi * i / probe_dirs);
            for (const auto& reg : regions)
                if (!reg.contains(p)) return false;
        }
        return true;
    };
    double lo = 0.0, hi = params.eps1;
    if (ok(hi)) {
        lo = hi;
    } else {
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ok(mid) ? lo : hi) = mid;
        }
    }
    params.delta = 0.9 * lo;
    if (!(params.delta > 0.0))
        throw numeric_error("ulgh_params_from_region: empty viewpoint region");
    params.validate();
    return params;
}

// Definition-level sweep: starlikeness of B(c, eps) from viewpoints in U(c, delta),
// over grid-sampled centers in B(c0, r - eps2) and radii in (eps1, eps2).
inline CheckReport check_ulgh(const Space& X, const ULGHParams& params, int grid,
                              int rays = 72, const Tolerances& tol = default_tolerances()) {
    params.validate();
    if (grid < 1) throw std::invalid_argument("check_ulgh: grid must be >= 1");
    CheckReport rep;
    rep.name = "uniform-local-g-homogeneity";
    rep.tolerance = 1e-9;
    rep.verdict = Verdict::pass;

    std::vector<HPoint> centers{params.c0};
    for (int i = 0; i < grid; ++i) {
        const double frac = 0.8 * (i + 1.0) / grid;
        centers.push_back(
            X.sphere_point(params.c0, frac * (params.r - params.eps2), 2.0 * kPi * i / grid + 0.3));
    }

    for (const HPoint& c : centers) {
        for (int ei = 0; ei <= grid; ++ei) {
            const double eps =
                params.eps1 + (params.eps2 - params.eps1) * (ei + 0.5) / (grid + 1.0);
            std::vector<HPoint> viewpoints{c};
            for (int vi = 0; vi < 4; ++vi)
                viewpoints.push_back(
                    X.sphere_point(c, params.delta * (vi % 2 ? 0.85 : 0.45),
                                   2.0 * kPi * vi / 4.0 + 0.7));
            for (const HPoint& v : viewpoints) {
                CheckReport one = check_starlike(X, c, eps, v, rays, 16, tol);
                rep.samples += one.samples;
                rep.worst_residual = std::max(rep.worst_residual, one.worst_residual);
                if (one.verdict != Verdict::pass) {
                    rep.verdict = one.verdict;
                    rep.witness = one.witness;
                    rep.note = one.note;
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace qhgeo
