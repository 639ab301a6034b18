#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qhgeo/core.hpp"
#include "qhgeo/geodesic.hpp"
#include "qhgeo/rootfind.hpp"

namespace qhgeo {

// Arc length from (0,1) over the top of the lambda-geodesic through it:
// l(lambda) = (1/4)(1 - 1/lambda^2 + ln lambda^2).
inline double stadium_top_length(double lambda) {
    return 0.25 * (1.0 - 1.0 / (lambda * lambda)) + 0.5 * std::log(lambda);
}

// The unique lambda0 >= 1 with l(lambda0) = K; parameter of the widest
// geodesic radius of the sphere S((0,1), K).
inline double lambda0_of_K(double K) {
    if (!(K > 0.0)) throw std::invalid_argument("lambda0_of_K: K must be > 0");
    auto f = [&](double lam) { return stadium_top_length(lam) - K; };
    auto df = [&](double lam) { return 0.5 / (lam * lam * lam) + 0.5 / lam; };
    // l(lambda) >= (1/2) ln lambda, so the root lies in [1, e^{2K}].
    const double hi = std::exp(2.0 * K);
    return newton_bisect(f, df, 1.0, hi, std::exp(1.6 * K), 1e-15 * hi);
}

enum class SphereArc { B1, B2, B3 };

inline const char* arc_label(SphereArc arc, bool right) {
    switch (arc) {
    case SphereArc::B1: return right ? "B1_bottom_right" : "B1_bottom_left";
    case SphereArc::B2: return right ? "B2_side_right" : "B2_side_left";
    case SphereArc::B3: return right ? "B3_top_right" : "B3_top_left";
    }
    return "";
}

// Trace of a Stadium metric sphere. Arc points are stored in world
// coordinates; `frame` maps the normalized picture around (0,1) to the world,
// so pulled-back points satisfy the case equations of the normalized sphere.
struct SphereTrace {
    HPoint center;
    double K = 0.0;
    double lambda0 = 0.0;   // parameter of the widest radius, l(lambda0) = K
    double y_junction = 0.0; // normalized height of the B1/B2 joint (lambda = 1)
    GammaMap frame;          // normalized -> world

    std::vector<HPoint> b1_right, b2_right, b3_right;
    std::vector<HPoint> b1_left, b2_left, b3_left;
    HPoint pole_top, pole_bottom;

    const std::vector<HPoint>& arc(SphereArc which, bool right) const {
        switch (which) {
        case SphereArc::B1: return right ? b1_right : b1_left;
        case SphereArc::B2: return right ? b2_right : b2_left;
        case SphereArc::B3: return right ? b3_right : b3_left;
        }
        return b1_right;
    }
};

namespace sphere_detail {

// B1 (descending branch, y < 1): K = (1-y^2)/(4 lambda^2) - (1/2) ln y.
inline double b1_lambda_of_y(double K, double y) {
    return std::sqrt((1.0 - y * y) / (4.0 * K + 2.0 * std::log(y)));
}

// B3 (ascending branch before the top, mirrored): K = (y^2-1)/(4 lambda^2) + (1/2) ln y.
inline double b3_lambda_of_y(double K, double y) {
    return std::sqrt((y * y - 1.0) / (4.0 * K - 2.0 * std::log(y)));
}

// Height of the B1/B2 joint: the lambda = 1 case of the B1 equation.
inline double b1_junction_height(double K) {
    auto f = [&](double y) { return 0.25 * (1.0 - y * y) - 0.5 * std::log(y) - K; };
    auto df = [&](double y) { return -0.5 * y - 0.5 / y; };
    const double lo = std::exp(-2.0 * K); // B1 heights live in (e^{-2K}, 1)
    return newton_bisect(f, df, lo, 1.0, std::sqrt(lo), 1e-16);
}

// B2 height for a given lambda in [1, lambda0], from the over-the-top case
// (y^2+1)/(4 lambda^2) + (1/2) ln y - ln lambda = 1/2 - K.
inline double b2_height_of_lambda(double K, double lambda) {
    auto f = [&](double y) {
        return (y * y + 1.0) / (4.0 * lambda * lambda) + 0.5 * std::log(y) -
               std::log(lambda) - 0.5 + K;
    };
    auto df = [&](double y) { return 0.5 * y / (lambda * lambda) + 0.5 / y; };
    double lo = std::exp(-2.0 * K);
    if (f(lo) > 0.0) lo *= 1e-3; // keep a valid bracket for tiny lambda
    return newton_bisect(f, df, lo, lambda, 0.5 * (lo + lambda), 1e-16 * lambda);
}

} // namespace sphere_detail

// Traces the Stadium sphere S(center, K) by sweeping the geodesic parameter
// lambda over the three right-hand case families, then mirroring. Poles are
// the vertical-radius endpoints (0, e^{+-2K}) in the normalized frame.
inline SphereTrace sphere_trace(const NormModel& norm, HPoint center, double K, int n,
                                const Tolerances& tol = default_tolerances()) {
    if (norm.kind() != NormKind::stadium_closed_form)
        throw std::invalid_argument("sphere_trace: implemented for the Stadium norm");
    require_upper(center, "sphere_trace");
    if (!(K > 0.0)) throw std::invalid_argument("sphere_trace: K must be > 0");
    if (n < 16) throw std::invalid_argument("sphere_trace: need n >= 16");
    (void)tol;

    SphereTrace trace;
    trace.center = center;
    trace.K = K;
    trace.lambda0 = lambda0_of_K(K);
    trace.y_junction = sphere_detail::b1_junction_height(K);
    trace.frame = GammaMap::centering(center);

    const int m = std::max(n / 6, 8);
    const GammaMap& G = trace.frame;
    const double lam0 = trace.lambda0;

    // B1: lambda from 1 (joint with B2) toward infinity (bottom pole),
    // swept through u = 1/lambda so the pole limit is covered evenly.
    const double yb = std::exp(-2.0 * K);
    for (int i = 0; i <= m; ++i) {
        const double u = 1.0 - static_cast<double>(i) / (m + 1); // (0, 1]
        const double lam = 1.0 / u;
        auto f = [&](double y) {
            return 0.25 * (1.0 - y * y) / (lam * lam) - 0.5 * std::log(y) - K;
        };
        auto df = [&](double y) { return -0.5 * y / (lam * lam) - 0.5 / y; };
        const double y = newton_bisect(f, df, yb, 1.0, std::min(1.0, yb * std::exp(0.5)), 1e-16);
        const double x = (1.0 - y * y) / (2.0 * lam);
        trace.b1_right.push_back(G({x, y}));
    }
    std::reverse(trace.b1_right.begin(), trace.b1_right.end()); // pole side first

    // B2: lambda from 1 to lambda0 (the widest point).
    for (int i = 0; i <= m; ++i) {
        const double lam = 1.0 + (lam0 - 1.0) * i / m;
        const double y = sphere_detail::b2_height_of_lambda(K, lam);
        const double x = lam - (1.0 + y * y) / (2.0 * lam);
        trace.b2_right.push_back(G({x, y}));
    }

    // B3: heights from lambda0 (joint with B2) to the top pole e^{2K},
    // lambda recovered in closed form.
    const double yt = std::exp(2.0 * K);
    for (int i = 0; i <= m; ++i) {
        const double t = static_cast<double>(i) / (m + 1);
        const double y = lam0 + (yt - lam0) * t;
        const double lam = (i == 0) ? lam0 : sphere_detail::b3_lambda_of_y(K, y);
        const double x = (y * y - 1.0) / (2.0 * lam);
        trace.b3_right.push_back(G({x, y}));
    }

    auto mirror = [&](const std::vector<HPoint>& src) {
        std::vector<HPoint> out;
        out.reserve(src.size());
        for (HPoint p : src) {
            const HPoint q = G.inverse()(p);
            out.push_back(G({-q.x, q.y}));
        }
        return out;
    };
    trace.b1_left = mirror(trace.b1_right);
    trace.b2_left = mirror(trace.b2_right);
    trace.b3_left = mirror(trace.b3_right);
    // Poles through the engine's vertical arc inversion (stadium vertical
    // speed is 1/2, so these land on (0, e^{+-2K}) in the normalized frame).
    trace.pole_top = G(point_at_arc(norm, Geodesic{VerticalLine{0.0}}, HPoint{0.0, 1.0}, K));
    trace.pole_bottom = G(point_at_arc(norm, Geodesic{VerticalLine{0.0}}, HPoint{0.0, 1.0}, -K));
    return trace;
}

// Tangent slope dy/dx of a sphere arc at a point, by the case closed forms.
// When the tangent is vertical (the B2/B3 joint, y -> lambda) the reciprocal
// dx/dy is reported instead.
struct TangentSlope {
    bool vertical = false;
    double dydx = 0.0; // valid when !vertical
    double dxdy = 0.0; // always valid
    double lambda = 0.0;
};

inline TangentSlope sphere_tangent_slope(const SphereTrace& trace, SphereArc arc, HPoint world,
                                         const Tolerances& tol = default_tolerances()) {
    HPoint p = trace.frame.inverse()(world);
    double mirror = 1.0;
    if (p.x < 0.0) { // left arcs mirror the right-hand formulas
        p.x = -p.x;
        mirror = -1.0;
    }
    const double K = trace.K;
    double lambda = 0.0, resid = 0.0;
    switch (arc) {
    case SphereArc::B1:
        lambda = (1.0 - p.y * p.y) / (2.0 * p.x);
        resid = 0.25 * (1.0 - p.y * p.y) / (lambda * lambda) - 0.5 * std::log(p.y) - K;
        break;
    case SphereArc::B2:
        lambda = 0.5 * (p.x + std::sqrt(p.x * p.x + 2.0 * (1.0 + p.y * p.y)));
        resid = (p.y * p.y + 1.0) / (4.0 * lambda * lambda) + 0.5 * std::log(p.y) -
                std::log(lambda) - 0.5 + K;
        break;
    case SphereArc::B3:
        lambda = (p.y * p.y - 1.0) / (2.0 * p.x);
        resid = 0.25 * (p.y * p.y - 1.0) / (lambda * lambda) + 0.5 * std::log(p.y) - K;
        break;
    }
    if (!std::isfinite(lambda) || !(lambda > 0.0) || std::abs(resid) > 1e-6)
        throw std::invalid_argument("sphere_tangent_slope: point does not lie on the named arc");

    TangentSlope out;
    out.lambda = lambda;
    const double denom = (lambda - p.y) * (lambda + p.y);
    out.dxdy = mirror * ((arc == SphereArc::B3) ? -denom : denom) / (2.0 * p.y * lambda);
    if (std::abs(denom) < tol.vertical_sentinel * lambda * lambda) {
        out.vertical = true;
        return out;
    }
    out.dydx = 1.0 / out.dxdy;
    return out;
}

} // namespace qhgeo
