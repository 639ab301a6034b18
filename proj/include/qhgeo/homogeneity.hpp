#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qhgeo/core.hpp"
#include "qhgeo/rootfind.hpp"
#include "qhgeo/space.hpp"

namespace qhgeo {

// --- Elementary maps ---------------------------------------------------------

// The unique antipode of z with respect to a: z - a - z' and d(a,z') = d(a,z).
inline HPoint antipode(const Space& X, HPoint a, HPoint z) {
    const double d = X.distance(a, z);
    if (d == 0.0) throw std::invalid_argument("antipode: z must differ from a");
    return X.extend(z, a, d);
}

// Radial projection onto S(x, r): the point at arc distance r from x along
// the ray x -> z.
inline HPoint project_to_sphere(const Space& X, HPoint x, double r, HPoint z) {
    if (!(r > 0.0)) throw std::invalid_argument("project_to_sphere: r must be > 0");
    if (X.distance(x, z) == 0.0)
        throw std::invalid_argument("project_to_sphere: z must differ from x");
    return X.point_toward(x, z, r);
}

inline HPoint midpoint(const Space& X, HPoint p, HPoint q) {
    const double d = X.distance(p, q);
    if (d == 0.0) throw std::invalid_argument("midpoint: points must be distinct");
    return X.point_toward(p, q, 0.5 * d);
}

// --- Cone coordinates --------------------------------------------------------

// Representation of z in B(x, r) by its sphere point y(z) and normalized
// radius t = d(x,z)/r. The sphere point is undefined at the vertex; the
// vertical-ray point is reported there with at_vertex set, and callers must
// branch on it.
struct ConeCoord {
    HPoint boundary_point;
    double t = 0.0;
    bool at_vertex = false;
};

inline ConeCoord cone_coords(const Space& X, HPoint x, double r, HPoint z,
                             const Tolerances& tol = default_tolerances()) {
    if (!(r > 0.0)) throw std::invalid_argument("cone_coords: r must be > 0");
    const double d = X.distance(x, z);
    if (d > r * (1.0 + tol.membership))
        throw std::invalid_argument("cone_coords: z lies outside B(x, r)");
    ConeCoord c;
    c.t = std::min(d / r, 1.0);
    if (d <= 1e-12 * r) {
        c.at_vertex = true;
        c.boundary_point = X.sphere_point(x, r, 0.5 * kPi);
        c.t = 0.0;
        return c;
    }
    c.boundary_point = X.point_toward(x, z, r);
    return c;
}

inline HPoint cone_point(const Space& X, HPoint x, double r, HPoint boundary, double t) {
    if (t <= 0.0) return x;
    return X.point_toward(x, boundary, t * r);
}

// --- Interval isotopy (the h(r,t) = r^{1+t(alpha-1)} family) ------------------

// Homeomorphisms of [0,1] fixing the endpoints with h(.,0) = id and
// h(r2, 1) = r1, where alpha solves r1 = r2^alpha.
inline double interval_isotopy(double r, double t, double r1, double r2) {
    if (!(r1 > 0.0 && r1 < 1.0 && r2 > 0.0 && r2 < 1.0))
        throw std::invalid_argument("interval_isotopy: need r1, r2 in (0,1)");
    if (!(r >= 0.0 && r <= 1.0 && t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("interval_isotopy: need r, t in [0,1]");
    if (r == 0.0) return 0.0;
    if (r == 1.0) return 1.0;
    const double alpha = std::log(r1) / std::log(r2);
    return std::pow(r, 1.0 + t * (alpha - 1.0));
}

// --- Radial isotopy of a ball -------------------------------------------------

// The cone isotopy conjugated through cone coordinates of B(x0, r): fixes the
// sphere and the vertex, and at t = 1 carries w to z along their common
// radius. Queries outside the closed ball are returned untouched.
inline HPoint radial_ball_isotopy(const Space& X, HPoint x0, double r, HPoint w, HPoint z,
                                  double t, HPoint query,
                                  const Tolerances& tol = default_tolerances()) {
    const double rw = X.distance(x0, w) / r;
    const double rz = X.distance(x0, z) / r;
    if (!(rw > 0.0 && rw < 1.0 && rz > 0.0 && rz < 1.0))
        throw std::invalid_argument("radial_ball_isotopy: w, z must be interior, distinct from x0");
    const HPoint bw = X.point_toward(x0, w, r);
    const HPoint bz = X.point_toward(x0, z, r);
    if (X.distance(bw, bz) > 1e-6 * r)
        throw std::invalid_argument("radial_ball_isotopy: w and z do not share a radius");
    if (t == 0.0) return query;

    const double tq = X.distance(x0, query) / r;
    if (tq >= 1.0) return query; // sphere and exterior fixed
    if (tq <= 1e-12) return x0;  // vertex fixed
    const ConeCoord cc = cone_coords(X, x0, r, query, tol);
    const double h = interval_isotopy(cc.t, t, rz, rw);
    return cone_point(X, x0, r, cc.boundary_point, h);
}

// --- Center-moving ball homeomorphism -----------------------------------------

// Bijection of B(x0, r) fixing S(x0, r) with x0 -> x, built exactly as in the
// auxiliary-ball proof: slide x0 to an interior point y of the radius
// z0 -> z inside the auxiliary ball B(z0, 3r/4), then slide y to x radially
// in B(x0, r). Queries outside B(x0, r) are returned bitwise unchanged.
inline HPoint ball_homeomorphism(const Space& X, HPoint x0, double r, HPoint x, HPoint query,
                                 const Tolerances& tol = default_tolerances()) {
    const double dx = X.distance(x0, x);
    if (dx == 0.0) return query;
    if (dx >= r) throw std::invalid_argument("ball_homeomorphism: x must lie in U(x0, r)");
    if (X.distance(x0, query) >= r) return query;

    const HPoint s0 = X.point_toward(x0, x, r);       // x0 - x - s0 on the sphere
    const HPoint z = X.point_toward(s0, x0, 1.5 * r); // s0 - x0 - z, d(x0,z) = r/2
    const HPoint z0 = midpoint(X, s0, z);             // d(z0,x0) = r/4, radius r' = 3r/4
    const HPoint y = midpoint(X, z0, x0);             // interior point of z0 -> z
    const double rp = 0.75 * r;

    HPoint q = query;
    if (X.distance(z0, q) < rp) q = radial_ball_isotopy(X, z0, rp, x0, y, 1.0, q, tol);
    if (X.distance(x0, q) < r) q = radial_ball_isotopy(X, x0, r, y, x, 1.0, q, tol);
    return q;
}

// --- Global homeomorphism by chained ball moves -------------------------------

// Chains center-moving homeomorphisms along the segment x -> y with ball
// radius below the extendibility radius; maps x to y and fixes every point
// beyond the chain's balls exactly.
inline HPoint space_homeomorphism(const Space& X, HPoint x, HPoint y, HPoint query,
                                  double step_radius = 0.5,
                                  const Tolerances& tol = default_tolerances()) {
    const double d = X.distance(x, y);
    if (d == 0.0) return query;
    double r = step_radius;
    const double rho_bound = std::min(X.rho(x), X.rho(y));
    if (std::isfinite(rho_bound)) r = std::min(r, 0.25 * rho_bound);
    const int k = std::max(1, static_cast<int>(std::ceil(d / (0.5 * r))));
    HPoint q = query;
    HPoint prev = x;
    for (int i = 1; i <= k; ++i) {
        const HPoint next = (i == k) ? y : X.point_toward(x, y, d * i / k);
        q = ball_homeomorphism(X, prev, r, next, q, tol);
        prev = next;
    }
    return q;
}

// --- Retract flow on a punctured sphere ---------------------------------------

// Deformation of S(x0, r) - {removed} onto the antipode x' of removed:
// y flows along the segment y -> x', radially re-projected to the sphere.
inline HPoint sphere_retract_flow(const Space& X, HPoint x0, double r, HPoint removed, HPoint y,
                                  double t, const Tolerances& tol = default_tolerances()) {
    if (std::abs(X.distance(x0, y) - r) > tol.membership * (1.0 + r))
        throw std::invalid_argument("sphere_retract_flow: y must lie on S(x0, r)");
    if (X.distance(y, removed) == 0.0)
        throw std::invalid_argument("sphere_retract_flow: y equals the removed point");
    const HPoint xp = antipode(X, x0, removed);
    const double d = X.distance(y, xp);
    if (d <= tol.membership) return xp; // the antipode is stationary
    if (t == 0.0) return y;
    const HPoint h = X.point_toward(y, xp, t * d);
    if (t == 1.0) return xp;
    return project_to_sphere(X, x0, r, h);
}

// --- Sphere isotopy of the strong-homogeneity proof ---------------------------

// Inverse projection: the unique point of S(x, eps) on the ray m -> w, found
// by monotone crossing of the distance-to-x function (well defined whenever
// the ball is starlike with respect to m).
inline HPoint project_from_center_to_sphere(const Space& X, HPoint m, HPoint w, HPoint x,
                                            double eps) {
    const double dxm = X.distance(x, m);
    if (dxm >= eps)
        throw std::invalid_argument("inverse projection: m must lie inside B(x, eps)");
    auto g = [&](double s) { return X.distance(x, X.point_toward(m, w, s)) - eps; };
    const double hi = eps + dxm + 1e-9;
    const double s = bisect(g, 1e-12, hi, 1e-13 * hi, 220);
    return X.point_toward(m, w, s);
}

// One evaluation of the sphere isotopy H_t at a query on S(x, eps). The path
// alpha is sampled; frame i uses alpha[i]. H_0 is the identity (the frame-0
// maps collapse to the antipodal involution applied twice) and H_t carries
// alpha[0] to alpha[t].
inline HPoint sphere_isotopy(const Space& X, HPoint x, double eps,
                             const std::vector<HPoint>& path, std::size_t frame, HPoint query,
                             const Tolerances& tol = default_tolerances()) {
    if (path.size() < 2) throw std::invalid_argument("sphere_isotopy: need a sampled path");
    if (frame >= path.size()) throw std::invalid_argument("sphere_isotopy: frame out of range");
    if (std::abs(X.distance(x, query) - eps) > tol.membership * (1.0 + eps))
        throw std::invalid_argument("sphere_isotopy: query must lie on S(x, eps)");

    const HPoint yprime = antipode(X, x, path.front());
    const HPoint alpha_t = path[frame];
    const double d_ay = X.distance(alpha_t, yprime);
    if (d_ay == 0.0)
        throw std::invalid_argument("sphere_isotopy: path crosses the antipode of its start");
    const HPoint m = midpoint(X, alpha_t, yprime);
    const double gamma = 0.5 * d_ay;

    const HPoint q1 = antipode(X, x, query);                       // Phi[x, eps]
    const HPoint q2 = project_to_sphere(X, m, gamma, q1);          // psi[m, gamma]
    const HPoint q3 = antipode(X, m, q2);                          // Phi[m, gamma]
    return project_from_center_to_sphere(X, m, q3, x, eps);        // psi[m, gamma]^{-1}
}

// --- Frame dumps ---------------------------------------------------------------

// Sampled correspondence of one isotopy frame, for export and animation.
struct IsotopyFrame {
    double t = 0.0;
    std::vector<std::pair<HPoint, HPoint>> pairs;
};

} // namespace qhgeo
