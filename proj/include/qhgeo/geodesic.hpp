#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qhgeo/core.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/quadrature.hpp"
#include "qhgeo/rootfind.hpp"

namespace qhgeo {

// ---------------------------------------------------------------------------
// Geodesic representations.
//
// Maximal geodesics of the quasihyperbolic plane are the vertical lines and
// the level sets {F*(x - a, y) = k} in y > 0. For the Stadium norm the level
// sets are the parabola arches x - a = +-(lambda^2 - y^2)/(2 lambda),
// 0 < y <= lambda, handled in closed form.
// ---------------------------------------------------------------------------

struct VerticalLine {
    double a = 0.0; // the line x = a
};

struct StadiumParabola {
    double lambda = 1.0; // level value; the top point is (a, lambda)
    double a = 0.0;      // symmetry axis
};

struct GenericLevelSet {
    double a = 0.0;
    double k = 1.0;
    std::vector<HPoint> polyline; // samples of {F*(x-a, y) = k, y > 0}
};

using Geodesic = std::variant<VerticalLine, StadiumParabola, GenericLevelSet>;

// F* of the Stadium in closed form: |x| + sqrt(x^2 + y^2).
inline double stadium_dual(double x, double y) { return std::abs(x) + std::hypot(x, y); }

namespace stadium {

// Horizontal offset of the branch at height y: (lambda^2 - y^2)/(2 lambda),
// written in ratio form so very large lambda stays finite.
inline double branch_offset(double lambda, double y) {
    const double t = y / lambda;
    return 0.5 * lambda * (1.0 - t * t);
}

// Arc length from the top point (a, lambda) down one branch to height y.
inline double length_from_top(double lambda, double y) {
    const double t = y / lambda;
    return 0.5 * std::log(lambda / y) + 0.25 * (1.0 - t * t);
}

// Same-branch arc length between heights y1 <= y2.
inline double length_same_branch(double lambda, double y1, double y2) {
    const double t1 = y1 / lambda, t2 = y2 / lambda;
    return 0.5 * std::log(y2 / y1) + 0.25 * (t2 * t2 - t1 * t1);
}

// Signed arc-length coordinate along the arch, increasing with x and zero at
// the top.
inline double signed_coord(const StadiumParabola& g, HPoint p) {
    const double side = (p.x > g.a) ? 1.0 : (p.x < g.a ? -1.0 : 0.0);
    return side * length_from_top(g.lambda, p.y);
}

struct BranchSolution {
    double lambda = 0.0;
    double a = 0.0;
    int sign_p = 0; // +1 right branch, -1 left branch
    int sign_q = 0;
};

// Enumerates the four branch-sign assignments of
//   x - a = s * (lambda^2 - y^2) / (2 lambda)
// for the pair (p, q) and returns every admissible solution
// (lambda >= max height, finite). Theorem-level uniqueness makes distinct
// admissible curves collapse to exactly one.
inline std::vector<BranchSolution> branch_candidates(HPoint p, HPoint q) {
    std::vector<BranchSolution> out;
    out.reserve(4);
    const double ymax = std::max(p.y, q.y);
    const double dx = p.x - q.x;
    auto admit = [&](double lambda, int sp, int sq) {
        if (!std::isfinite(lambda) || lambda <= 0.0) return;
        if (lambda < ymax * (1.0 - 1e-12)) return;
        const double lam = std::max(lambda, ymax);
        const double a = p.x - sp * branch_offset(lam, p.y);
        if (!std::isfinite(a)) return;
        out.push_back({lam, a, sp, sq});
    };
    // Same-sign branches: x_p - x_q = s (y_q^2 - y_p^2) / (2 lambda).
    if (dx != 0.0) {
        const double num = (q.y - p.y) * (q.y + p.y);
        admit(+num / (2.0 * dx), +1, +1);
        admit(-num / (2.0 * dx), -1, -1);
    }
    // Mixed branches: x_p - x_q = +-(lambda - (y_p^2 + y_q^2)/(2 lambda)).
    const double c = 0.5 * (p.y * p.y + q.y * q.y);
    const double root = std::sqrt(dx * dx + 4.0 * c);
    admit(0.5 * (dx + root), +1, -1);
    admit(0.5 * (-dx + root), -1, +1);
    return out;
}

// Exactly one admissible candidate exists for exactly representable inputs;
// a second one can only enter through the admissibility slack at
// lambda = max height (points closer than the curve's floating-point
// resolution), in which case the transversal candidate is the right one.
inline StadiumParabola solve_parabola(HPoint p, HPoint q) {
    const auto cands = branch_candidates(p, q);
    if (cands.empty())
        throw numeric_error("stadium geodesic solver: no admissible branch solution");
    const double ymax = std::max(p.y, q.y);
    std::optional<BranchSolution> best;
    for (const auto& c : cands)
        if (!best || c.lambda > best->lambda) best = c;
    for (const auto& c : cands) {
        const double scale = std::max({1.0, std::abs(best->lambda), std::abs(best->a)});
        const bool same_curve = std::abs(c.lambda - best->lambda) <= 1e-9 * scale &&
                                std::abs(c.a - best->a) <= 1e-9 * scale;
        if (!same_curve && c.lambda - ymax > 1e-9 * ymax)
            throw numeric_error("stadium geodesic solver: branch enumeration is ambiguous");
    }
    return {best->lambda, best->a};
}

} // namespace stadium

// ---------------------------------------------------------------------------
// Generic level-set engine. Works for any valid norm through the rotated
// polar dual; the level curve is star-shaped about (a, 0), so points are
// recovered by exact radial evaluation and arc length by adaptive quadrature
// of F(dx, dy)/y in the angle parameter.
// ---------------------------------------------------------------------------

namespace generic {

inline double profile(const DualNormModel& dual, double phi) {
    return dual(Vec2{std::cos(phi), std::sin(phi)});
}

// d/dphi of F*(cos phi, sin phi); one-sided at profile corners.
inline double profile_deriv(const DualNormModel& dual, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    switch (dual.base().kind()) {
    case NormKind::stadium_closed_form:
        return (c > 0.0 ? -s : (c < 0.0 ? s : 0.0));
    case NormKind::euclidean:
        return 0.0;
    case NormKind::sampled_indicatrix: {
        double best = -infinity(), deriv = 0.0;
        for (const Vec2& u : dual.base().indicatrix()) {
            const double v = c * u.u2 - s * u.u1;
            if (v > best) {
                best = v;
                deriv = -s * u.u2 - c * u.u1;
            }
        }
        return deriv;
    }
    }
    return 0.0;
}

inline HPoint level_point(const DualNormModel& dual, double a, double k, double phi) {
    const double r = k / profile(dual, phi);
    return {a + r * std::cos(phi), r * std::sin(phi)};
}

// ds/dphi along the level curve (independent of the axis position).
inline double speed(const DualNormModel& dual, double k, double phi) {
    const double F = profile(dual, phi);
    const double dF = profile_deriv(dual, phi);
    const double r = k / F;
    const double rp = -k * dF / (F * F);
    const double c = std::cos(phi), s = std::sin(phi);
    const double xd = rp * c - r * s;
    const double yd = rp * s + r * c;
    const double y = r * s;
    return dual.base()(Vec2{xd, yd}) / y;
}

// Arc-length quadrature runs in t = ln tan(phi/2). The substitution absorbs
// the 1/sin(phi) blow-up of ds/dphi at the ideal boundary: the transformed
// integrand  speed(phi(t)) / cosh(t)  is bounded (identically 1 for the
// Euclidean norm), so the feet of the arch cost nothing to approach.
inline double t_of_phi(double phi) { return std::log(std::tan(0.5 * phi)); }
inline double phi_of_t(double t) { return 2.0 * std::atan(std::exp(t)); }

inline double speed_t(const DualNormModel& dual, double k, double t) {
    return speed(dual, k, phi_of_t(t)) / std::cosh(t);
}

// Oriented arc length between substituted parameters (positive for t1 > t0).
// Splits at t = 0 (phi = pi/2) where rounded-cap duals kink.
inline double arc_between_params(const DualNormModel& dual, double k, double t0, double t1,
                                 const Tolerances& tol) {
    auto f = [&](double t) { return speed_t(dual, k, t); };
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    double len = 0.0;
    if (lo < 0.0 && hi > 0.0) {
        len = adaptive_simpson(f, lo, 0.0, 0.5 * tol.quadrature) +
              adaptive_simpson(f, 0.0, hi, 0.5 * tol.quadrature);
    } else {
        len = adaptive_simpson(f, lo, hi, tol.quadrature);
    }
    return (t1 >= t0) ? len : -len;
}

inline double arc_between_angles(const DualNormModel& dual, double k, double phi0,
                                 double phi1, const Tolerances& tol) {
    return arc_between_params(dual, k, t_of_phi(phi0), t_of_phi(phi1), tol);
}

inline double angle_of(double a, HPoint p) { return std::atan2(p.y, p.x - a); }

// Solves for the symmetry axis a of the level set through p and q from
// F*(p - a) = F*(q - a); the level value k follows. Uniqueness of geodesics
// makes the root unique, and the difference has opposite tail signs, so an
// expanding bracket plus bisection cannot miss it.
inline std::pair<double, double> solve_axis(const DualNormModel& dual, HPoint p, HPoint q,
                                            const Tolerances& tol) {
    auto h = [&](double a) {
        return dual(Vec2{p.x - a, p.y}) - dual(Vec2{q.x - a, q.y});
    };
    const double scale = std::abs(p.x - q.x) + p.y + q.y + 1.0;
    double lo = std::min(p.x, q.x) - 2.0 * scale;
    double hi = std::max(p.x, q.x) + 2.0 * scale;
    auto bracket = expand_bracket(h, lo, hi);
    const double a = bisect(h, bracket.first, bracket.second,
                            1e-15 * (std::abs(bracket.first) + std::abs(bracket.second) + 1.0),
                            400);
    const double kp = dual(Vec2{p.x - a, p.y});
    const double kq = dual(Vec2{q.x - a, q.y});
    const double k = 0.5 * (kp + kq);
    if (std::abs(kp - kq) > 1e4 * tol.geodesic_residual * k)
        throw numeric_error("generic geodesic solver: level values disagree, residual " +
                            std::to_string(std::abs(kp - kq) / k));
    return {a, k};
}

inline std::vector<HPoint> trace_polyline(const DualNormModel& dual, double a, double k, int n) {
    std::vector<HPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double phi = kPi * i / (n + 1);
        pts.push_back(level_point(dual, a, k, phi));
    }
    return pts;
}

// Inverts the arc-length parametrization: returns the angle at oriented arc
// length s from base_phi, where positive s moves toward smaller phi
// (increasing x). Solved in the substituted parameter with Newton iteration
// (exact speed as derivative) safeguarded by a bisection bracket.
inline double angle_at_arc(const DualNormModel& dual, double k, double base_phi,
                           double s, const Tolerances& tol) {
    if (s == 0.0) return base_phi;
    const double base_t = t_of_phi(base_phi);
    auto u = [&](double t) { return arc_between_params(dual, k, t, base_t, tol); };
    // u is strictly decreasing in t; u(base_t) = 0. cosh overflows past ~700.
    const double t_cap = 700.0;
    double lo, hi;
    double step = 0.5;
    if (s > 0.0) {
        hi = base_t;
        lo = base_t;
        for (;;) {
            lo -= step;
            if (lo < -t_cap)
                throw numeric_error("generic point_at_arc: arc parameter out of numeric range");
            if (u(lo) >= s) break;
            step *= 2.0;
        }
    } else {
        lo = base_t;
        hi = base_t;
        for (;;) {
            hi += step;
            if (hi > t_cap)
                throw numeric_error("generic point_at_arc: arc parameter out of numeric range");
            if (u(hi) <= s) break;
            step *= 2.0;
        }
    }
    auto f = [&](double t) { return u(t) - s; };
    auto df = [&](double t) { return -speed_t(dual, k, t); };
    const double root = newton_bisect(f, df, lo, hi, 0.5 * (lo + hi), tol.arc_inversion);
    return phi_of_t(root);
}

} // namespace generic

// ---------------------------------------------------------------------------
// Engine facade: dispatch between closed-form Stadium and generic paths.
// ---------------------------------------------------------------------------

namespace detail {

inline double vertical_speed(const NormModel& norm) { return norm(Vec2{0.0, 1.0}); }

inline bool nearly_vertical(HPoint p, HPoint q) {
    const double scale = std::abs(p.x) + std::abs(q.x) + p.y + q.y;
    return std::abs(p.x - q.x) <= 1e-12 * scale;
}

} // namespace detail

// Relative residual of p against the geodesic's defining equation.
inline double membership_residual(const NormModel& norm, const Geodesic& g, HPoint p) {
    if (const auto* v = std::get_if<VerticalLine>(&g))
        return std::abs(p.x - v->a) / (1.0 + std::abs(v->a) + p.y);
    if (const auto* sp = std::get_if<StadiumParabola>(&g))
        return std::abs(stadium_dual(p.x - sp->a, p.y) - sp->lambda) / sp->lambda;
    const auto& ls = std::get<GenericLevelSet>(g);
    const DualNormModel dual(norm);
    return std::abs(dual(Vec2{p.x - ls.a, p.y}) - ls.k) / ls.k;
}

inline void require_on_geodesic(const NormModel& norm, const Geodesic& g, HPoint p,
                                const Tolerances& tol, const char* who) {
    const double r = membership_residual(norm, g, p);
    if (r > tol.membership)
        throw std::invalid_argument(std::string(who) + ": point off the geodesic, residual " +
                                    std::to_string(r));
}

// The unique geodesic through two distinct points of the open half-plane.
inline Geodesic geodesic_through(const NormModel& norm, HPoint p, HPoint q,
                                 const Tolerances& tol = default_tolerances()) {
    require_upper(p, "geodesic_through");
    require_upper(q, "geodesic_through");
    if (p.x == q.x && p.y == q.y)
        throw std::invalid_argument("geodesic_through: points must be distinct");
    if (norm.kind() == NormKind::stadium_closed_form) {
        if (p.x == q.x) return VerticalLine{p.x};
        const auto sol = stadium::branch_candidates(p, q);
        if (sol.empty()) return VerticalLine{p.x}; // overflow fallback: numerically vertical
        return stadium::solve_parabola(p, q);
    }
    if (detail::nearly_vertical(p, q)) return VerticalLine{0.5 * (p.x + q.x)};
    const DualNormModel dual(norm);
    const auto [a, k] = generic::solve_axis(dual, p, q, tol);
    return GenericLevelSet{a, k, generic::trace_polyline(dual, a, k, 129)};
}

// Arc length between two points of a common geodesic.
//   Vertical:      F(0,1) |ln(y_q/y_p)|
//   Stadium arch:  closed forms, summing the two top-relative lengths when
//                  the points sit on opposite branches
//   Level set:     adaptive quadrature of F(dx,dy)/y in the angle parameter
inline double arc_length(const NormModel& norm, const Geodesic& g, HPoint p, HPoint q,
                         const Tolerances& tol = default_tolerances()) {
    require_upper(p, "arc_length");
    require_upper(q, "arc_length");
    require_on_geodesic(norm, g, p, tol, "arc_length");
    require_on_geodesic(norm, g, q, tol, "arc_length");
    if (const auto* v = std::get_if<VerticalLine>(&g)) {
        (void)v;
        return detail::vertical_speed(norm) * std::abs(std::log(q.y / p.y));
    }
    if (const auto* sp = std::get_if<StadiumParabola>(&g)) {
        if (norm.kind() != NormKind::stadium_closed_form)
            throw std::invalid_argument("arc_length: StadiumParabola requires the Stadium norm");
        const double sigp = stadium::signed_coord(*sp, p);
        const double sigq = stadium::signed_coord(*sp, q);
        if (sigp * sigq >= 0.0)
            return stadium::length_same_branch(sp->lambda, std::min(p.y, q.y), std::max(p.y, q.y));
        return stadium::length_from_top(sp->lambda, p.y) + stadium::length_from_top(sp->lambda, q.y);
    }
    const auto& ls = std::get<GenericLevelSet>(g);
    const DualNormModel dual(norm);
    return std::abs(generic::arc_between_angles(dual, ls.k, generic::angle_of(ls.a, p),
                                                generic::angle_of(ls.a, q), tol));
}

// Point on g at signed arc length s from base. Positive s moves with
// increasing x along the curve (increasing y on verticals). Maximal geodesics
// have infinite length toward the ideal boundary in both directions, so every
// finite s that stays within double range is admissible.
inline HPoint point_at_arc(const NormModel& norm, const Geodesic& g, HPoint base, double s,
                           const Tolerances& tol = default_tolerances()) {
    require_upper(base, "point_at_arc");
    require_on_geodesic(norm, g, base, tol, "point_at_arc");
    if (const auto* v = std::get_if<VerticalLine>(&g)) {
        const double y = base.y * std::exp(s / detail::vertical_speed(norm));
        if (y == 0.0 || !std::isfinite(y))
            throw numeric_error("point_at_arc: height out of double range");
        return {v->a, y};
    }
    if (const auto* sp = std::get_if<StadiumParabola>(&g)) {
        if (norm.kind() != NormKind::stadium_closed_form)
            throw std::invalid_argument("point_at_arc: StadiumParabola requires the Stadium norm");
        const double target = stadium::signed_coord(*sp, base) + s;
        if (target == 0.0) return {sp->a, sp->lambda};
        const double mag = std::abs(target);
        const double lam = sp->lambda;
        // length_from_top(y) - (1/2) ln(lambda/y) lies in [0, 1/4]; this pins
        // the root of length_from_top(y) = mag inside a tight bracket.
        double ylo = lam * std::exp(-2.0 * mag);
        double yhi = std::min(lam, lam * std::exp(0.5 - 2.0 * mag));
        if (ylo <= 0.0 || !std::isfinite(ylo))
            throw numeric_error("point_at_arc: arc parameter out of double range");
        auto f = [&](double y) { return stadium::length_from_top(lam, y) - mag; };
        auto df = [&](double y) { return -0.5 / y - 0.5 * y / (lam * lam); };
        // tolerance scales with the bracket floor so small heights keep full
        // relative precision in the recovered arc length
        const double y = newton_bisect(f, df, ylo, yhi, std::sqrt(ylo * yhi),
                                       tol.arc_inversion * ylo);
        const double side = (target > 0.0) ? 1.0 : -1.0;
        return {sp->a + side * stadium::branch_offset(lam, y), y};
    }
    const auto& ls = std::get<GenericLevelSet>(g);
    const DualNormModel dual(norm);
    const double phi = generic::angle_at_arc(dual, ls.k, generic::angle_of(ls.a, base), s, tol);
    return generic::level_point(dual, ls.a, ls.k, phi);
}

// Prolongation: the point r with q between p and r and arc distance s from q.
inline HPoint extend_beyond(const NormModel& norm, HPoint p, HPoint q, double s,
                            const Tolerances& tol = default_tolerances()) {
    if (s < 0.0) throw std::invalid_argument("extend_beyond: s must be >= 0");
    const Geodesic g = geodesic_through(norm, p, q, tol);
    double dir;
    if (std::holds_alternative<VerticalLine>(g))
        dir = (q.y > p.y) ? 1.0 : -1.0;
    else
        dir = (q.x > p.x) ? 1.0 : -1.0; // arc coordinate increases with x
    return point_at_arc(norm, g, q, dir * s, tol);
}

inline double distance(const NormModel& norm, HPoint p, HPoint q,
                       const Tolerances& tol = default_tolerances()) {
    require_upper(p, "distance");
    require_upper(q, "distance");
    if (p.x == q.x && p.y == q.y) return 0.0;
    const Geodesic g = geodesic_through(norm, p, q, tol);
    return arc_length(norm, g, p, q, tol);
}

// Samples {F*(x - a, y) = k, y > 0} at n angles by exact radial solve.
inline GenericLevelSet generic_geodesic_trace(const NormModel& norm, double a, double k, int n,
                                              const Tolerances& tol = default_tolerances()) {
    if (k <= 0.0) throw std::invalid_argument("generic_geodesic_trace: k must be > 0");
    if (n < 32) throw std::invalid_argument("generic_geodesic_trace: need n >= 32");
    (void)tol;
    const DualNormModel dual(norm);
    return GenericLevelSet{a, k, generic::trace_polyline(dual, a, k, n)};
}

} // namespace qhgeo
