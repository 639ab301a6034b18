#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qhgeo {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Thrown when an iterative solver cannot reach its target residual.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

struct Vec2 {
    double u1 = 0.0;
    double u2 = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.u1 + b.u1, a.u2 + b.u2}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.u1 - b.u1, a.u2 - b.u2}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.u1, k * v.u2}; }
inline double euclid_norm(Vec2 v) { return std::hypot(v.u1, v.u2); }
inline double cross(Vec2 a, Vec2 b) { return a.u1 * b.u2 - a.u2 * b.u1; }
inline double dot(Vec2 a, Vec2 b) { return a.u1 * b.u1 + a.u2 * b.u2; }

inline bool is_finite(Vec2 v) { return std::isfinite(v.u1) && std::isfinite(v.u2); }

// Point of the plane. Half-plane operations require y > 0 strictly; the
// Euclidean-plane handle uses the same type without that restriction.
struct HPoint {
    double x = 0.0;
    double y = 0.0;
};

inline bool is_finite(HPoint p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline bool in_upper_halfplane(HPoint p) { return is_finite(p) && p.y > 0.0; }

inline double chart_dist(HPoint p, HPoint q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline void require_upper(HPoint p, const char* who) {
    if (!in_upper_halfplane(p))
        throw std::domain_error(std::string(who) + ": point must lie in the open upper half-plane");
}

// The isometry group of the quasihyperbolic plane: x' = alpha*x + beta,
// y' = alpha*y with alpha > 0.
struct GammaMap {
    double alpha = 1.0;
    double beta = 0.0;

    HPoint operator()(HPoint p) const { return {alpha * p.x + beta, alpha * p.y}; }
    GammaMap inverse() const { return {1.0 / alpha, -beta / alpha}; }

    // Maps the reference point (0,1) to `center`.
    static GammaMap centering(HPoint center) { return {center.y, center.x}; }
};

// Solver and verification tolerances used across the engine. Residual
// thresholds follow the contracts of the geometric operations; keeping them
// in one record makes every check overridable per call site.
struct Tolerances {
    double geodesic_residual = 1e-12;  // branch-solver residual on curve equations
    double membership = 1e-8;          // relative point-on-geodesic residual
    double arc_inversion = 1e-13;      // relative tolerance for arc-length inversion
    double quadrature = 1e-11;         // absolute tolerance for adaptive quadrature
    double sphere_closure = 1e-6;      // |d(center,p) - K| on traced spheres
    double betweenness = 1e-8;         // additivity residual in axiom checks
    double extension_agreement = 1e-6; // dual-route agreement in uniqueness checks
    double vertical_sentinel = 1e-10;  // relative |lambda^2-y^2| switch to dx/dy
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

inline double infinity() { return std::numeric_limits<double>::infinity(); }

} // namespace qhgeo
