#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "qhgeo/core.hpp"
#include "qhgeo/geodesic.hpp"

namespace qhgeo {

// Abstract geodesic space consumed by the axiom checkers, the homogeneity
// maps and the embedding construction: a distance, a segment/extension
// oracle, and the extendibility radius rho (infinite for every model here).
class Space {
public:
    virtual ~Space() = default;

    virtual std::string name() const = 0;
    virtual double distance(HPoint p, HPoint q) const = 0;

    // Point at arc length s >= 0 from `from` along the unique geodesic
    // through `from` and `to`, on the side of `to`. Values s > d(from,to)
    // prolong the segment beyond `to`.
    virtual HPoint point_toward(HPoint from, HPoint to, double s) const = 0;

    // Prolongation past q: returns r with p - q - r and d(q, r) = s.
    virtual HPoint extend(HPoint p, HPoint q, double s) const {
        return point_toward(p, q, distance(p, q) + s);
    }

    virtual double rho(HPoint) const { return infinity(); }

    // Point of S(center, radius) in the chart direction theta. The probe
    // offset stays clear of the boundary for half-plane centers.
    virtual HPoint sphere_point(HPoint center, double radius, double theta) const {
        double h = 1e-3 * (std::abs(center.y) + 1.0);
        if (center.y > 0.0) h = std::min(h, 0.49 * center.y);
        const HPoint probe{center.x + h * std::cos(theta), center.y + h * std::sin(theta)};
        return point_toward(center, probe, radius);
    }

    // A second, independently implemented computation route for the same
    // geometry, used by uniqueness-of-extension checks. Null when none exists.
    virtual std::shared_ptr<const Space> alternate_route() const { return nullptr; }
};

class QuasihyperbolicSpace; // below

// Stadium quasihyperbolic plane through the closed-form engine.
class StadiumSpace final : public Space {
public:
    explicit StadiumSpace(Tolerances tol = default_tolerances())
        : norm_(NormModel::stadium()), tol_(tol) {}

    std::string name() const override { return "stadium"; }
    const NormModel& norm() const { return norm_; }
    const Tolerances& tolerances() const { return tol_; }

    double distance(HPoint p, HPoint q) const override {
        return qhgeo::distance(norm_, p, q, tol_);
    }

    HPoint point_toward(HPoint from, HPoint to, double s) const override {
        if (s == 0.0) return from;
        const Geodesic g = geodesic_through(norm_, from, to, tol_);
        double dir;
        if (std::holds_alternative<VerticalLine>(g))
            dir = (to.y > from.y) ? 1.0 : -1.0;
        else
            dir = (to.x > from.x) ? 1.0 : -1.0;
        return point_at_arc(norm_, g, from, dir * s, tol_);
    }

    HPoint extend(HPoint p, HPoint q, double s) const override {
        return extend_beyond(norm_, p, q, s, tol_);
    }

    std::shared_ptr<const Space> alternate_route() const override;

private:
    NormModel norm_;
    Tolerances tol_;
};

// Quasihyperbolic plane with an arbitrary valid norm, running entirely on
// the generic level-set engine. With the Euclidean norm this is the
// hyperbolic plane of curvature -1.
class QuasihyperbolicSpace final : public Space {
public:
    explicit QuasihyperbolicSpace(NormModel norm, Tolerances tol = default_tolerances())
        : norm_(std::move(norm)), tol_(tol) {
        reject_nonunique_axis_tangents();
    }

    std::string name() const override {
        switch (norm_.kind()) {
        case NormKind::euclidean: return "hyperbolic";
        case NormKind::stadium_closed_form: return "quasihyperbolic(stadium-dual)";
        case NormKind::sampled_indicatrix: return "quasihyperbolic(indicatrix)";
        }
        return "quasihyperbolic";
    }

    const NormModel& norm() const { return norm_; }
    const Tolerances& tolerances() const { return tol_; }

    double distance(HPoint p, HPoint q) const override {
        if (p.x == q.x && p.y == q.y) return 0.0;
        const Geodesic g = generic_geodesic(p, q);
        return arc_length(norm_, g, p, q, tol_);
    }

    HPoint point_toward(HPoint from, HPoint to, double s) const override {
        if (s == 0.0) return from;
        const Geodesic g = generic_geodesic(from, to);
        double dir;
        if (std::holds_alternative<VerticalLine>(g))
            dir = (to.y > from.y) ? 1.0 : -1.0;
        else
            dir = (to.x > from.x) ? 1.0 : -1.0;
        return point_at_arc(norm_, g, from, dir * s, tol_);
    }

    std::shared_ptr<const Space> alternate_route() const override;

private:
    // Forces the generic route even for the Stadium norm, so this space can
    // serve as the independent cross-check of the closed-form engine.
    Geodesic generic_geodesic(HPoint p, HPoint q) const {
        require_upper(p, "quasihyperbolic");
        require_upper(q, "quasihyperbolic");
        if (detail::nearly_vertical(p, q)) return VerticalLine{0.5 * (p.x + q.x)};
        const DualNormModel dual(norm_);
        const auto [a, k] = generic::solve_axis(dual, p, q, tol_);
        return GenericLevelSet{a, k, {}};
    }

    // Theorem-level requirement on the norm: the horizontal tangents of the
    // indicatrix touch it at a unique point, otherwise the dual level sets
    // meet the x-axis in corners and their axis tangents are ambiguous.
    void reject_nonunique_axis_tangents() const {
        if (norm_.kind() != NormKind::sampled_indicatrix) return;
        for (const double sign : {1.0, -1.0}) {
            double best = -infinity();
            for (const Vec2& u : norm_.indicatrix()) best = std::max(best, sign * u.u2);
            double lo = infinity(), hi = -infinity();
            for (const Vec2& u : norm_.indicatrix()) {
                if (sign * u.u2 > best - 1e-9) {
                    lo = std::min(lo, u.u1);
                    hi = std::max(hi, u.u1);
                }
            }
            if (hi - lo > 1e-6)
                throw std::invalid_argument(
                    "quasihyperbolic engine: indicatrix has a horizontal flat at its " +
                    std::string(sign > 0 ? "top" : "bottom") +
                    "; tangent geodesics at the x-axis are not unique");
        }
    }

    NormModel norm_;
    Tolerances tol_;
};

// Hyperbolic half-plane (curvature -1) in closed form: geodesics are
// verticals and semicircles centered on the x-axis. Serves as the
// independent route for the generic Euclidean-norm engine.
class HyperbolicClosedFormSpace final : public Space {
public:
    std::string name() const override { return "hyperbolic-closed-form"; }

    double distance(HPoint p, HPoint q) const override {
        require_upper(p, "hyperbolic distance");
        require_upper(q, "hyperbolic distance");
        const double dx = p.x - q.x, dy = p.y - q.y;
        return std::acosh(1.0 + 0.5 * (dx * dx + dy * dy) / (p.y * q.y));
    }

    HPoint point_toward(HPoint from, HPoint to, double s) const override {
        if (s == 0.0) return from;
        if (detail::nearly_vertical(from, to)) {
            const double dir = (to.y > from.y) ? 1.0 : -1.0;
            return {0.5 * (from.x + to.x), from.y * std::exp(dir * s)};
        }
        const double c = (to.x * to.x + to.y * to.y - from.x * from.x - from.y * from.y) /
                         (2.0 * (to.x - from.x));
        const double R = std::hypot(from.x - c, from.y);
        const double sig_from = circle_coord(std::atan2(from.y, from.x - c));
        const double sig_to = circle_coord(std::atan2(to.y, to.x - c));
        const double dir = (sig_to > sig_from) ? 1.0 : -1.0;
        const double theta = 2.0 * std::atan(std::exp(sig_from + dir * s));
        return {c + R * std::cos(theta), R * std::sin(theta)};
    }

private:
    // Arc-length coordinate along a unit-speed semicircle: ln tan(theta/2).
    static double circle_coord(double theta) { return std::log(std::tan(0.5 * theta)); }
};

// Euclidean plane handle: the trivial Busemann G-space used as a baseline
// by the checkers.
class EuclideanPlaneSpace final : public Space {
public:
    std::string name() const override { return "euclidean-plane"; }

    double distance(HPoint p, HPoint q) const override { return chart_dist(p, q); }

    HPoint point_toward(HPoint from, HPoint to, double s) const override {
        const double d = chart_dist(from, to);
        if (d == 0.0) throw std::invalid_argument("point_toward: direction undefined");
        const double t = s / d;
        return {from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
    }

    HPoint sphere_point(HPoint center, double radius, double theta) const override {
        return {center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
    }

    std::shared_ptr<const Space> alternate_route() const override {
        return std::make_shared<PolarRoute>();
    }

private:
    // Same geometry through polar decomposition rather than vector scaling.
    class PolarRoute final : public Space {
    public:
        std::string name() const override { return "euclidean-plane(polar)"; }
        double distance(HPoint p, HPoint q) const override { return chart_dist(p, q); }
        HPoint point_toward(HPoint from, HPoint to, double s) const override {
            const double ang = std::atan2(to.y - from.y, to.x - from.x);
            return {from.x + s * std::cos(ang), from.y + s * std::sin(ang)};
        }
    };
};

inline std::shared_ptr<const Space> StadiumSpace::alternate_route() const {
    return std::make_shared<QuasihyperbolicSpace>(NormModel::stadium(), tol_);
}

inline std::shared_ptr<const Space> QuasihyperbolicSpace::alternate_route() const {
    switch (norm_.kind()) {
    case NormKind::euclidean: return std::make_shared<HyperbolicClosedFormSpace>();
    case NormKind::stadium_closed_form: return std::make_shared<StadiumSpace>(tol_);
    case NormKind::sampled_indicatrix: {
        // No closed form exists for a sampled gauge; fall back to the same
        // engine at a tighter quadrature resolution.
        Tolerances tighter = tol_;
        tighter.quadrature *= 1e-2;
        tighter.arc_inversion *= 1e-1;
        return std::make_shared<QuasihyperbolicSpace>(norm_, tighter);
    }
    }
    return nullptr;
}

inline HPoint extend_beyond(const Space& X, HPoint p, HPoint q, double s) {
    return X.extend(p, q, s);
}

} // namespace qhgeo
