#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qhgeo/core.hpp"

namespace qhgeo {

enum class NormKind { stadium_closed_form, euclidean, sampled_indicatrix };

// The Stadium profile l(psi): |cos psi| on the square sectors,
// 1/(2|sin psi|) on the semidisk sectors. Branches agree at psi = pi/4 mod pi/2.
inline double stadium_profile(double psi) {
    const double c = std::cos(psi), s = std::sin(psi);
    if (std::abs(c) >= std::abs(s)) return std::abs(c);
    return 1.0 / (2.0 * std::abs(s));
}

// Gauge of the Stadium body (unit square side 2 capped by unit semidisks):
//   F(u) = |u1|                     where the ray hits a flat side,
//   F(u) = (u1^2 + u2^2)/(2|u2|)    where it hits a semicircle.
// Equals stadium_profile(atan2(u2,u1)) * |u| without the trigonometry.
inline double stadium_norm(Vec2 v) {
    const double a1 = std::abs(v.u1), a2 = std::abs(v.u2);
    if (a1 >= a2) return a1;
    return (v.u1 * v.u1 + v.u2 * v.u2) / (2.0 * a2);
}

// Convex norm on the plane: the Stadium in closed form, the Euclidean norm,
// or the gauge of a sampled origin-symmetric convex indicatrix polyline.
class NormModel {
public:
    static NormModel stadium() { return NormModel(NormKind::stadium_closed_form); }
    static NormModel euclidean() { return NormModel(NormKind::euclidean); }

    // Takes the boundary polyline of the unit ball, closed implicitly,
    // positively oriented (reversed automatically if supplied clockwise).
    // Rejects indicatrices that are not convex or not origin-symmetric
    // within `symmetry_tol` rather than repairing them.
    static NormModel sampled(std::vector<Vec2> indicatrix, double symmetry_tol = 1e-9) {
        NormModel m(NormKind::sampled_indicatrix);
        m.verts_ = std::move(indicatrix);
        m.validate(symmetry_tol);
        return m;
    }

    // Inscribed polygonal approximation of the Stadium boundary with n
    // vertices; used to exercise the sampled machinery against closed forms.
    static NormModel stadium_sampled(int n) {
        if (n < 64 || n % 2 != 0)
            throw std::invalid_argument("stadium_sampled: need even n >= 64");
        std::vector<Vec2> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double psi = 2.0 * kPi * i / n;
            const double r = 1.0 / stadium_profile(psi);
            pts.push_back({r * std::cos(psi), r * std::sin(psi)});
        }
        return sampled(std::move(pts), 1e-9);
    }

    NormKind kind() const { return kind_; }
    const std::vector<Vec2>& indicatrix() const { return verts_; }

    double operator()(Vec2 v) const {
        if (!is_finite(v)) throw std::domain_error("norm_eval: non-finite input");
        switch (kind_) {
        case NormKind::stadium_closed_form: return stadium_norm(v);
        case NormKind::euclidean: return euclid_norm(v);
        case NormKind::sampled_indicatrix: return sampled_gauge(v);
        }
        return 0.0;
    }

private:
    explicit NormModel(NormKind k) : kind_(k) {}

    void validate(double symmetry_tol) {
        const std::size_t n = verts_.size();
        if (n < 64) throw std::invalid_argument("sampled indicatrix: need at least 64 vertices");
        double area2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) area2 += cross(verts_[i], verts_[(i + 1) % n]);
        if (area2 == 0.0) throw std::invalid_argument("sampled indicatrix: degenerate polyline");
        if (area2 < 0.0) std::reverse(verts_.begin(), verts_.end());
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 e0 = verts_[(i + 1) % n] - verts_[i];
            const Vec2 e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
            if (cross(e0, e1) < -1e-12 * euclid_norm(e0) * euclid_norm(e1))
                throw std::invalid_argument("sampled indicatrix: polyline is not convex");
        }
        build_sectors();
        // Origin symmetry: every reflected vertex must lie on the boundary,
        // i.e. have gauge 1 within tolerance.
        for (const Vec2& v : verts_) {
            if (std::abs(sampled_gauge({-v.u1, -v.u2}) - 1.0) > symmetry_tol)
                throw std::invalid_argument(
                    "sampled indicatrix: not symmetric through the origin");
        }
    }

    void build_sectors() {
        const std::size_t n = verts_.size();
        angles_.resize(n);
        std::size_t start = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::atan2(verts_[i].u2, verts_[i].u1) < std::atan2(verts_[start].u2, verts_[start].u1))
                start = i;
        std::rotate(verts_.begin(), verts_.begin() + static_cast<std::ptrdiff_t>(start), verts_.end());
        for (std::size_t i = 0; i < n; ++i) angles_[i] = std::atan2(verts_[i].u2, verts_[i].u1);
        for (std::size_t i = 1; i < n; ++i) {
            if (angles_[i] < angles_[i - 1]) angles_[i] += 2.0 * kPi;  // unwrap
            if (!(angles_[i] > angles_[i - 1]))
                throw std::invalid_argument("sampled indicatrix: vertices not in strict angular order");
        }
    }

    // Gauge by angular binary search for the sector, then exact
    // ray/segment intersection. Exact for polygonal bodies.
    double sampled_gauge(Vec2 v) const {
        const double len = euclid_norm(v);
        if (len == 0.0) return 0.0;
        double psi = std::atan2(v.u2, v.u1);
        if (psi < angles_.front()) psi += 2.0 * kPi;
        const auto it = std::upper_bound(angles_.begin(), angles_.end(), psi);
        const std::size_t i = (it == angles_.begin())
                                  ? angles_.size() - 1
                                  : static_cast<std::size_t>(it - angles_.begin()) - 1;
        const Vec2 p = verts_[i];
        const Vec2 q = verts_[(i + 1) % verts_.size()];
        // Edge support line: n.x = c with the outward normal, c > 0 since
        // the origin is interior.
        const Vec2 edge = q - p;
        const Vec2 nrm{edge.u2, -edge.u1};
        const double c = dot(nrm, p);
        if (c <= 0.0) throw numeric_error("sampled gauge: origin not interior to indicatrix");
        return dot(nrm, v) / c;
    }

    NormKind kind_;
    std::vector<Vec2> verts_;    // sampled only; rotated to start at minimal angle
    std::vector<double> angles_; // unwrapped vertex angles, strictly increasing
};

// Rotated polar dual F*(x,y) = max{ x*u2 - y*u1 : F(u) <= 1 }. Its level
// sets, together with the vertical lines, are the geodesics of the
// quasihyperbolic plane with line element F(dx,dy)/y.
class DualNormModel {
public:
    explicit DualNormModel(NormModel base) : base_(std::move(base)) {}

    const NormModel& base() const { return base_; }

    double operator()(Vec2 v) const {
        if (!is_finite(v)) throw std::domain_error("dual_norm_eval: non-finite input");
        switch (base_.kind()) {
        case NormKind::stadium_closed_form:
            // Support of the Stadium at the rotated argument: the body is the
            // Minkowski sum of the vertical unit segment and the unit disk.
            return std::abs(v.u1) + euclid_norm(v);
        case NormKind::euclidean:
            return euclid_norm(v);
        case NormKind::sampled_indicatrix: {
            // Support function of a polygon is attained at a vertex.
            double best = 0.0;
            for (const Vec2& u : base_.indicatrix())
                best = std::max(best, v.u1 * u.u2 - v.u2 * u.u1);
            return best;
        }
        }
        return 0.0;
    }

    // Radial profile of the polar dual curve C1 (1/support of the indicatrix).
    double tau1(double phi) const {
        return 1.0 / support(Vec2{std::cos(phi), std::sin(phi)});
    }

    // Radial profile of the rotated dual curve C2 = {F* = 1}.
    double tau2(double phi) const {
        return 1.0 / (*this)(Vec2{std::cos(phi), std::sin(phi)});
    }

    // Samples C2 at n equally spaced angles. The result is a closed convex
    // polyline; for the Stadium it lies on the parabola pair x = +-(1-y^2)/2.
    std::vector<Vec2> unit_curve(int n) const {
        if (n < 8) throw std::invalid_argument("dual_unit_curve: need n >= 8");
        std::vector<Vec2> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double phi = 2.0 * kPi * i / n;
            const double r = tau2(phi);
            pts.push_back({r * std::cos(phi), r * std::sin(phi)});
        }
        return pts;
    }

private:
    double support(Vec2 w) const {
        switch (base_.kind()) {
        case NormKind::stadium_closed_form: return std::abs(w.u2) + euclid_norm(w);
        case NormKind::euclidean: return euclid_norm(w);
        case NormKind::sampled_indicatrix: {
            double best = 0.0;
            for (const Vec2& u : base_.indicatrix()) best = std::max(best, dot(w, u));
            return best;
        }
        }
        return 0.0;
    }

    NormModel base_;
};

// Indicatrix file format: one "u1,u2" pair per line, closed implicitly,
// '#' starts a comment line.
inline std::vector<Vec2> load_indicatrix(std::istream& in) {
    std::vector<Vec2> pts;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line.substr(first));
        double u1 = 0.0, u2 = 0.0;
        char comma = 0;
        if (!(row >> u1 >> comma >> u2) || comma != ',')
            throw std::invalid_argument("indicatrix file: expected 'u1,u2' per line, got: " + line);
        pts.push_back({u1, u2});
    }
    return pts;
}

inline NormModel load_indicatrix_norm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open indicatrix file: " + path);
    return NormModel::sampled(load_indicatrix(in));
}

} // namespace qhgeo
