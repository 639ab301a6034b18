#pragma once

#include <iomanip>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qhgeo/core.hpp"
#include "qhgeo/geodesic.hpp"
#include "qhgeo/homogeneity.hpp"
#include "qhgeo/report.hpp"
#include "qhgeo/sphere.hpp"

namespace qhgeo {

// CSV polylines: `x,y` rows, `#` comments carrying the arc label.
inline void write_polyline_csv(std::ostream& os, const std::vector<HPoint>& pts,
                               const std::string& label) {
    os << "# arc " << label << "\n";
    os << std::setprecision(17);
    for (const HPoint& p : pts) os << p.x << "," << p.y << "\n";
}

inline void write_sphere_csv(std::ostream& os, const SphereTrace& trace) {
    os << std::setprecision(17);
    os << "# stadium sphere center=(" << trace.center.x << "," << trace.center.y
       << ") K=" << trace.K << " lambda0=" << trace.lambda0 << "\n";
    write_polyline_csv(os, trace.b1_right, arc_label(SphereArc::B1, true));
    write_polyline_csv(os, trace.b2_right, arc_label(SphereArc::B2, true));
    write_polyline_csv(os, trace.b3_right, arc_label(SphereArc::B3, true));
    write_polyline_csv(os, trace.b1_left, arc_label(SphereArc::B1, false));
    write_polyline_csv(os, trace.b2_left, arc_label(SphereArc::B2, false));
    write_polyline_csv(os, trace.b3_left, arc_label(SphereArc::B3, false));
    os << "# arc poles\n";
    os << trace.pole_bottom.x << "," << trace.pole_bottom.y << "\n";
    os << trace.pole_top.x << "," << trace.pole_top.y << "\n";
}

inline nlohmann::json to_json(const std::vector<HPoint>& pts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const HPoint& p : pts) arr.push_back(to_json(p));
    return arr;
}

inline nlohmann::json to_json(const NormModel& norm, const Geodesic& g, HPoint p, HPoint q) {
    nlohmann::json j;
    j["residuals"] = {membership_residual(norm, g, p), membership_residual(norm, g, q)};
    if (const auto* v = std::get_if<VerticalLine>(&g)) {
        j["variant"] = "vertical";
        j["a"] = v->a;
    } else if (const auto* sp = std::get_if<StadiumParabola>(&g)) {
        j["variant"] = "stadium-parabola";
        j["lambda"] = sp->lambda;
        j["a"] = sp->a;
    } else {
        const auto& ls = std::get<GenericLevelSet>(g);
        j["variant"] = "level-set";
        j["a"] = ls.a;
        j["k"] = ls.k;
    }
    return j;
}

inline nlohmann::json to_json(const SphereTrace& trace) {
    return nlohmann::json{{"center", to_json(trace.center)},
                          {"K", trace.K},
                          {"lambda0", trace.lambda0},
                          {"poles", {to_json(trace.pole_bottom), to_json(trace.pole_top)}},
                          {"B1_bottom_right", to_json(trace.b1_right)},
                          {"B2_side_right", to_json(trace.b2_right)},
                          {"B3_top_right", to_json(trace.b3_right)},
                          {"B1_bottom_left", to_json(trace.b1_left)},
                          {"B2_side_left", to_json(trace.b2_left)},
                          {"B3_top_left", to_json(trace.b3_left)}};
}

// Frame dumps for animation tooling: [{t, pairs: [[[x,y],[x',y']], ...]}, ...]
inline nlohmann::json to_json(const std::vector<IsotopyFrame>& frames) {
    nlohmann::json arr = nlohmann::json::array();
    for (const IsotopyFrame& f : frames) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [from, to] : f.pairs)
            pairs.push_back(nlohmann::json::array({to_json(from), to_json(to)}));
        arr.push_back({{"t", f.t}, {"pairs", std::move(pairs)}});
    }
    return arr;
}

} // namespace qhgeo
