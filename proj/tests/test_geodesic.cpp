#include "doctest.h"

#include <cmath>
#include <random>

#include "qhgeo/geodesic.hpp"

#include "support/oracles.hpp"

using namespace qhgeo;

namespace {

const NormModel kStadium = NormModel::stadium();

// Random admissible same-branch pair on a random stadium arch.
struct BranchPair {
    StadiumParabola g;
    HPoint p, q;
};

BranchPair random_same_branch(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ulam(1.05, 8.0), ua(-3.0, 3.0), uy(0.05, 0.999);
    std::bernoulli_distribution uside(0.5);
    const double lam = ulam(rng), a = ua(rng);
    const double side = uside(rng) ? 1.0 : -1.0;
    double y1 = uy(rng) * lam, y2 = uy(rng) * lam;
    if (y1 == y2) y2 *= 0.5;
    const auto at = [&](double y) {
        return HPoint{a + side * stadium::branch_offset(lam, y), y};
    };
    return {StadiumParabola{lam, a}, at(y1), at(y2)};
}

} // namespace

TEST_CASE("geodesic_through examples") {
    const Geodesic vert = geodesic_through(kStadium, {0, 1}, {0, 5});
    CHECK(std::get<VerticalLine>(vert).a == 0.0);

    const auto arch1 = std::get<StadiumParabola>(geodesic_through(kStadium, {0, 1}, {-0.75, 2}));
    CHECK(arch1.lambda == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(arch1.a == doctest::Approx(-0.75).epsilon(1e-12));

    const auto arch2 =
        std::get<StadiumParabola>(geodesic_through(kStadium, {0, 1}, {3.0 / 16, 0.5}));
    CHECK(arch2.lambda == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(arch2.a == doctest::Approx(-0.75).epsilon(1e-12));

    // Euclidean norm: the level set through (0,1), (1,1) is the semicircle
    // centered (1/2, 0) of radius sqrt(5)/2.
    const auto ls =
        std::get<GenericLevelSet>(geodesic_through(NormModel::euclidean(), {0, 1}, {1, 1}));
    CHECK(ls.a == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ls.k == doctest::Approx(0.5 * std::sqrt(5.0)).epsilon(1e-10));
    for (const HPoint& p : ls.polyline)
        CHECK(std::hypot(p.x - ls.a, p.y) == doctest::Approx(ls.k).epsilon(1e-12));

    CHECK_THROWS_AS(geodesic_through(kStadium, {0, 1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(geodesic_through(kStadium, {0, -1}, {0, 1}), std::domain_error);
}

TEST_CASE("branch enumeration finds exactly one admissible solution") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
        const HPoint p{ux(rng), uy(rng)}, q{ux(rng), uy(rng)};
        if (p.x == q.x) continue;
        const auto cands = stadium::branch_candidates(p, q);
        REQUIRE(!cands.empty());
        int distinct = 1;
        for (std::size_t j = 1; j < cands.size(); ++j) {
            const double scale = std::max(1.0, cands[0].lambda);
            if (std::abs(cands[j].lambda - cands[0].lambda) > 1e-9 * scale ||
                std::abs(cands[j].a - cands[0].a) > 1e-9 * scale)
                ++distinct;
        }
        CHECK(distinct == 1);
        // Residual of the defining equations at both points.
        const StadiumParabola g{cands[0].lambda, cands[0].a};
        CHECK(membership_residual(kStadium, Geodesic{g}, p) < 1e-12);
        CHECK(membership_residual(kStadium, Geodesic{g}, q) < 1e-12);
    }
}

TEST_CASE("arc_length examples") {
    const Geodesic vert = VerticalLine{0.0};
    CHECK(arc_length(kStadium, vert, {0, 1}, {0, std::exp(2.0)}) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const Geodesic g = geodesic_through(kStadium, {0, 1}, {-0.75, 2});
    const double la = 0.25 * (0.75 + std::log(4.0)); // (1/4)(1 - 1/4 + ln 4)
    CHECK(arc_length(kStadium, g, {0, 1}, {-0.75, 2}) == doctest::Approx(la).epsilon(1e-14));
    CHECK(la == doctest::Approx(0.534074).epsilon(1e-6));
    // Cross-check (1/2) ln 2 + 3/16.
    CHECK(la == doctest::Approx(0.5 * std::log(2.0) + 3.0 / 16).epsilon(1e-15));

    CHECK(arc_length(kStadium, g, {0, 1}, {0, 1}) == 0.0);

    // Same-branch descent to (3/16, 1/2), against the below-base closed form.
    const double below = 0.25 * ((1.0 - 0.25) / 4.0 - std::log(0.25));
    CHECK(arc_length(kStadium, g, {0, 1}, {3.0 / 16, 0.5}) ==
          doctest::Approx(below).epsilon(1e-14));
    CHECK(below == doctest::Approx(0.39344859027997264).epsilon(1e-14));

    CHECK_THROWS_AS(arc_length(kStadium, g, {0, 1}, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("closed-form arc length vs quadrature on 200 random same-branch arcs") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const BranchPair bp = random_same_branch(rng);
        const double closed = arc_length(kStadium, Geodesic{bp.g}, bp.p, bp.q);
        const double quad = oracles::stadium_branch_quadrature(bp.g.lambda, bp.p.y, bp.q.y);
        CHECK(std::abs(closed - quad) < 1e-8);
    }
}

TEST_CASE("over-the-top arc length agrees with split quadrature") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ulam(1.1, 6.0), uy(0.1, 0.95);
    for (int i = 0; i < 100; ++i) {
        const double lam = ulam(rng);
        const double y1 = uy(rng) * lam, y2 = uy(rng) * lam;
        const HPoint p{-stadium::branch_offset(lam, y1), y1}; // left branch
        const HPoint q{stadium::branch_offset(lam, y2), y2};  // right branch
        const Geodesic g = StadiumParabola{lam, 0.0};
        const double closed = arc_length(kStadium, g, p, q);
        const double quad = oracles::stadium_branch_quadrature(lam, y1, lam) +
                            oracles::stadium_branch_quadrature(lam, y2, lam);
        CHECK(std::abs(closed - quad) < 1e-8);
    }
}

TEST_CASE("point_at_arc") {
    const Geodesic vert = VerticalLine{0.0};
    const HPoint up = point_at_arc(kStadium, vert, {0, 1}, 0.5);
    CHECK(up.x == 0.0);
    CHECK(up.y == doctest::Approx(std::exp(1.0)).epsilon(1e-14));

    const Geodesic g = geodesic_through(kStadium, {0, 1}, {-0.75, 2});
    const HPoint base = point_at_arc(kStadium, g, {0, 1}, 0.0);
    CHECK(base.x == doctest::Approx(0.0));
    CHECK(base.y == doctest::Approx(1.0));

    const double la = 0.25 * (0.75 + std::log(4.0));
    const HPoint across = point_at_arc(kStadium, g, {0, 1}, -2.0 * la);
    CHECK(across.x == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(across.y == doctest::Approx(1.0).epsilon(1e-12));

    // Round trip: arc coordinate is inverted consistently.
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> us(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const BranchPair bp = random_same_branch(rng);
        const double s = us(rng);
        const HPoint r = point_at_arc(kStadium, Geodesic{bp.g}, bp.p, s);
        const double back = arc_length(kStadium, Geodesic{bp.g}, bp.p, r);
        CHECK(back == doctest::Approx(std::abs(s)).epsilon(1e-10));
    }

    CHECK_THROWS_AS(point_at_arc(kStadium, g, {0.5, 0.5}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(point_at_arc(kStadium, g, {0, 1}, 1e6), numeric_error);
}

TEST_CASE("extend_beyond") {
    const HPoint r1 = extend_beyond(kStadium, {0, std::exp(-1.0)}, {0, 1}, 0.5);
    CHECK(r1.x == 0.0);
    CHECK(r1.y == doctest::Approx(std::exp(1.0)).epsilon(1e-14));

    const double la = 0.25 * (0.75 + std::log(4.0));
    const HPoint r2 = extend_beyond(kStadium, {0, 1}, {-0.75, 2}, la);
    CHECK(r2.x == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(r2.y == doctest::Approx(1.0).epsilon(1e-12));

    // Euclidean-norm collinear extension stays on the level set.
    const NormModel eu = NormModel::euclidean();
    const Geodesic g = geodesic_through(eu, {0, 1}, {1, 1});
    const HPoint r3 = extend_beyond(eu, {0, 1}, {1, 1}, 0.4);
    CHECK(membership_residual(eu, g, r3) < 1e-8);

    CHECK_THROWS_AS(extend_beyond(kStadium, {0, 1}, {0, 1}, 0.1), std::invalid_argument);
}

TEST_CASE("metric axioms by sampling") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uy(0.2, 3.0);
    auto rnd = [&] { return HPoint{ux(rng), uy(rng)}; };
    for (int i = 0; i < 400; ++i) {
        const HPoint p = rnd(), q = rnd();
        const double d1 = distance(kStadium, p, q);
        const double d2 = distance(kStadium, q, p);
        CHECK(std::abs(d1 - d2) <= 1e-15 * (1.0 + d1)); // symmetry
        CHECK(d1 >= 0.0);
    }
    CHECK(distance(kStadium, {0.3, 0.7}, {0.3, 0.7}) == 0.0);
    for (int i = 0; i < 1000; ++i) {
        const HPoint p = rnd(), q = rnd(), r = rnd();
        CHECK(distance(kStadium, p, q) + distance(kStadium, q, r) >=
              distance(kStadium, p, r) - 1e-9);
    }
}

TEST_CASE("distance is invariant under the similarity group") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ua(0.2, 5.0), ub(-4.0, 4.0), ux(-2.0, 2.0),
        uy(0.3, 3.0);
    for (int i = 0; i < 200; ++i) {
        const GammaMap G{ua(rng), ub(rng)};
        const HPoint p{ux(rng), uy(rng)}, q{ux(rng), uy(rng)};
        if (chart_dist(p, q) < 1e-9) continue;
        const double d = distance(kStadium, p, q);
        CHECK(std::abs(distance(kStadium, G(p), G(q)) - d) < 1e-9 * (1.0 + d));
    }
}

TEST_CASE("vertical distances scale with the norm's vertical speed") {
    CHECK(distance(kStadium, {0, 1}, {0, std::exp(2.0)}) == doctest::Approx(1.0));
    CHECK(distance(NormModel::euclidean(), {0, 1}, {0, 2}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));
}
