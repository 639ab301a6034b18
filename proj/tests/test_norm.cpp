#include "doctest.h"

#include <cmath>
#include <random>
#include <iomanip>
#include <sstream>

#include "qhgeo/norm.hpp"

#include "support/oracles.hpp"

using namespace qhgeo;

TEST_CASE("stadium norm closed-form values") {
    const NormModel F = NormModel::stadium();
    CHECK(F({1, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(F({0, 0}) == 0.0);
    CHECK(F({3, 4}) == doctest::Approx(3.125).epsilon(1e-15));
    CHECK(F({1, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    // (3,4)/3.125 lands on the upper unit semicircle x^2 + (y-1)^2 = 1.
    const double bx = 3.0 / 3.125, by = 4.0 / 3.125;
    CHECK(bx * bx + (by - 1.0) * (by - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(F({0, 2}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(F({std::nan(""), 0}), std::domain_error);
}

TEST_CASE("stadium norm equals the angular profile form") {
    const NormModel F = NormModel::stadium();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> upsi(-kPi, kPi), ur(1e-3, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double psi = upsi(rng), r = ur(rng);
        const Vec2 v{r * std::cos(psi), r * std::sin(psi)};
        CHECK(F(v) == doctest::Approx(oracles::stadium_norm_trig(v.u1, v.u2)).epsilon(1e-13));
    }
}

TEST_CASE("profile branches agree at the junction angles") {
    for (const double psi : {kPi / 4, -kPi / 4, 3 * kPi / 4, -3 * kPi / 4}) {
        const double square = std::abs(std::cos(psi));
        const double cap = 1.0 / (2.0 * std::abs(std::sin(psi)));
        CHECK(std::abs(square - cap) <= 2e-16);
        CHECK(stadium_profile(psi) == doctest::Approx(square).epsilon(1e-15));
    }
}

TEST_CASE("homogeneity F(kv) = |k| F(v)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uk(-20.0, 20.0), uv(-5.0, 5.0);
    const NormModel closed = NormModel::stadium();
    const NormModel sampled = NormModel::stadium_sampled(256);
    for (int i = 0; i < 1000; ++i) {
        const double k = uk(rng);
        const Vec2 v{uv(rng), uv(rng)};
        CHECK(std::abs(closed(k * v) - std::abs(k) * closed(v)) < 1e-12 * (1.0 + closed(v)));
        CHECK(std::abs(sampled(k * v) - std::abs(k) * sampled(v)) < 1e-9 * (1.0 + sampled(v)));
    }
}

TEST_CASE("triangle inequality on sampled directions") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uv(-3.0, 3.0);
    for (const NormModel& F : {NormModel::stadium(), NormModel::stadium_sampled(128)}) {
        for (int i = 0; i < 500; ++i) {
            const Vec2 a{uv(rng), uv(rng)}, b{uv(rng), uv(rng)};
            CHECK(F(a + b) <= F(a) + F(b) + 1e-12);
        }
    }
}

TEST_CASE("rotated polar dual of the stadium") {
    const DualNormModel dual(NormModel::stadium());
    CHECK(dual({1, 0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dual({0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dual({1, 1}) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
    // tau2 duality along 10^3 directions.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    for (int i = 0; i < 1000; ++i) {
        const double phi = uphi(rng);
        CHECK(dual({std::cos(phi), std::sin(phi)}) * dual.tau2(phi) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(dual.tau2(phi) == doctest::Approx(1.0 / (1.0 + std::abs(std::cos(phi)))));
        CHECK(dual.tau1(phi) == doctest::Approx(1.0 / (1.0 + std::abs(std::sin(phi)))));
    }
}

TEST_CASE("dual norm of a sampled indicatrix is a vertex maximum") {
    const DualNormModel closed(NormModel::stadium());
    const DualNormModel sampled(NormModel::stadium_sampled(512));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uv(-2.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const Vec2 v{uv(rng), uv(rng)};
        CHECK(sampled(v) == doctest::Approx(closed(v)).epsilon(1e-3));
        CHECK(sampled(v) <= closed(v) + 1e-12); // inscribed polygon support is never larger
    }
}

TEST_CASE("dual unit curve") {
    const DualNormModel dual(NormModel::stadium());
    CHECK_THROWS_AS(dual.unit_curve(4), std::invalid_argument);

    const auto c2 = dual.unit_curve(8);
    REQUIRE(c2.size() == 8);
    CHECK(c2[0].u1 == doctest::Approx(0.5).epsilon(1e-15)); // tau2(0) = 1/2
    CHECK(c2[0].u2 == doctest::Approx(0.0));
    CHECK(c2[2].u1 == doctest::Approx(0.0));
    CHECK(c2[2].u2 == doctest::Approx(1.0).epsilon(1e-15)); // tau2(pi/2) = 1

    // The curve lies on the parabola pair |x| = (1 - y^2)/2.
    for (const Vec2& p : dual.unit_curve(257))
        CHECK(std::abs(std::abs(p.u1) - 0.5 * (1.0 - p.u2 * p.u2)) < 1e-12);

    CHECK(dual.tau2(kPi / 4) == doctest::Approx(1.0 / (1.0 + std::sqrt(0.5))).epsilon(1e-15));

    const DualNormModel eu(NormModel::euclidean());
    for (const Vec2& p : eu.unit_curve(64))
        CHECK(euclid_norm(p) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampled stadium converges to the closed form at O(1/n^2)") {
    const NormModel closed = NormModel::stadium();
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    double prev = 1.0;
    for (const int n : {64, 128, 256, 512}) {
        const NormModel poly = NormModel::stadium_sampled(n);
        double worst = 0.0;
        std::mt19937_64 local(rng());
        for (int i = 0; i < 4000; ++i) {
            const double phi = uphi(local);
            const Vec2 v{std::cos(phi), std::sin(phi)};
            worst = std::max(worst, std::abs(poly(v) - closed(v)) / closed(v));
        }
        if (n > 64) CHECK(worst < prev / 2.5); // roughly quarters with each doubling
        prev = worst;
    }
    CHECK(prev < 1.5e-4);
}

TEST_CASE("indicatrix needs at least 64 vertices") {
    std::vector<Vec2> coarse;
    for (int i = 0; i < 32; ++i) {
        const double t = 2.0 * kPi * i / 32;
        coarse.push_back({std::cos(t), std::sin(t)});
    }
    CHECK_THROWS_AS(NormModel::sampled(coarse), std::invalid_argument);
    CHECK_THROWS_AS(NormModel::stadium_sampled(32), std::invalid_argument);
}

TEST_CASE("indicatrix validation") {
    // Not symmetric through the origin: rejected, not repaired.
    std::vector<Vec2> egg;
    for (int i = 0; i < 64; ++i) {
        const double t = 2.0 * kPi * i / 64;
        const double r = 1.0 + 0.2 * std::cos(t);
        egg.push_back({r * std::cos(t), r * std::sin(t)});
    }
    CHECK_THROWS_AS(NormModel::sampled(egg), std::invalid_argument);

    // Concave dent: rejected.
    std::vector<Vec2> dent;
    for (int i = 0; i < 64; ++i) {
        const double t = 2.0 * kPi * i / 64;
        const double r = 1.0 + 0.2 * std::cos(4.0 * t);
        dent.push_back({r * std::cos(t), r * std::sin(t)});
    }
    CHECK_THROWS_AS(NormModel::sampled(dent), std::invalid_argument);

    // Clockwise input is accepted (orientation is representational).
    std::vector<Vec2> circle;
    for (int i = 0; i < 64; ++i) {
        const double t = -2.0 * kPi * i / 64;
        circle.push_back({std::cos(t), std::sin(t)});
    }
    const NormModel F = NormModel::sampled(circle);
    CHECK(F({1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("indicatrix file format round trip") {
    std::stringstream file;
    file << std::setprecision(17);
    file << "# stadium boundary, coarse\n";
    const NormModel F = NormModel::stadium_sampled(64);
    for (const Vec2& v : F.indicatrix()) file << v.u1 << "," << v.u2 << "\n";
    const auto pts = load_indicatrix(file);
    REQUIRE(pts.size() == 64);
    const NormModel G = NormModel::sampled(pts);
    CHECK(G({2, 3}) == doctest::Approx(F({2, 3})).epsilon(1e-9));

    std::stringstream bad("0.5 0.5\n");
    CHECK_THROWS_AS(load_indicatrix(bad), std::invalid_argument);
}
