#include <doctest.h>

#include <cmath>

#include "attractorlab/core/model.hpp"

using namespace attractorlab;

TEST_CASE("saddle_local closed forms") {
    // nu = 2, identity c
    auto r = saddle_local(0.1, SaddleParams(2.0, 1.0));
    CHECK(r.image == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(r.time == doctest::Approx(std::log(10.0)).epsilon(1e-14));

    // nu = 1 identity case
    r = saddle_local(0.5, SaddleParams(1.0, 1.0));
    CHECK(r.image == doctest::Approx(0.5));
    CHECK(r.time == doctest::Approx(std::log(2.0)));

    // cross-checked against the RK4 oracle below
    r = saddle_local(0.2, SaddleParams(3.0, 2.0));
    CHECK(r.image == doctest::Approx(0.0894427191).epsilon(1e-9));
    CHECK(r.time == doctest::Approx(0.804718956217).epsilon(1e-11));

    CHECK_THROWS_AS(saddle_local(0.0, SaddleParams(2.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(saddle_local(1.0, SaddleParams(2.0, 1.0)), std::domain_error);
}

TEST_CASE("saddle_local monotonicity on the chart") {
    const SaddleParams p(2.5, 1.3, 0.8);
    double prev_img = 0.0, prev_time = 1e300;
    for (double x = 0.05; x < 0.95; x += 0.05) {
        const auto r = saddle_local(x, p);
        CHECK(r.image > prev_img);   // image strictly increasing
        CHECK(r.time < prev_time);   // time strictly decreasing
        prev_img = r.image;
        prev_time = r.time;
    }
}

TEST_CASE("saddle_node_local closed forms") {
    auto r = saddle_node_local(0.5, SaddleNodeParams(1.0, 1.0));
    CHECK(r.image == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(r.time == doctest::Approx(2.0));
    CHECK(!r.left_chart);

    r = saddle_node_local(0.999, SaddleNodeParams(0.0, 1.0));
    CHECK(r.image == doctest::Approx(0.367511377729).epsilon(1e-11));
    CHECK(r.time == doctest::Approx(1.001001001).epsilon(1e-9));

    r = saddle_node_local(0.1, SaddleNodeParams(1.0, 2.0));
    CHECK(r.image == doctest::Approx(4.53999297625e-4).epsilon(1e-10));
    CHECK(r.time == doctest::Approx(5.0));

    // the chart warning fires when the image leaves (0,1)
    r = saddle_node_local(0.9, SaddleNodeParams(12.0, 1.0));
    CHECK(r.left_chart);
}

TEST_CASE("poincare_step composes the legs") {
    SUBCASE("modified Bowen") {
        const auto m = PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0),
                                                      SaddleParams(2.0, 1.0));
        const auto s = poincare_step(0.5, m);
        CHECK(s.next == doctest::Approx(4.0 * std::exp(-4.0)).epsilon(1e-14));
        CHECK(s.turn_time == doctest::Approx(3.30685281944).epsilon(1e-11));
        CHECK(s.time_in_B == doctest::Approx(2.0 - std::log(2.0)).epsilon(1e-12));
        CHECK(s.time_in_B < s.turn_time);
    }
    SUBCASE("biangle") {
        const auto m =
            PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(2.0, 1.0));
        const auto s = poincare_step(0.1, m);
        CHECK(s.next == doctest::Approx(1e-4).epsilon(1e-12));
        CHECK(s.turn_time == doctest::Approx(std::log(10.0) + std::log(100.0)).epsilon(1e-12));
    }
    SUBCASE("loop doubles zeta for nu=2") {
        const auto m = PolycycleModel::loop(SaddleParams(2.0, 1.0));
        const double x = std::exp(-5.0);
        const auto s = poincare_step(x, m);
        CHECK(-std::log(s.next) == doctest::Approx(10.0).epsilon(1e-12));
    }
    SUBCASE("contraction violation is an error") {
        // c = 1.2, x = 0.9: image = 1.2 * 0.81 = 0.972, inside the chart but above x
        CHECK_THROWS_AS(poincare_step(0.9, PolycycleModel::loop(SaddleParams(2.0, 1.0, 1.2))),
                        contraction_error);
        CHECK_NOTHROW(poincare_step(0.01, PolycycleModel::loop(SaddleParams(2.0, 1.0))));
    }
    SUBCASE("chart exit is an error") {
        CHECK_THROWS_AS(poincare_step(0.9, PolycycleModel::loop(SaddleParams(2.0, 1.0, 30.0))),
                        chart_exit_error);
    }
}

TEST_CASE("poincare_step next-coordinate is increasing in x and contracting, every model") {
    const PolycycleModel models[] = {
        PolycycleModel::loop(SaddleParams(2.0, 1.0)),
        PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(3.0, 1.2)),
        PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0), SaddleParams(2.0, 1.0))};
    for (const auto& m : models) {
        double prev_next = 0.0;
        for (double x = 0.02; x < 0.35; x += 0.002) {
            const auto s = poincare_step(x, m);
            CHECK(s.next < x);          // attraction
            CHECK(s.next > prev_next);  // strictly increasing in x
            CHECK(s.time_in_B < s.turn_time);
            prev_next = s.next;
        }
    }
}

TEST_CASE("loop_zeta_step is affine with slope nu") {
    CHECK(loop_zeta_step(5.0, SaddleParams(2.0, 1.0)) == doctest::Approx(10.0));
    CHECK(loop_zeta_step(5.0, SaddleParams(2.0, 1.0, std::exp(1.0))) == doctest::Approx(9.0));

    // ratio of iterates of two seeds stays bounded away from 1
    const SaddleParams p(2.0, 1.0);
    double z1 = 5.0, z2 = 4.0;
    for (int n = 0; n < 40; ++n) {
        CHECK(z1 / z2 == doctest::Approx(1.25).epsilon(1e-12));
        z1 = loop_zeta_step(z1, p);
        z2 = loop_zeta_step(z2, p);
    }
}

TEST_CASE("loop ratio property: limit bounded below by the closed-form estimate") {
    // Delta^n(z) = nu^n (z - F) + F with F = ln c / (nu - 1), so the ratio of
    // iterates converges monotonically to (z - F)/(zh - F) > 1.
    for (double c : {0.5, 1.0, 2.0}) {
        const SaddleParams p(3.0, 1.5, c);  // nu = 2
        const double nu = p.nu();
        const double F = std::log(c) / (nu - 1.0);
        double z = 7.0, zh = 6.0;
        REQUIRE(zh > F);
        const double limit = (z - F) / (zh - F);
        const double bound =
            1.0 + (z - zh) * (nu - 1.0) / (nu * zh - std::log(c) * nu / (nu - 1.0));
        double prev_err = std::abs(z / zh - limit);
        double ratio = z / zh;
        for (int n = 0; n < 60; ++n) {
            z = loop_zeta_step(z, p);
            zh = loop_zeta_step(zh, p);
            ratio = z / zh;
            const double err = std::abs(ratio - limit);
            CHECK(err <= prev_err + 1e-15);  // monotone approach
            prev_err = err;
        }
        CHECK(std::abs(ratio - limit) < 1e-9);
        CHECK(ratio > 1.0);
        CHECK(limit >= bound - 1e-12);
    }
}

TEST_CASE("derived_constants") {
    SUBCASE("biangle") {
        const auto m =
            PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(3.0, 1.0));
        const auto d = derived_constants(m);
        CHECK(*d.Lambda == doctest::Approx(6.0));
        CHECK(*d.Lambda0 == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
        CHECK(*d.Lambda0 > 1.0);
        CHECK(*d.Lambda0 < *d.Lambda);
    }
    SUBCASE("mbe") {
        const auto m = PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0),
                                                      SaddleParams(2.0, 1.0));
        const auto d = derived_constants(m);
        CHECK(*d.recurrence_C == doctest::Approx(0.0));
        CHECK(*d.c_time == doctest::Approx(2.0));
    }
    SUBCASE("loop boundary nu = 1 rejected") {
        CHECK_THROWS_AS(PolycycleModel::loop(SaddleParams(1.0, 1.0)), invariant_error);
    }
    SUBCASE("biangle Lambda <= 1 rejected") {
        CHECK_THROWS_AS(PolycycleModel::biangle(SaddleParams(1.0, 2.0), SaddleParams(1.0, 1.0)),
                        invariant_error);
    }
}

TEST_CASE("mbe_tau_step") {
    const auto sym = PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0),
                                                    SaddleParams(2.0, 1.0));  // C = 0
    auto t = mbe_tau_step(TowerValue::from_real(1.0), sym);
    CHECK(*t.to_plain() == doctest::Approx(std::exp(1.0)).epsilon(1e-14));

    const auto m4 = PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0),
                                                   SaddleParams(4.0, 1.0));  // C = ln 2
    t = mbe_tau_step(TowerValue::from_real(1.0), m4);
    CHECK(*t.to_plain() == doctest::Approx(std::exp(1.0) + std::log(2.0)).epsilon(1e-14));

    // deep tower: exp increments the level, the constant is absorbed away
    t = mbe_tau_step(TowerValue(2, 3.0), sym);
    CHECK(t == TowerValue(3, 3.0));

    CHECK_THROWS_AS(
        mbe_tau_step(TowerValue::from_real(1.0),
                     PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(2.0, 1.0))),
        invariant_error);
}

TEST_CASE("saddle_oracle agrees with the closed forms") {
    SUBCASE("reference point") {
        const auto r = saddle_oracle(0.2, SaddleParams(3.0, 2.0), 1e-5);
        CHECK(std::abs(r.exit - 0.0894427191) / 0.0894427191 < 1e-6);
        CHECK(std::abs(r.time - 0.804718956217) < 1e-6);
    }
    SUBCASE("symmetric eigenvalues") {
        const auto r = saddle_oracle(0.5, SaddleParams(1.0, 1.0), 1e-5);
        CHECK(r.exit == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(r.time == doctest::Approx(std::log(2.0)).epsilon(1e-8));
    }
    SUBCASE("short transit near the chart edge") {
        const auto r = saddle_oracle(0.99, SaddleParams(2.0, 1.0), 1e-5);
        CHECK(r.exit == doctest::Approx(std::pow(0.99, 2.0)).epsilon(1e-8));
        CHECK(r.time == doctest::Approx(std::log(1.0 / 0.99)).epsilon(1e-6));
    }
    SUBCASE("step precondition") {
        CHECK_THROWS_AS(saddle_oracle(0.2, SaddleParams(3.0, 2.0), 1e-3), std::domain_error);
    }
}
