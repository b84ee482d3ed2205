#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "attractorlab/cylinder/circle_field.hpp"

using namespace attractorlab;

TEST_CASE("w_alpha fixed points and the linear branch") {
    const auto f = CircleFieldFamily::default_geometry();
    const double alpha = 0.2;
    CHECK(f.eval(alpha, alpha) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f.eval(alpha, f.theta_north()) == doctest::Approx(0.0).epsilon(1e-14));
    // slope -2*kappa linear branch just off the sink (outside N)
    CHECK(f.eval(alpha, alpha + 0.1) == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(f.eval(alpha, alpha - 0.1) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("w_eval rejects alpha outside arc_I") {
    const auto f = CircleFieldFamily::default_geometry();
    CHECK_THROWS_AS(f.eval(2.0, 0.0), std::domain_error);
}

TEST_CASE("family_validate passes the default geometry") {
    const auto f = CircleFieldFamily::default_geometry();
    const auto report = family_validate(f, 2000);
    if (!report.pass)
        for (const auto& v : report.violations)
            MESSAGE(v.property, " alpha=", v.alpha, " theta=", v.theta, " value=", v.value);
    CHECK(report.pass);
}

TEST_CASE("family_validate flags an impossible kappa") {
    const auto f = CircleFieldFamily::default_geometry();
    const auto report = family_validate(f, 2000, 10.0 * 2.0 * f.kappa());
    CHECK(!report.pass);
    REQUIRE(!report.violations.empty());
    CHECK(report.violations.front().property == "uniform-attraction");
}

TEST_CASE("arc overlapping the northern domain is rejected at construction") {
    const double pi = 3.14159265358979323846;
    CHECK_THROWS_AS(CircleFieldFamily(pi, 1.0, 0.6, pi - 0.7, pi - 0.1, 0.25),
                    std::invalid_argument);
}

TEST_CASE("field pushes theta from the source toward the sink on both arcs") {
    const auto f = CircleFieldFamily::default_geometry();
    for (double alpha : {-1.0, 0.0, 0.9}) {
        // sample both open arcs between source and sink
        for (double t = 0.05; t < 1.0; t += 0.05) {
            const double up = f.theta_north() + t * wrap_2pi(alpha - f.theta_north());
            const double w_up = f.eval(alpha, up);
            CHECK(w_up > 0.0);  // moving forward toward the sink
            const double down = f.theta_north() - t * wrap_2pi(f.theta_north() - alpha);
            CHECK(f.eval(alpha, down) < 0.0);
        }
    }
}
