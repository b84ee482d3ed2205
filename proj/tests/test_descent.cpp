#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "attractorlab/cylinder/descent.hpp"

using namespace attractorlab;

namespace {
const double kPi = 3.14159265358979323846;
const DescentSchedule kSched(-kPi / 3.0, kPi / 3.0);
}  // namespace

TEST_CASE("h is theta_l above the zero circle and on block 1") {
    CHECK(kSched.eval_eta(0.5) == kSched.theta_l());
    CHECK(kSched.eval_eta(0.0) == kSched.theta_l());
    CHECK(kSched.eval_xi(0.5) == kSched.theta_l());
}

TEST_CASE("h through the first transition") {
    // entering block 2 at eta = -1; the transition occupies eta in [-2, -1]
    CHECK(kSched.eval_eta(-1.0) == kSched.theta_l());
    // midpoint mixes with bump weight 1/2
    CHECK(kSched.eval_eta(-1.5) ==
          doctest::Approx(0.5 * (kSched.theta_l() + kSched.theta_r())).epsilon(1e-14));
    CHECK(kSched.eval_eta(-2.0) == doctest::Approx(kSched.theta_r()));
    // past the transition the plateau holds for the rest of the block
    CHECK(kSched.eval_eta(-3.5) == kSched.theta_r());
}

TEST_CASE("block parity: odd blocks target theta_l") {
    CHECK(kSched.eval_xi(2.5) == kSched.theta_l());  // interior of I_3, past its transition
    CHECK(DescentSchedule::block_of_xi(2.5) == 3);
    CHECK(kSched.eval_xi(3.7) == kSched.theta_r());
    CHECK(kSched.eval_xi(10.9) == kSched.theta_l());
}

TEST_CASE("h is monotone across every transition") {
    for (int n = 2; n <= 12; ++n) {
        const double eta_start = -static_cast<double>(n - 1) * (n - 1);
        double prev = kSched.eval_eta(eta_start);
        const double dir = (n % 2 == 0) ? 1.0 : -1.0;  // toward theta_r on even blocks
        for (double s = 0.0; s <= 1.0; s += 1.0 / 64) {
            const double cur = kSched.eval_eta(eta_start - s);
            CHECK(dir * (cur - prev) >= -1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("bump primitive endpoints and flatness") {
    CHECK(bump_primitive(0.0) == 0.0);
    CHECK(bump_primitive(1.0) == 1.0);
    CHECK(bump_primitive(0.5) == doctest::Approx(0.5));
    // flat ends: tiny increments produce sub-polynomial growth
    CHECK(bump_primitive(1e-3) < 1e-100);
    CHECK(1.0 - bump_primitive(1.0 - 1e-3) < 1e-100);
}

TEST_CASE("vertical profile closed forms for xi >= 1") {
    const VerticalProfile v;
    const auto p4 = v.eval(4.0);
    CHECK(p4.t == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
    CHECK(p4.sigma == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(p4.rho == doctest::Approx(32.0 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(v.rho(-1.0) == doctest::Approx(4.0 * std::exp(-1.0)).epsilon(1e-14));

    // exact time law at block ends
    for (int n : {1, 2, 10, 100, 400})
        CHECK(v.time_at(n) == std::exp(std::sqrt(static_cast<double>(n))) - 1.0);
}

TEST_CASE("modified branch: rho == 1 near eta = 0 and the time integral is preserved") {
    const VerticalProfile v;
    CHECK(v.rho(0.0) == 1.0);
    CHECK(v.rho(-0.001) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.rho(0.5) == 1.0);  // extended by 1 above the zero circle
    // integral of 1/sigma over [0,1] equals e - 1: t(1) = e - 1
    CHECK(v.time_at(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));
    // continuity of the density at the gluing point
    CHECK(v.time_density(1.0 - 1e-9) == doctest::Approx(v.time_density(1.0)).epsilon(1e-6));
    // positivity across the modified branch
    for (double xi = 0.01; xi < 1.0; xi += 0.01) CHECK(v.time_density(xi) > 0.0);
}

TEST_CASE("xi_at_time inverts time_at") {
    const VerticalProfile v;
    for (double xi : {0.1, 0.5, 0.99, 1.0, 2.5, 40.0, 400.0})
        CHECK(v.xi_at_time(v.time_at(xi)) == doctest::Approx(xi).epsilon(1e-9));
}

TEST_CASE("rho decays to zero and is eventually decreasing") {
    const VerticalProfile v;
    CHECK(v.rho(-1e8) < 1e-30);
    // strictly decreasing beyond the closed-form critical point -eta = 81
    double prev = v.rho(-81.0);
    for (double u = 82.0; u < 300.0; u += 1.0) {
        const double cur = v.rho(-u);
        CHECK(cur < prev);
        prev = cur;
    }
    // not monotone before it: rho(-16) > rho(-1)
    CHECK(v.rho(-16.0) > v.rho(-1.0));
}

TEST_CASE("flatness witness of rho~ at zero") {
    const VerticalProfile v;
    const auto s6 = flatness_check(v, 1e-6, 4);
    CHECK(s6.rho_tilde == doctest::Approx(2.335945e-9).epsilon(1e-5));
    const auto s8 = flatness_check(v, 1e-8, 1);
    CHECK(s8.rho_tilde == doctest::Approx(1.4880304e-37).epsilon(1e-5));

    const auto s5 = flatness_check(v, 1e-5, 4);
    CHECK(s5.rho_tilde == doctest::Approx(4.2568725e-4).epsilon(1e-5));
    // derivative magnitudes fall by more than 10x from 1e-5 to 1e-6; orders
    // beyond 2 are below finite-difference resolution at these scales
    for (int k = 0; k < 2; ++k) CHECK(s6.deriv_mag[k] * 10.0 < s5.deriv_mag[k]);
    CHECK(s6.deriv_mag[0] == doctest::Approx(0.016722748).epsilon(1e-4));
    CHECK(s5.deriv_mag[0] == doctest::Approx(157.32698).epsilon(1e-4));

    CHECK_THROWS_AS(flatness_check(v, 1e-3, 1), std::domain_error);
    CHECK_THROWS_AS(flatness_check(v, 1e-6, 5), std::domain_error);
}
