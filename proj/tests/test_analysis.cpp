#include <doctest.h>

#include <cmath>

#include "attractorlab/timeline/analysis.hpp"

using namespace attractorlab;

namespace {
const auto kMbeSym =
    PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0), SaddleParams(2.0, 1.0));
const auto kB4 = PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(2.0, 1.0));
}  // namespace

TEST_CASE("four-pair fractions sum to one at every horizon") {
    const auto t1 = generate_timeline(kMbeSym, 0.5, 8);
    const auto t2 = generate_timeline(kMbeSym, 0.3, 8);
    for (int k = 1; k <= 4; ++k) {
        const TowerValue h = t1.events()[k].tA;
        const auto f = simultaneous_fractions(t1, t2, h);
        CHECK(f[0] + f[1] + f[2] + f[3] == doctest::Approx(1.0).epsilon(1e-9));
        for (double x : f) CHECK(x >= 0.0);
    }
}

TEST_CASE("horizon inside the first joint U_A stretch gives (A,A) fraction 1") {
    const auto t1 = generate_timeline(kMbeSym, 0.5, 4);
    const auto t2 = generate_timeline(kMbeSym, 0.3, 4);
    // both orbits are in U_A from t = 0; probe before either first tB
    const TowerValue h(0, 1.0);
    REQUIRE(t1.events()[0].tB > h);
    REQUIRE(t2.events()[0].tB > h);
    const auto f = simultaneous_fractions(t1, t2, h);
    CHECK(f[kAA] == doctest::Approx(1.0));
    CHECK(f[kBB] == 0.0);
}

TEST_CASE("mbe x mbe: simultaneous U_B fraction at the slower fourth return is small") {
    const auto t1 = generate_timeline(kMbeSym, 0.5, 10);
    const auto t2 = generate_timeline(kMbeSym, 0.3, 10);
    // 0.3 starts closer to the polycycle: longer turns, so it is the slower orbit
    const TowerValue h = t2.events()[4].tA;
    REQUIRE(t1.horizon() >= h);
    const double f = simultaneous_fraction(t1, t2, RegionLabel::B, RegionLabel::B, h);
    CHECK(f < 0.05);
}

TEST_CASE("horizon beyond a recorded range is an error") {
    const auto t1 = generate_timeline(kMbeSym, 0.5, 3);
    const auto t2 = generate_timeline(kMbeSym, 0.3, 3);
    CHECK_THROWS_AS(simultaneous_fractions(t1, t2, t2.horizon().exp()), horizon_error);
}

TEST_CASE("separation_analysis") {
    SUBCASE("inductive certificate on a hand-built triple") {
        // a = (1, e, e^e), b = (2, e^2, ...) with C1 = C2 = 0, eps = 0.5
        const std::vector<TowerValue> a{TowerValue(0, 1.0), TowerValue(0, std::exp(1.0)),
                                        TowerValue(0, std::exp(std::exp(1.0)))};
        const std::vector<TowerValue> b{TowerValue(0, 2.0), TowerValue(0, std::exp(2.0)),
                                        TowerValue(0, std::exp(std::exp(2.0)))};
        SeparationOptions opt;
        opt.mode = SeparationMode::InductiveTower;
        const auto res = separation_analysis(a, b, 0.5, opt);
        REQUIRE(res.certified);
        CHECK(res.certificate.mode == SeparationMode::InductiveTower);
        REQUIRE(res.certificate.witness.has_value());
        CHECK(res.certificate.witness->first == 0);  // a_0 = 1 below b_0 = 2
        CHECK(res.certificate.gap == 1.0);
    }
    SUBCASE("identical sequences refuse") {
        const std::vector<TowerValue> a{TowerValue(0, 1.0), TowerValue(0, 3.0)};
        const auto res = separation_analysis(a, a, 0.5);
        CHECK(!res.certified);
        CHECK(!res.refusal_reason.empty());
    }
    SUBCASE("loop zeta sequences: numeric tail with gap 1 at index 0") {
        std::vector<TowerValue> a, b;
        double za = 5.0, zb = 4.0;
        for (int i = 0; i < 12; ++i) {
            a.push_back(TowerValue(0, za));
            b.push_back(TowerValue(0, zb));
            za *= 2.0;
            zb *= 2.0;
        }
        const auto res = separation_analysis(a, b, 1.0);
        REQUIRE(res.certified);
        CHECK(res.certificate.mode == SeparationMode::NumericTail);
        CHECK(res.certificate.index_m == 0);
        CHECK(res.certificate.gap == doctest::Approx(1.0));
    }
    SUBCASE("inductive certificate soundness: numeric tail prefix agrees") {
        const auto t1 = generate_timeline(kMbeSym, 0.47, 9);
        const auto t2 = generate_timeline(kMbeSym, 0.11, 9);
        std::vector<TowerValue> a, b;
        for (const auto& te : rescale(t1, TimeScale::LnLn)) a.push_back(te.tauA);
        for (const auto& te : rescale(t2, TimeScale::LnLn)) b.push_back(te.tauA);
        SeparationOptions opt;
        opt.mode = SeparationMode::InductiveTower;
        const double eps = 0.05;
        const auto res = separation_analysis(a, b, eps, opt);
        REQUIRE(res.certified);
        // brute force on the plain-representable prefix finds no violation
        for (const auto& x : a)
            for (const auto& y : b) {
                const auto px = x.to_plain(), py = y.to_plain();
                if (px && py) CHECK(std::abs(*px - *py) > 1e-12);
            }
    }
    SUBCASE("strictly increasing precondition") {
        const std::vector<TowerValue> bad{TowerValue(0, 2.0), TowerValue(0, 1.0)};
        CHECK_THROWS_AS(separation_analysis(bad, bad, 0.1), std::invalid_argument);
    }
}

TEST_CASE("loop_divergence") {
    const auto model = PolycycleModel::loop(SaddleParams(2.0, 1.0), 1.0, 1.0);
    const double K = 1.0;
    // zeta seeds 5 and 6, interleaved with Delta(5) = 10
    const auto tx = generate_timeline(model, std::exp(-5.0), 24);
    const auto ty = generate_timeline(model, std::exp(-6.0), 24);

    SUBCASE("gaps grow like 2^n and the last simultaneous index is 0") {
        const auto d = loop_divergence(tx, ty, K);
        REQUIRE(d.gaps.size() >= 20);
        // gap_n = (6 - 5) * (2^{n+1} - 1) in the exact affine model
        CHECK(d.gaps[0] == doctest::Approx(1.0));
        CHECK(d.gaps[10] == doctest::Approx(2047.0));
        for (std::size_t i = 0; i + 1 < d.gaps.size(); ++i) CHECK(d.gaps[i + 1] > d.gaps[i]);
        REQUIRE(d.last_simultaneous.has_value());
        CHECK(*d.last_simultaneous == 0);
    }
    SUBCASE("equal seeds are rejected") {
        CHECK_THROWS_AS(loop_divergence(tx, tx, K), interleaving_error);
    }
    SUBCASE("non-interleaved seeds are rejected") {
        const auto tz = generate_timeline(model, std::exp(-11.0), 8);
        CHECK_THROWS_AS(loop_divergence(tx, tz, K), interleaving_error);
    }
}
