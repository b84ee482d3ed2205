#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "attractorlab/measures/estimators.hpp"
#include "attractorlab/numeric/rng.hpp"

using namespace attractorlab;

namespace {
const double kPi = 3.14159265358979323846;
const auto kMbeSym =
    PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 1.0), SaddleParams(2.0, 1.0));
}  // namespace

TEST_CASE("accumulate on a loop timeline from leg times") {
    const auto m = PolycycleModel::loop(SaddleParams(2.0, 1.0), 1.0, 1.0);
    const auto tl = generate_timeline(m, std::exp(-5.0), 4);
    const auto track = track_from_timeline(tl);
    const auto legs = RegionSystem::polycycle_legs();

    // events: tA = 0, tB = 5; tA = 6, tB = 16; horizon T_1B = 16
    const auto h = accumulate(track, legs, TowerValue(0, 16.0));
    CHECK(h.weight("U_A") == doctest::Approx(15.0 / 16.0).epsilon(1e-12));
    CHECK(h.weight("U_B") == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(h.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a single region covering everything carries weight 1") {
    RegionTrack tr;
    tr.starts = {TowerValue(0, 0.0)};
    tr.labels = {0};
    tr.end = TowerValue(0, 100.0);
    const auto h = accumulate(tr, RegionSystem::labeled({"all"}), TowerValue(0, 50.0));
    CHECK(h.weight("all") == 1.0);
}

TEST_CASE("mbe U_B weight at the returns tends to the leg-splitting ratio b/(b+lambda)") {
    // with b = lambda = 1 the U_B share of [0, T_kA] tends to 1/2 from below;
    // the tau-share vanishes instead, but plain time splits between the legs
    const auto tl = generate_timeline(kMbeSym, 0.5, 8);
    const auto track = track_from_timeline(tl);
    const auto legs = RegionSystem::polycycle_legs();
    for (int k = 2; k <= 3; ++k) {
        const auto h = accumulate(track, legs, tl.events()[static_cast<std::size_t>(k)].tA);
        CHECK(h.weight("U_B") < 0.5);
        CHECK(h.sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
    // at the fourth return the share has converged to 1/2 up to the mantissa ulp
    const auto h4 = accumulate(track, legs, tl.events()[4].tA);
    CHECK(h4.weight("U_B") == doctest::Approx(0.5).epsilon(2e-6));
    // past the representable range the track declares saturation
    CHECK(track.saturation_index() < track.starts.size());
    CHECK(track.valid_end() >= tl.events()[4].tA);

    // a slow saddle-node (b < lambda/2) keeps the U_B share below 1/3
    const auto slow = PolycycleModel::modified_bowen(SaddleNodeParams(1.0, 0.3),
                                                     SaddleParams(2.0, 1.0));
    const auto tl2 = generate_timeline(slow, 0.4, 6);
    const auto track2 = track_from_timeline(tl2);
    for (int k = 2; k <= 4; ++k) {
        const auto h = accumulate(track2, legs, tl2.events()[static_cast<std::size_t>(k)].tA);
        CHECK(h.weight("U_B") < 1.0 / 3.0);
    }
}

TEST_CASE("weight conservation on tower-tier horizons") {
    const auto tl = generate_timeline(kMbeSym, 0.37, 9);
    const auto track = track_from_timeline(tl);
    const auto legs = RegionSystem::polycycle_legs();
    for (const auto& ev : tl.events()) {
        if (ev.k == 0) continue;
        const auto h = accumulate(track, legs, ev.tA);
        CHECK(h.sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("marginal identity on a product of timelines") {
    const auto t1 = generate_timeline(kMbeSym, 0.45, 8);
    const auto t2 = generate_timeline(kMbeSym, 0.21, 8);
    const auto legs = RegionSystem::polycycle_legs();
    const auto prod = RegionSystem::product(legs, legs);
    const auto tr1 = track_from_timeline(t1);
    const auto tr2 = track_from_timeline(t2);
    const auto joint_track = product_track(tr1, tr2, prod);

    const TowerValue h = std::min(t1.horizon(), t2.horizon());
    const auto joint = accumulate(joint_track, prod, h);
    CHECK(joint.sum() == doctest::Approx(1.0).epsilon(1e-9));

    for (int axis : {0, 1}) {
        const auto marg = marginal(joint, prod, legs, axis);
        const auto fact = accumulate_factor(joint_track, prod, legs, axis, h);
        // same shared partition: equal exactly
        REQUIRE(marg.weights.size() == fact.weights.size());
        for (std::size_t i = 0; i < marg.weights.size(); ++i)
            CHECK(marg.weights[i] == fact.weights[i]);
        // and the factor's own direct accumulation agrees to roundoff
        const auto direct = accumulate(axis == 0 ? tr1 : tr2, legs, h);
        for (std::size_t i = 0; i < marg.weights.size(); ++i)
            CHECK(marg.weights[i] == doctest::Approx(direct.weights[i]).epsilon(1e-9));
    }
}

TEST_CASE("attractor estimates for the single MBE flow") {
    CounterRng rng(11u);
    std::vector<RegionTrack> ensemble;
    for (int i = 0; i < 30; ++i) {
        const double z0 = rng.uniform(static_cast<std::uint64_t>(i), 0.02, 0.5);
        ensemble.push_back(track_from_timeline(generate_timeline(kMbeSym, z0, 8)));
    }
    const auto legs = RegionSystem::polycycle_legs();
    const auto est = estimate_attractors(ensemble, legs, 0.05);

    // statistical attractor holds both singular legs, the minimal only the
    // saddle-node side
    CHECK(est.in_statistical("U_A"));
    CHECK(est.in_statistical("U_B"));
    CHECK(est.in_minimal("U_A"));
    CHECK(!est.in_minimal("U_B"));
    CHECK(est.in_milnor("U_A"));
    CHECK(est.in_milnor("U_B"));
}

TEST_CASE("threshold monotonicity: raising the threshold never adds cells") {
    CounterRng rng(13u);
    std::vector<RegionTrack> ensemble;
    for (int i = 0; i < 30; ++i) {
        const double z0 = rng.uniform(static_cast<std::uint64_t>(i), 0.05, 0.45);
        ensemble.push_back(track_from_timeline(generate_timeline(kMbeSym, z0, 8)));
    }
    const auto legs = RegionSystem::polycycle_legs();
    const auto lo = estimate_attractors(ensemble, legs, 0.02);
    const auto hi = estimate_attractors(ensemble, legs, 0.3);
    for (int c : hi.statistical_cells) CHECK(lo.statistical_cells.count(c) == 1);
    for (int c : hi.minimal_cells) CHECK(lo.minimal_cells.count(c) == 1);
}

TEST_CASE("ensemble size precondition") {
    std::vector<RegionTrack> ensemble(
        5, track_from_timeline(generate_timeline(kMbeSym, 0.3, 4)));
    CHECK_THROWS_AS(estimate_attractors(ensemble, RegionSystem::polycycle_legs(), 0.05),
                    std::invalid_argument);
}

TEST_CASE("physical weights of a cylinder orbit approach (1/2, 1/2)") {
    const auto f = CircleFieldFamily::default_geometry();
    const DescentSchedule s(-kPi / 3.0, kPi / 3.0);
    const VerticalProfile v;
    const auto orbit = integrate_orbit(0.4, 0.0, 400.0, f, s, v, 1e-10);
    const auto track = track_from_orbit(orbit, s, v, 0.1);

    std::vector<TowerValue> horizons;
    for (int n = 100; n <= 400; n += 50) horizons.push_back(TowerValue(0, v.time_at(n)));
    const auto pw = physical_weights(track, RegionSystem::strips(), horizons);
    const auto& last = pw.weights.back();
    CHECK(last[0] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(last[1] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(last[2] < 0.05);
    CHECK(pw.oscillation[2] < 0.05);
}

TEST_CASE("oscillation detection on a cylinder ensemble") {
    const auto f = CircleFieldFamily::default_geometry();
    const DescentSchedule s(-kPi / 3.0, kPi / 3.0);
    const VerticalProfile v;
    CounterRng rng(21u);

    std::vector<RegionTrack> ensemble;
    for (int i = 0; i < 100; ++i) {
        // seeds spread over a band of initial angles away from the source
        const double theta0 = f.theta_north() + 0.3 +
                              rng.uniform(static_cast<std::uint64_t>(i)) *
                                  (2.0 * kPi - 0.6);
        const auto orbit = integrate_orbit(theta0, 0.0, 14.0, f, s, v, 1e-9);
        ensemble.push_back(track_from_orbit(orbit, s, v, 0.1));
    }

    std::vector<TowerValue> probes;  // mid-block times, skipping the first two blocks
    for (int n = 3; n <= 14; ++n)
        probes.push_back(TowerValue(0, v.time_at(n - 0.5)));

    const auto res = oscillation_detect(ensemble, 0, 1, probes, 0.2);
    REQUIRE(res.found);
    CHECK(res.L.size() >= 3);
    CHECK(res.R.size() >= 3);
    // increasing and interleaved
    std::size_t i = 0, j = 0;
    double prev = -1.0;
    bool expect_left = res.L.front() < res.R.front();
    while (i < res.L.size() && j < res.R.size()) {
        const double cur = expect_left ? res.L[i++] : res.R[j++];
        CHECK(cur > prev);
        prev = cur;
        expect_left = !expect_left;
    }

    SUBCASE("single-plateau probes refuse: no right concentration yet") {
        std::vector<TowerValue> early{TowerValue(0, v.time_at(0.5))};
        const auto r2 = oscillation_detect(ensemble, 0, 1, early, 0.2);
        CHECK(!r2.found);
        CHECK(!r2.refusal_reason.empty());
    }
    SUBCASE("delta outside (0, 0.5) violates the precondition") {
        CHECK_THROWS_AS(oscillation_detect(ensemble, 0, 1, probes, 0.999),
                        std::invalid_argument);
    }
}
