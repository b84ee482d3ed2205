#include <doctest.h>

#include <cmath>
#include <map>

#include "attractorlab/timeline/coloring.hpp"

using namespace attractorlab;

namespace {

// Two-event synthetic timelines: first tau-events A=(1.0), B=(1.4);
// second A~=(1.1), B~=(1.3). Easiest route is via explicit intervals.
ColorIntervalSet synthetic_nested() {
    ColorIntervalSet s;
    s.intervals.push_back({IntervalColor::White, 1.0, 1.4, 1});
    s.intervals.push_back({IntervalColor::Blue, 1.1, 1.3, 1});
    return s;
}

const auto kB4 = PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(2.0, 1.0));
const auto kB6 = PolycycleModel::biangle(SaddleParams(2.0, 1.0), SaddleParams(3.0, 1.0));

}  // namespace

TEST_CASE("overlap_report on the synthetic nested pair") {
    const auto s = synthetic_nested();
    const auto rep = overlap_report(s, {IntervalColor::White, IntervalColor::Blue}, 0.1);
    REQUIRE(rep.size() == 1);
    CHECK(rep[0].overlap_len == doctest::Approx(0.2).epsilon(1e-12));
    // min_len above the overlap length filters it out
    CHECK(overlap_report(s, {IntervalColor::White, IntervalColor::Blue}, 0.3).empty());
    CHECK_THROWS_AS(overlap_report(s, {IntervalColor::White, IntervalColor::Blue}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("color partition invariant: white/black tile the first tau-range") {
    const auto t1 = generate_timeline(kB4, 0.1, 40);
    const auto t2 = generate_timeline(kB6, 0.15, 40);
    const auto set = color_intervals(t1, t2, TimeScale::LogLambda);

    std::map<IntervalColor, int> count;
    double cursor = -1.0;
    bool first_white = true;
    for (const auto& iv : set.intervals) {
        CHECK(iv.start < iv.end);
        count[iv.color]++;
        if (iv.color == IntervalColor::White || iv.color == IntervalColor::Black) {
            if (!first_white) CHECK(iv.start == doctest::Approx(cursor).epsilon(1e-12));
            first_white = false;
            cursor = iv.end;
        }
    }
    CHECK(count[IntervalColor::White] == 40);
    CHECK(count[IntervalColor::Black] == 39);
    CHECK(count[IntervalColor::Blue] == 40);
    CHECK(count[IntervalColor::Red] == 39);
}

TEST_CASE("degenerate single-turn timelines give one white and one blue interval") {
    const auto t1 = generate_timeline(kB4, 0.1, 1);
    const auto t2 = generate_timeline(kB6, 0.1, 1);
    const auto set = color_intervals(t1, t2, TimeScale::LogLambda);
    std::map<IntervalColor, int> count;
    for (const auto& iv : set.intervals) count[iv.color]++;
    CHECK(count[IntervalColor::White] == 1);
    CHECK(count[IntervalColor::Blue] == 1);
    CHECK(count[IntervalColor::Black] == 0);
    CHECK(count[IntervalColor::Red] == 0);
}

TEST_CASE("biangle x biangle interval pitches follow the Lambda ratio") {
    // Lambda = 4 vs Lambda~ = 6 rescaled with the first flow's Lambda:
    // white pitch -> 1, blue pitch -> log_4 6
    const auto t1 = generate_timeline(kB4, 0.1, 60);
    const auto t2 = generate_timeline(kB6, 0.1, 60);
    const auto set = color_intervals(t1, t2, TimeScale::LogLambda);

    std::vector<double> white_starts, blue_starts;
    for (const auto& iv : set.intervals) {
        if (iv.color == IntervalColor::White) white_starts.push_back(iv.start);
        if (iv.color == IntervalColor::Blue) blue_starts.push_back(iv.start);
    }
    const double white_pitch = white_starts[50] - white_starts[49];
    const double blue_pitch = blue_starts[50] - blue_starts[49];
    CHECK(white_pitch == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(blue_pitch == doctest::Approx(std::log(6.0) / std::log(4.0)).epsilon(1e-6));
}

TEST_CASE("irrational Lambda ratio: every color pair keeps producing overlaps") {
    const auto t1 = generate_timeline(kB4, 0.1, 2000);
    const auto t2 = generate_timeline(kB6, 0.1, 2000);
    const auto set = color_intervals(t1, t2, TimeScale::LogLambda);
    const double min_len = 0.05;
    using IC = IntervalColor;
    for (auto pair : {std::pair{IC::White, IC::Blue}, std::pair{IC::White, IC::Red},
                      std::pair{IC::Black, IC::Blue}, std::pair{IC::Black, IC::Red}}) {
        const auto rep = overlap_report(set, pair, min_len);
        CHECK(rep.size() >= 20);
        // sorted by tau
        for (std::size_t i = 0; i + 1 < rep.size(); ++i) {
            const double ta = std::max(rep[i].a.start, rep[i].b.start);
            const double tb = std::max(rep[i + 1].a.start, rep[i + 1].b.start);
            CHECK(ta <= tb);
        }
    }
}
