#ifndef ATTRACTORLAB_TIMELINE_COLORING_HPP
#define ATTRACTORLAB_TIMELINE_COLORING_HPP

#include <string>
#include <utility>
#include <vector>

#include "attractorlab/timeline/timeline.hpp"

namespace attractorlab {

/// Colors of the tau-axis partition induced by a pair of timelines:
/// white  (tau_kA, tau_kB)   first orbit in U_A
/// black  (tau_kB, tau_k+1A) first orbit in U_B
/// blue / red: the same for the second orbit.
enum class IntervalColor { White, Black, Blue, Red };

const char* color_name(IntervalColor c);

struct ColorInterval {
    IntervalColor color;
    double start = 0.0;
    double end = 0.0;
    int k = 0;  // turn index the interval came from
};

struct ColorIntervalSet {
    std::vector<ColorInterval> intervals;  // whites/blacks first, then blues/reds, each sorted
    std::string provenance_first;
    std::string provenance_second;
};

/// Color the rescaled interval families of two timelines.  Both timelines are
/// rescaled by the same transform; for LogLambda the base is the FIRST
/// timeline's Lambda.  Events whose tau left plain-double range are dropped
/// (they are beyond any overlap window).
ColorIntervalSet color_intervals(const EventTimeline& first, const EventTimeline& second,
                                 TimeScale scale);

struct OverlapRecord {
    ColorInterval a;
    ColorInterval b;
    double overlap_len = 0.0;
};

/// All intersections of intervals of the two given colors with length
/// >= min_len, sorted by tau.
std::vector<OverlapRecord> overlap_report(const ColorIntervalSet& c,
                                          std::pair<IntervalColor, IntervalColor> pair,
                                          double min_len);

}  // namespace attractorlab

#endif
