#include "attractorlab/timeline/coloring.hpp"

#include <algorithm>

namespace attractorlab {

const char* color_name(IntervalColor c) {
    switch (c) {
        case IntervalColor::White: return "white";
        case IntervalColor::Black: return "black";
        case IntervalColor::Blue: return "blue";
        case IntervalColor::Red: return "red";
    }
    return "?";
}

namespace {

// (tau_kA, tau_kB) gets `inside`, (tau_kB, tau_{k+1,A}) gets `outside`.
void append_family(std::vector<ColorInterval>& out, const std::vector<TauEvent>& taus,
                   IntervalColor inside, IntervalColor outside) {
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const auto a = taus[i].tauA.to_plain();
        const auto b = taus[i].tauB.to_plain();
        if (!a || !b) break;  // tower tau: beyond any plain overlap window
        out.push_back({inside, *a, *b, taus[i].k});
        if (i + 1 < taus.size()) {
            if (const auto next_a = taus[i + 1].tauA.to_plain())
                out.push_back({outside, *b, *next_a, taus[i].k});
        }
    }
}

}  // namespace

ColorIntervalSet color_intervals(const EventTimeline& first, const EventTimeline& second,
                                 TimeScale scale) {
    double base = 0.0;
    if (scale == TimeScale::LogLambda) base = scale_base_lambda(first.model());

    ColorIntervalSet set;
    set.provenance_first = first.model().kind_name();
    set.provenance_second = second.model().kind_name();
    append_family(set.intervals, rescale(first, scale, base), IntervalColor::White,
                  IntervalColor::Black);
    append_family(set.intervals, rescale(second, scale, base), IntervalColor::Blue,
                  IntervalColor::Red);
    return set;
}

std::vector<OverlapRecord> overlap_report(const ColorIntervalSet& c,
                                          std::pair<IntervalColor, IntervalColor> pair,
                                          double min_len) {
    if (!(min_len > 0.0)) throw std::invalid_argument("overlap_report: min_len must be positive");
    std::vector<ColorInterval> lhs, rhs;
    for (const auto& iv : c.intervals) {
        if (iv.color == pair.first) lhs.push_back(iv);
        if (iv.color == pair.second) rhs.push_back(iv);
    }
    const auto by_start = [](const ColorInterval& x, const ColorInterval& y) {
        return x.start < y.start;
    };
    std::sort(lhs.begin(), lhs.end(), by_start);
    std::sort(rhs.begin(), rhs.end(), by_start);

    std::vector<OverlapRecord> out;
    std::size_t j0 = 0;
    for (const auto& a : lhs) {
        while (j0 < rhs.size() && rhs[j0].end <= a.start) ++j0;
        for (std::size_t j = j0; j < rhs.size() && rhs[j].start < a.end; ++j) {
            const double lo = std::max(a.start, rhs[j].start);
            const double hi = std::min(a.end, rhs[j].end);
            if (hi - lo >= min_len) out.push_back({a, rhs[j], hi - lo});
        }
    }
    std::sort(out.begin(), out.end(), [](const OverlapRecord& x, const OverlapRecord& y) {
        return std::max(x.a.start, x.b.start) < std::max(y.a.start, y.b.start);
    });
    return out;
}

}  // namespace attractorlab
