#include "attractorlab/timeline/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace attractorlab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Region boundaries of one timeline: a_0=0, b_0, a_1, b_1, ...; the segment
// starting at boundary j is in U_A for even j, U_B for odd j.
std::vector<TowerValue> boundaries(const EventTimeline& t) {
    std::vector<TowerValue> out;
    out.reserve(2 * t.events().size());
    for (const auto& ev : t.events()) {
        out.push_back(ev.tA);
        out.push_back(ev.tB);
    }
    return out;
}

RegionLabel region_at(const std::vector<TowerValue>& bounds, const TowerValue& t) {
    // largest boundary <= t
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - bounds.begin()) - 1;
    return (j % 2 == 0) ? RegionLabel::A : RegionLabel::B;
}

}  // namespace

std::array<double, 4> simultaneous_fractions(const EventTimeline& first,
                                             const EventTimeline& second,
                                             const TowerValue& horizon) {
    if (horizon > first.horizon() || horizon > second.horizon())
        throw horizon_error("simultaneous_fractions: horizon beyond a recorded range");

    const auto b1 = boundaries(first);
    const auto b2 = boundaries(second);

    std::vector<TowerValue> cuts;
    cuts.push_back(TowerValue(0, 0.0));
    for (const auto& b : {b1, b2})
        for (const auto& t : b)
            if (t > TowerValue(0, 0.0) && t < horizon) cuts.push_back(t);
    cuts.push_back(horizon);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::array<double, 4> frac{0.0, 0.0, 0.0, 0.0};
    double r_prev = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double r_next = cuts[i + 1].ratio_to(horizon);
        r_next = std::min(1.0, std::max(r_prev, r_next));
        const RegionLabel l1 = region_at(b1, cuts[i]);
        const RegionLabel l2 = region_at(b2, cuts[i]);
        const int idx = (l1 == RegionLabel::A ? 0 : 2) + (l2 == RegionLabel::A ? 0 : 1);
        frac[static_cast<std::size_t>(idx)] += r_next - r_prev;
        r_prev = r_next;
    }
    return frac;
}

double simultaneous_fraction(const EventTimeline& first, const EventTimeline& second,
                             RegionLabel r1, RegionLabel r2, const TowerValue& horizon) {
    const auto f = simultaneous_fractions(first, second, horizon);
    const int idx = (r1 == RegionLabel::A ? 0 : 2) + (r2 == RegionLabel::A ? 0 : 1);
    return f[static_cast<std::size_t>(idx)];
}

namespace {

void require_strictly_increasing(const std::vector<TowerValue>& s, const char* who) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (!(s[i] < s[i + 1]))
            throw std::invalid_argument(std::string(who) + ": sequence not strictly increasing");
}

std::optional<SeparationCertificate> numeric_tail(const std::vector<TowerValue>& a,
                                                  const std::vector<TowerValue>& b, double eps) {
    const int n = static_cast<int>(std::min(a.size(), b.size()));
    for (int m = 0; m < n; ++m) {
        double gap = kInf;
        for (std::size_t i = m; i < a.size(); ++i)
            for (std::size_t j = m; j < b.size(); ++j)
                gap = std::min(gap, std::abs(a[i].minus_to_plain(b[j])));
        if (gap >= eps) {
            SeparationCertificate c;
            c.index_m = m;
            c.gap = gap;
            c.mode = SeparationMode::NumericTail;
            return c;
        }
    }
    return std::nullopt;
}

// The inductive estimate: if b_n < a_k < b_{n+1} with both gaps >= eps and
// exp of the lower values amplifies eps past 1 + |C1 - C2|, the gap exceeds 1
// from the next index on and grows forever.
std::optional<std::pair<int, int>> inductive_witness(const std::vector<TowerValue>& a,
                                                     const std::vector<TowerValue>& b, double eps,
                                                     double dC) {
    const TowerValue threshold(0, std::log(1.0 + dC));
    for (std::size_t k = 0; k < a.size(); ++k) {
        // bracket a_k between consecutive b's
        const auto it = std::upper_bound(b.begin(), b.end(), a[k]);
        const std::size_t n_above = static_cast<std::size_t>(it - b.begin());
        bool ok = true;
        TowerValue amplifier = a[k];  // exp(min involved value) drives the growth
        if (n_above > 0) {
            const TowerValue& below = b[n_above - 1];
            const double gl = a[k].minus_to_plain(below);
            if (!(gl >= eps)) ok = false;
            if (ok) amplifier = below;
        }
        if (ok && n_above < b.size()) {
            const double gu = b[n_above].minus_to_plain(a[k]);
            if (!(gu >= eps)) ok = false;
        }
        if (ok && n_above == 0 && b.empty()) ok = false;
        if (!ok) continue;
        // exp(amplifier) * eps > 1 + |dC|  <=>  amplifier + ln(eps) > ln(1 + |dC|)
        if (amplifier.add_const(std::log(eps)) > threshold)
            return std::make_pair(static_cast<int>(k),
                                  n_above > 0 ? static_cast<int>(n_above - 1) : 0);
    }
    return std::nullopt;
}

}  // namespace

SeparationResult separation_analysis(const std::vector<TowerValue>& a,
                                     const std::vector<TowerValue>& b, double eps,
                                     const SeparationOptions& opt) {
    if (!(eps > 0.0)) throw std::invalid_argument("separation_analysis: eps must be positive");
    require_strictly_increasing(a, "separation_analysis");
    require_strictly_increasing(b, "separation_analysis");

    SeparationResult res;
    const double dC = std::abs(opt.C1 - opt.C2);

    const bool all_plain = [&] {
        for (const auto& v : a)
            if (!v.to_plain()) return false;
        for (const auto& v : b)
            if (!v.to_plain()) return false;
        return true;
    }();

    SeparationMode mode = opt.mode;
    if (mode == SeparationMode::Auto)
        mode = all_plain ? SeparationMode::NumericTail : SeparationMode::InductiveTower;

    if (mode == SeparationMode::NumericTail) {
        if (auto c = numeric_tail(a, b, eps)) {
            res.certified = true;
            res.certificate = *c;
            return res;
        }
        res.refusal_reason = "tails interleave within eps at every recorded level";
        return res;
    }

    // InductiveTower: scan a against b, then b against a.
    if (auto w = inductive_witness(a, b, eps, dC)) {
        res.certified = true;
        res.certificate.index_m = std::max(w->first, w->second);
        res.certificate.gap = 1.0;
        res.certificate.mode = SeparationMode::InductiveTower;
        res.certificate.witness = *w;
        return res;
    }
    if (auto w = inductive_witness(b, a, eps, dC)) {
        res.certified = true;
        res.certificate.index_m = std::max(w->first, w->second);
        res.certificate.gap = 1.0;
        res.certificate.mode = SeparationMode::InductiveTower;
        res.certificate.witness = std::make_pair(w->second, w->first);
        return res;
    }
    res.refusal_reason = "no recorded element sits eps-far from its brackets; reseed one orbit";
    return res;
}

LoopDivergence loop_divergence(const EventTimeline& first, const EventTimeline& second, double K) {
    if (first.model().kind() != PolycycleModel::Kind::Loop ||
        second.model().kind() != PolycycleModel::Kind::Loop)
        throw invariant_error("loop_divergence: loop timelines required");

    const auto& px = first.model().as_loop();
    const auto& py = second.model().as_loop();
    if (px.saddle.mu != py.saddle.mu || px.saddle.lambda != py.saddle.lambda ||
        px.saddle.c != py.saddle.c || px.c1 != py.c1)
        throw invariant_error("loop_divergence: timelines from different models");

    const double zx = *first.coords()[0].to_plain();
    const double zy = *second.coords()[0].to_plain();
    if (zx == zy) throw interleaving_error("loop_divergence: equal seeds");
    const double lo = std::min(zx, zy), hi = std::max(zx, zy);
    if (!(hi < loop_zeta_step(lo, px.saddle)))
        throw interleaving_error("loop_divergence: seeds not interleaved with Delta");

    LoopDivergence out;
    const std::size_t n = std::min(first.events().size(), second.events().size());
    for (std::size_t k = 0; k < n; ++k) {
        const double tx = *first.events()[k].tB.to_plain();
        const double ty = *second.events()[k].tB.to_plain();
        out.gaps.push_back(std::abs(tx - ty));
    }
    // U_B windows are [tB_k, tB_k + K]; the two orbits can be in U_B together
    // only while some pair of windows overlaps.
    for (std::size_t k = 0; k < n; ++k) {
        const double xs = *first.events()[k].tB.to_plain();
        bool overlap = false;
        for (std::size_t j = 0; j < n && !overlap; ++j) {
            const double ys = *second.events()[j].tB.to_plain();
            overlap = xs <= ys + K && ys <= xs + K;  // closed windows
        }
        if (overlap) out.last_simultaneous = static_cast<int>(k);
    }
    return out;
}

}  // namespace attractorlab
