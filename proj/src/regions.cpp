#include "attractorlab/measures/regions.hpp"

#include <algorithm>
#include <stdexcept>

namespace attractorlab {

RegionSystem RegionSystem::polycycle_legs() {
    RegionSystem r;
    r.names_ = {"U_A", "U_B"};
    return r;
}

RegionSystem RegionSystem::strips() {
    RegionSystem r;
    r.names_ = {"S_L", "S_R", "out"};
    return r;
}

RegionSystem RegionSystem::labeled(std::vector<std::string> names) {
    RegionSystem r;
    r.names_ = std::move(names);
    return r;
}

RegionSystem RegionSystem::product(const RegionSystem& first, const RegionSystem& second) {
    RegionSystem r;
    r.n1_ = first.size();
    r.n2_ = second.size();
    for (const auto& a : first.names())
        for (const auto& b : second.names()) r.names_.push_back("(" + a + "," + b + ")");
    return r;
}

int RegionSystem::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::invalid_argument("RegionSystem: unknown region " + name);
    return static_cast<int>(it - names_.begin());
}

int RegionTrack::label_at(const TowerValue& t) const {
    if (starts.empty() || t < starts.front() || t > end)
        throw std::domain_error("RegionTrack: time outside coverage");
    const auto it = std::upper_bound(starts.begin(), starts.end(), t);
    return labels[static_cast<std::size_t>(it - starts.begin()) - 1];
}

std::size_t RegionTrack::saturation_index() const {
    for (std::size_t i = 1; i < starts.size(); ++i)
        if (starts[i] == starts[i - 1]) return i;
    return starts.size();
}

TowerValue RegionTrack::valid_end() const {
    const std::size_t sat = saturation_index();
    return sat < starts.size() ? starts[sat - 1] : end;
}

RegionTrack track_from_timeline(const EventTimeline& t) {
    RegionTrack tr;
    for (const auto& ev : t.events()) {
        tr.starts.push_back(ev.tA);
        tr.labels.push_back(0);  // U_A on (tA, tB)
        if (ev.tB < t.horizon()) {
            tr.starts.push_back(ev.tB);
            tr.labels.push_back(1);  // U_B on (tB, next tA)
        }
    }
    tr.end = t.horizon();
    return tr;
}

RegionTrack track_from_orbit(const OrbitSample& orbit, const DescentSchedule& s,
                             const VerticalProfile& v, double epsilon) {
    RegionTrack tr;
    const double t0 = v.time_at(orbit.xi0());
    for (const auto& e : strip_timeline(orbit, s, epsilon)) {
        tr.starts.push_back(TowerValue(0, v.time_at(e.xi) - t0));
        tr.labels.push_back(e.state == StripState::Left    ? 0
                            : e.state == StripState::Right ? 1
                                                           : 2);
    }
    tr.end = TowerValue(0, v.time_at(orbit.xi_end()) - t0);
    return tr;
}

RegionTrack product_track(const RegionTrack& a, const RegionTrack& b,
                          const RegionSystem& product) {
    if (!product.is_product()) throw std::invalid_argument("product_track: not a product system");
    if (!(a.starts.front() == b.starts.front()))
        throw std::invalid_argument("product_track: factor tracks must share their start");
    RegionTrack tr;
    tr.end = std::min(a.end, b.end);

    // Index-based merge of the factor breakpoints.  Zero-width segments
    // (crossing times that saturate at representation deep in the tower
    // tier) are kept: they carry no measure but they are real visits, which
    // the Milnor tail scan must see.
    std::size_t i = 0, j = 0;
    int la = a.labels[0], lb = b.labels[0];
    const auto push = [&](const TowerValue& t) {
        const int cell = product.cell(la, lb);
        if (tr.labels.empty() || tr.labels.back() != cell) {
            tr.starts.push_back(t);
            tr.labels.push_back(cell);
        }
    };
    push(a.starts.front());
    while (true) {
        const bool a_next = i + 1 < a.starts.size() && !(a.starts[i + 1] > tr.end);
        const bool b_next = j + 1 < b.starts.size() && !(b.starts[j + 1] > tr.end);
        if (!a_next && !b_next) break;
        const bool take_a = a_next && (!b_next || a.starts[i + 1] <= b.starts[j + 1]);
        if (take_a) {
            ++i;
            la = a.labels[i];
            push(a.starts[i]);
        } else {
            ++j;
            lb = b.labels[j];
            push(b.starts[j]);
        }
    }
    return tr;
}

}  // namespace attractorlab
