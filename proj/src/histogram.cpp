#include "attractorlab/measures/histogram.hpp"

#include <stdexcept>

#include "attractorlab/errors.hpp"

namespace attractorlab {

double OccupancyHistogram::weight(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return weights[i];
    throw std::invalid_argument("OccupancyHistogram: unknown region " + name);
}

double OccupancyHistogram::sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

OccupancyHistogram accumulate(const RegionTrack& track, const RegionSystem& regions,
                              const TowerValue& horizon) {
    if (horizon > track.end) throw horizon_error("accumulate: horizon beyond track coverage");
    if (track.starts.empty() || horizon < track.starts.front())
        throw horizon_error("accumulate: horizon before track start");

    OccupancyHistogram h;
    h.horizon = horizon;
    h.names = regions.names();
    h.weights.assign(static_cast<std::size_t>(regions.size()), 0.0);

    double r_prev = 0.0;
    for (std::size_t i = 0; i < track.starts.size(); ++i) {
        if (track.starts[i] >= horizon) break;
        const TowerValue seg_end =
            (i + 1 < track.starts.size() && track.starts[i + 1] < horizon) ? track.starts[i + 1]
                                                                           : horizon;
        double r_next = seg_end.ratio_to(horizon);
        r_next = std::min(1.0, std::max(r_prev, r_next));
        h.weights[static_cast<std::size_t>(track.labels[i])] += r_next - r_prev;
        r_prev = r_next;
    }
    return h;
}

OccupancyHistogram marginal(const OccupancyHistogram& joint, const RegionSystem& product,
                            const RegionSystem& factor, int axis) {
    if (!product.is_product()) throw std::invalid_argument("marginal: not a product system");
    OccupancyHistogram h;
    h.horizon = joint.horizon;
    h.names = factor.names();
    h.weights.assign(factor.names().size(), 0.0);
    for (int i = 0; i < product.factor1_size(); ++i)
        for (int j = 0; j < product.factor2_size(); ++j) {
            const double w = joint.weights[static_cast<std::size_t>(product.cell(i, j))];
            h.weights[static_cast<std::size_t>(axis == 0 ? i : j)] += w;
        }
    return h;
}

OccupancyHistogram accumulate_factor(const RegionTrack& joint_track, const RegionSystem& product,
                                     const RegionSystem& factor, int axis,
                                     const TowerValue& horizon) {
    return marginal(accumulate(joint_track, product, horizon), product, factor, axis);
}

}  // namespace attractorlab
