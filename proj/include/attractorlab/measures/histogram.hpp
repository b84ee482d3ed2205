#ifndef ATTRACTORLAB_MEASURES_HISTOGRAM_HPP
#define ATTRACTORLAB_MEASURES_HISTOGRAM_HPP

#include "attractorlab/measures/regions.hpp"

namespace attractorlab {

/// Time-fraction weights of [0, horizon] per region.  Weights are nonnegative
/// and sum to 1 up to the accumulation tolerance.
struct OccupancyHistogram {
    TowerValue horizon;
    std::vector<std::string> names;
    std::vector<double> weights;

    double weight(const std::string& name) const;
    double sum() const;
};

/// Time-average occupancy of each region up to the horizon.  The horizon must
/// lie within the track's coverage.
OccupancyHistogram accumulate(const RegionTrack& track, const RegionSystem& regions,
                              const TowerValue& horizon);

/// Marginal of a product histogram onto factor 1 (axis = 0) or factor 2
/// (axis = 1).  Cell weights come from one shared segment partition, so the
/// marginal equals the factor's own histogram exactly.
OccupancyHistogram marginal(const OccupancyHistogram& joint, const RegionSystem& product,
                            const RegionSystem& factor, int axis);

/// Factor histogram of a pair source, computed over the shared partition as
/// the marginal of the joint accumulation.
OccupancyHistogram accumulate_factor(const RegionTrack& joint_track, const RegionSystem& product,
                                     const RegionSystem& factor, int axis,
                                     const TowerValue& horizon);

}  // namespace attractorlab

#endif
