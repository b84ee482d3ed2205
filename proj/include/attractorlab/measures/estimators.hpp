#ifndef ATTRACTORLAB_MEASURES_ESTIMATORS_HPP
#define ATTRACTORLAB_MEASURES_ESTIMATORS_HPP

#include <optional>
#include <set>

#include "attractorlab/measures/histogram.hpp"

namespace attractorlab {

/// Cell-level estimates of the Milnor, statistical and minimal attractors
/// over a fixed region system, with the hierarchy minimal <= statistical <=
/// Milnor enforced as a post-check.
struct AttractorEstimate {
    std::vector<std::string> region_names;
    std::set<int> milnor_cells;
    std::set<int> statistical_cells;
    std::set<int> minimal_cells;
    double threshold = 0.0;

    bool in_milnor(const std::string& name) const;
    bool in_statistical(const std::string& name) const;
    bool in_minimal(const std::string& name) const;
};

/// Estimate the attractor cells from an ensemble of region tracks:
///  - Milnor: cells visited by the tail (last quarter of segments) of any track;
///  - statistical: per-track limsup proxy (max occupancy over the probes in
///    the later half of its own breakpoints) exceeds the threshold for at
///    least half of the ensemble;
///  - minimal: ensemble-mean occupancy at the common final horizon exceeds
///    the threshold (the Krylov-Bogolyubov pushforward proxy).
/// Throws hierarchy_violation_error when the estimates break the hierarchy.
AttractorEstimate estimate_attractors(const std::vector<RegionTrack>& ensemble,
                                      const RegionSystem& regions, double threshold,
                                      int min_ensemble = 30);

/// Per-atom occupancy weights along a horizon schedule plus a convergence
/// diagnostic (max oscillation over the second half of the schedule).
struct PhysicalWeights {
    std::vector<std::string> atoms;
    std::vector<std::vector<double>> weights;  // weights[h][atom]
    std::vector<double> oscillation;           // per atom
};

PhysicalWeights physical_weights(const RegionTrack& track, const RegionSystem& regions,
                                 const std::vector<TowerValue>& horizons);

/// Times (from the probe list) at which the ensemble occupancy of the left
/// (resp. right) region exceeds 1 - delta.  Refusal (empty result) when a
/// side never concentrates; the returned sequences are increasing and
/// interleaved, one representative per concentration run.
struct OscillationResult {
    bool found = false;
    std::vector<double> L;  // probe times concentrating on the left region
    std::vector<double> R;
    std::string refusal_reason;
};

OscillationResult oscillation_detect(const std::vector<RegionTrack>& ensemble, int left_region,
                                     int right_region, const std::vector<TowerValue>& probes,
                                     double delta, int min_ensemble = 100);

}  // namespace attractorlab

#endif
