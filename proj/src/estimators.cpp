#include "attractorlab/measures/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "attractorlab/errors.hpp"

namespace attractorlab {

namespace {
bool contains(const std::set<int>& s, int v) { return s.count(v) > 0; }
}  // namespace

bool AttractorEstimate::in_milnor(const std::string& name) const {
    return contains(milnor_cells,
                    static_cast<int>(std::find(region_names.begin(), region_names.end(), name) -
                                     region_names.begin()));
}
bool AttractorEstimate::in_statistical(const std::string& name) const {
    return contains(statistical_cells,
                    static_cast<int>(std::find(region_names.begin(), region_names.end(), name) -
                                     region_names.begin()));
}
bool AttractorEstimate::in_minimal(const std::string& name) const {
    return contains(minimal_cells,
                    static_cast<int>(std::find(region_names.begin(), region_names.end(), name) -
                                     region_names.begin()));
}

AttractorEstimate estimate_attractors(const std::vector<RegionTrack>& ensemble,
                                      const RegionSystem& regions, double threshold,
                                      int min_ensemble) {
    if (static_cast<int>(ensemble.size()) < min_ensemble)
        throw std::invalid_argument("estimate_attractors: ensemble too small");
    if (!(threshold > 0.0) || !(threshold < 0.5))
        throw std::invalid_argument("estimate_attractors: threshold must be in (0, 0.5)");

    AttractorEstimate est;
    est.region_names = regions.names();
    est.threshold = threshold;
    const std::size_t n_regions = regions.names().size();

    // Milnor: cells visited by the tail (last quarter of segments) of any track
    for (const auto& tr : ensemble) {
        const std::size_t n = tr.labels.size();
        for (std::size_t i = n - std::max<std::size_t>(1, n / 4); i < n; ++i)
            est.milnor_cells.insert(tr.labels[i]);
    }

    // statistical: per-track limsup proxy.  The running fraction of a region
    // peaks exactly where the orbit exits it, so probe the exits of each
    // region over the later half of the representable breakpoints (occupancy
    // is not faithful past the saturation depth); a cell enters when at
    // least half the ensemble exceeds the threshold.
    std::vector<int> votes(n_regions, 0);
    constexpr std::size_t kMaxProbesPerRegion = 32;
    for (const auto& tr : ensemble) {
        std::vector<double> best(n_regions, 0.0);
        const std::size_t n = tr.saturation_index();
        std::vector<std::vector<std::size_t>> exits(n_regions);
        for (std::size_t i = n / 2; i + 1 < n; ++i)
            exits[static_cast<std::size_t>(tr.labels[i])].push_back(i + 1);
        for (std::size_t r = 0; r < n_regions; ++r) {
            const auto& ex = exits[r];
            const std::size_t from = ex.size() > kMaxProbesPerRegion
                                         ? ex.size() - kMaxProbesPerRegion
                                         : 0;
            for (std::size_t k = from; k < ex.size(); ++k) {
                const auto hist = accumulate(tr, regions, tr.starts[ex[k]]);
                best[r] = std::max(best[r], hist.weights[r]);
            }
        }
        for (std::size_t r = 0; r < n_regions; ++r)
            if (best[r] > threshold) ++votes[r];
    }
    for (std::size_t r = 0; r < n_regions; ++r)
        if (2 * votes[r] >= static_cast<int>(ensemble.size()))
            est.statistical_cells.insert(static_cast<int>(r));

    // minimal: ensemble-mean occupancy at the common final horizon
    TowerValue common = ensemble.front().valid_end();
    for (const auto& tr : ensemble) common = std::min(common, tr.valid_end());
    std::vector<double> mean(n_regions, 0.0);
    for (const auto& tr : ensemble) {
        const auto hist = accumulate(tr, regions, common);
        for (std::size_t r = 0; r < n_regions; ++r) mean[r] += hist.weights[r];
    }
    for (std::size_t r = 0; r < n_regions; ++r)
        if (mean[r] / static_cast<double>(ensemble.size()) > threshold)
            est.minimal_cells.insert(static_cast<int>(r));

    // hierarchy post-check: an inconsistency is a diagnostic error, not a fix
    for (int c : est.minimal_cells)
        if (!contains(est.statistical_cells, c))
            throw hierarchy_violation_error("estimate_attractors: minimal ⊄ statistical at cell " +
                                            regions.names()[static_cast<std::size_t>(c)]);
    for (int c : est.statistical_cells)
        if (!contains(est.milnor_cells, c))
            throw hierarchy_violation_error("estimate_attractors: statistical ⊄ Milnor at cell " +
                                            regions.names()[static_cast<std::size_t>(c)]);
    return est;
}

PhysicalWeights physical_weights(const RegionTrack& track, const RegionSystem& regions,
                                 const std::vector<TowerValue>& horizons) {
    PhysicalWeights out;
    out.atoms = regions.names();
    for (const auto& h : horizons) {
        const auto hist = accumulate(track, regions, h);
        out.weights.push_back(hist.weights);
    }
    out.oscillation.assign(out.atoms.size(), 0.0);
    const std::size_t half = horizons.size() / 2;
    for (std::size_t r = 0; r < out.atoms.size(); ++r) {
        double lo = 1.0, hi = 0.0;
        for (std::size_t i = half; i < horizons.size(); ++i) {
            lo = std::min(lo, out.weights[i][r]);
            hi = std::max(hi, out.weights[i][r]);
        }
        out.oscillation[r] = hi - lo;
    }
    return out;
}

OscillationResult oscillation_detect(const std::vector<RegionTrack>& ensemble, int left_region,
                                     int right_region, const std::vector<TowerValue>& probes,
                                     double delta, int min_ensemble) {
    if (static_cast<int>(ensemble.size()) < min_ensemble)
        throw std::invalid_argument("oscillation_detect: ensemble too small");
    if (!(delta > 0.0) || !(delta < 0.5))
        throw std::invalid_argument("oscillation_detect: delta must be in (0, 0.5)");

    OscillationResult res;
    // mark each probe with the concentrated side, if any
    enum class Side { None, Left, Right };
    std::vector<Side> side;
    for (const auto& p : probes) {
        int nl = 0, nr = 0;
        for (const auto& tr : ensemble) {
            const int lab = tr.label_at(p);
            if (lab == left_region) ++nl;
            if (lab == right_region) ++nr;
        }
        const double n = static_cast<double>(ensemble.size());
        side.push_back(nl / n > 1.0 - delta   ? Side::Left
                       : nr / n > 1.0 - delta ? Side::Right
                                              : Side::None);
    }
    // one representative per concentration run, alternating
    Side prev = Side::None;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (side[i] != prev && side[i] != Side::None) {
            const double t = *probes[i].to_plain();
            (side[i] == Side::Left ? res.L : res.R).push_back(t);
        }
        if (side[i] != Side::None) prev = side[i];
    }
    if (res.L.empty() || res.R.empty()) {
        res.refusal_reason = "ensemble occupancy never concentrates past 1 - delta on both sides";
        return res;
    }
    res.found = true;
    return res;
}

}  // namespace attractorlab
