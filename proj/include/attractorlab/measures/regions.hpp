#ifndef ATTRACTORLAB_MEASURES_REGIONS_HPP
#define ATTRACTORLAB_MEASURES_REGIONS_HPP

#include <string>
#include <vector>

#include "attractorlab/cylinder/occupancy.hpp"
#include "attractorlab/numeric/tower_value.hpp"
#include "attractorlab/timeline/timeline.hpp"

namespace attractorlab {

/// A finite system of pairwise disjoint named regions, possibly the product
/// of two factor systems.  Membership is leg-granular: sources are converted
/// to piecewise-constant region tracks, and the declared null set (the
/// transversal/strip crossings) is the set of track breakpoints.
class RegionSystem {
  public:
    static RegionSystem polycycle_legs();                     // {U_A, U_B}
    static RegionSystem strips();                             // {S_L, S_R, out}
    static RegionSystem labeled(std::vector<std::string> names);
    static RegionSystem product(const RegionSystem& first, const RegionSystem& second);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& name) const;

    bool is_product() const { return n1_ > 0; }
    int factor1_size() const { return n1_; }
    int factor2_size() const { return n2_; }
    /// cell index of the pair (i, j) in a product system
    int cell(int i, int j) const { return i * n2_ + j; }

  private:
    std::vector<std::string> names_;
    int n1_ = 0, n2_ = 0;
};

/// Piecewise-constant region trajectory of one orbit in absolute time:
/// label[i] holds on [starts[i], starts[i+1]) and the coverage ends at `end`.
struct RegionTrack {
    std::vector<TowerValue> starts;
    std::vector<int> labels;
    TowerValue end;

    int label_at(const TowerValue& t) const;

    /// Index of the first boundary that saturates at representation (equals
    /// its predecessor); boundaries before it are strictly increasing.
    std::size_t saturation_index() const;

    /// Last boundary at which occupancy fractions are still faithful: deep in
    /// the tower tier consecutive crossing times collide at double fidelity
    /// and leg shares are no longer representable.
    TowerValue valid_end() const;
};

/// U_A / U_B track of a polycycle timeline.
RegionTrack track_from_timeline(const EventTimeline& t);

/// S_L / S_R / outside track of a cylinder orbit, measured on the orbit's own
/// clock (t = 0 at the seed depth).
RegionTrack track_from_orbit(const OrbitSample& orbit, const DescentSchedule& s,
                             const VerticalProfile& v, double epsilon);

/// Joint track of a pair over the product system: labels are product cells,
/// breakpoints the union of the factor breakpoints (the shared partition that
/// makes the marginal identity exact).
RegionTrack product_track(const RegionTrack& a, const RegionTrack& b, const RegionSystem& product);

}  // namespace attractorlab

#endif
