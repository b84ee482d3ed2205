#ifndef ATTRACTORLAB_TIMELINE_ANALYSIS_HPP
#define ATTRACTORLAB_TIMELINE_ANALYSIS_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "attractorlab/timeline/timeline.hpp"

namespace attractorlab {

enum class RegionLabel { A, B };

/// Index into the four-pair fraction array: (first orbit region, second orbit region).
enum RegionPairIndex { kAA = 0, kAB = 1, kBA = 2, kBB = 3 };

/// Lebesgue fractions of [0, horizon] spent in the four region pairs; the
/// four entries sum to 1.  Horizon must lie within both recorded ranges.
std::array<double, 4> simultaneous_fractions(const EventTimeline& first,
                                             const EventTimeline& second,
                                             const TowerValue& horizon);

double simultaneous_fraction(const EventTimeline& first, const EventTimeline& second,
                             RegionLabel r1, RegionLabel r2, const TowerValue& horizon);

enum class SeparationMode { Auto, NumericTail, InductiveTower };

struct SeparationCertificate {
    int index_m = 0;  // tails {n >= index_m} are separated
    double gap = 0.0;
    SeparationMode mode = SeparationMode::NumericTail;
    std::optional<std::pair<int, int>> witness;  // (k, n) where the inductive estimate fires
};

struct SeparationResult {
    bool certified = false;
    SeparationCertificate certificate;
    std::string refusal_reason;  // refusal is a value, not an error
};

struct SeparationOptions {
    SeparationMode mode = SeparationMode::Auto;
    double C1 = 0.0;  // recurrence constants of the two models
    double C2 = 0.0;
};

/// Certify that the tails of two strictly increasing tau-sequences are
/// separated.  NumericTail checks the recorded values exhaustively;
/// InductiveTower fires once some a_k sits >= eps away from its brackets
/// b_n < a_k < b_{n+1} and exp of the bracket value amplifies the gap past
/// 1 + |C1 - C2|, which certifies unit separation for all later indices.
/// Refusal mirrors the case where a different starting point must be chosen.
SeparationResult separation_analysis(const std::vector<TowerValue>& a,
                                     const std::vector<TowerValue>& b, double eps,
                                     const SeparationOptions& opt = {});

struct LoopDivergence {
    std::vector<double> gaps;              // |t_{n,x} - t_{n,y}| at the Sigma_B crossings
    std::optional<int> last_simultaneous;  // last turn with overlapping U_B windows
};

/// Wind-time divergence of two interleaved loop orbits: the gap sequence and
/// the last turn index at which the two orbits can be in U_B together.
LoopDivergence loop_divergence(const EventTimeline& first, const EventTimeline& second, double K);

}  // namespace attractorlab

#endif
