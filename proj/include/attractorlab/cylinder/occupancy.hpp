#ifndef ATTRACTORLAB_CYLINDER_OCCUPANCY_HPP
#define ATTRACTORLAB_CYLINDER_OCCUPANCY_HPP

#include <array>
#include <vector>

#include "attractorlab/cylinder/orbit.hpp"

namespace attractorlab {

enum class StripState { Left, Right, Outside };

/// Piecewise-constant strip membership of one orbit along its depth, with
/// change points located by bisection on the dense orbit representation.
struct StripTimelineEntry {
    double xi = 0.0;  // state holds from this depth on
    StripState state = StripState::Outside;
};
std::vector<StripTimelineEntry> strip_timeline(const OrbitSample& orbit,
                                               const DescentSchedule& s, double epsilon);

/// chi_l / chi_r curves (fractions of elapsed time in S_L and S_R from the
/// orbit start) evaluated at block ends, and the per-block outside-target
/// fractions alpha_n (target = S_L for odd blocks, S_R for even).
struct StripOccupancy {
    double epsilon = 0.0;
    std::vector<int> block;         // block index n
    std::vector<double> t_grid;     // t(block end)
    std::vector<double> chi_l;
    std::vector<double> chi_r;
    std::vector<double> alpha_n;
    // time spent in the NON-target strip while crossing each block (the orbit
    // lingers in the old strip at the start of a transition); this is the
    // exact correction that closes the chi_r - chi_l = E1 + E2 decomposition:
    // chi_r(n) - chi_l(n) = E1 + E2 + sum (-1)^{k+1} wrong_strip_k / t_n.
    std::vector<double> wrong_strip;
};

StripOccupancy occupancy(const OrbitSample& orbit, const DescentSchedule& s,
                         const VerticalProfile& v, double epsilon);

/// Fractions of common elapsed time a pair of orbits spends in the four strip
/// products; the remainder (any orbit outside both strips) makes the total 1.
struct PairOccupancy {
    std::vector<double> t_grid;  // probe times (block ends of the deeper range)
    std::vector<double> s_ll, s_rr, s_lr, s_rl;
    double final_ll = 0.0, final_rr = 0.0, final_lr = 0.0, final_rl = 0.0, final_rest = 0.0;
};

PairOccupancy pair_occupancy(const OrbitSample& orbit1, const OrbitSample& orbit2,
                             const DescentSchedule& s, const VerticalProfile& v, double epsilon);

/// The alternating-sum decomposition of chi_r - chi_l over n blocks with
/// t_k = e^{sqrt(k)} - 1:
///   E1 = (1/t_n) sum (-1)^k (t_k - t_{k-1}),
///   E2 = (1/t_n) sum alpha_k (-1)^{k+1} (t_k - t_{k-1}),
/// and the exact bound |E1| <= (t_n - t_{n-1}) / t_n.
struct E1E2Result {
    double E1 = 0.0;
    double E2 = 0.0;
    double bound = 0.0;
};
E1E2Result e1_e2_check(int n, const std::vector<double>& alpha);

}  // namespace attractorlab

#endif
