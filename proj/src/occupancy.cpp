#include "attractorlab/cylinder/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace attractorlab {

namespace {

StripState classify(double theta, double theta_l, double theta_r, double eps) {
    if (circle_dist(theta, theta_l) <= eps) return StripState::Left;
    if (circle_dist(theta, theta_r) <= eps) return StripState::Right;
    return StripState::Outside;
}

}  // namespace

std::vector<StripTimelineEntry> strip_timeline(const OrbitSample& orbit, const DescentSchedule& s,
                                               double epsilon) {
    if (!(epsilon > 0.0) ||
        2.0 * epsilon >= circle_dist(s.theta_l(), s.theta_r()))
        throw std::invalid_argument("strip_timeline: epsilon violates the strip separation");

    const auto state_at = [&](double xi) {
        return classify(orbit.theta_at(xi), s.theta_l(), s.theta_r(), epsilon);
    };

    std::vector<StripTimelineEntry> out;
    out.push_back({orbit.xi0(), state_at(orbit.xi0())});

    const auto& grid = orbit.xi();
    constexpr int kSub = 16;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double prev_xi = grid[i];
        StripState prev = state_at(prev_xi);
        for (int j = 1; j <= kSub; ++j) {
            const double xi = grid[i] + (grid[i + 1] - grid[i]) * j / kSub;
            const StripState cur = state_at(xi);
            if (cur != prev) {
                // bisect the change point down to 1e-10 in xi
                double lo = prev_xi, hi = xi;
                while (hi - lo > 1e-10) {
                    const double mid = 0.5 * (lo + hi);
                    (state_at(mid) == prev ? lo : hi) = mid;
                }
                out.push_back({0.5 * (lo + hi), cur});
                prev = cur;
            }
            prev_xi = xi;
        }
    }
    return out;
}

namespace {

// time spent in each state over [a, b] given the switch list
struct StateClock {
    double left = 0.0, right = 0.0, outside = 0.0;
    void add(StripState st, double dt) {
        switch (st) {
            case StripState::Left: left += dt; break;
            case StripState::Right: right += dt; break;
            case StripState::Outside: outside += dt; break;
        }
    }
    double total() const { return left + right + outside; }
};

}  // namespace

StripOccupancy occupancy(const OrbitSample& orbit, const DescentSchedule& s,
                         const VerticalProfile& v, double epsilon) {
    const auto switches = strip_timeline(orbit, s, epsilon);

    StripOccupancy occ;
    occ.epsilon = epsilon;

    const double xi0 = orbit.xi0();
    const double t0 = v.time_at(xi0);
    const int first_block = static_cast<int>(std::floor(xi0)) + 1;
    const int last_block = static_cast<int>(std::floor(orbit.xi_end() + 1e-12));

    StateClock running;
    StateClock in_block;
    std::size_t si = 0;
    double cursor = xi0;

    for (int n = first_block; n <= last_block; ++n) {
        const double block_end = static_cast<double>(n);
        in_block = StateClock();
        while (cursor < block_end) {
            const double next_switch =
                si + 1 < switches.size() ? switches[si + 1].xi : orbit.xi_end() + 1.0;
            const double seg_end = std::min(block_end, next_switch);
            const double dt = v.time_at(seg_end) - v.time_at(cursor);
            running.add(switches[si].state, dt);
            in_block.add(switches[si].state, dt);
            cursor = seg_end;
            if (seg_end == next_switch) ++si;
        }
        const double elapsed = v.time_at(block_end) - t0;
        occ.block.push_back(n);
        occ.t_grid.push_back(v.time_at(block_end));
        occ.chi_l.push_back(running.left / elapsed);
        occ.chi_r.push_back(running.right / elapsed);
        // alpha_n only for blocks fully covered by the orbit
        if (static_cast<double>(n - 1) >= xi0) {
            occ.alpha_n.push_back(
                1.0 - (n % 2 == 1 ? in_block.left : in_block.right) / in_block.total());
            occ.wrong_strip.push_back(n % 2 == 1 ? in_block.right : in_block.left);
        } else {
            occ.alpha_n.push_back(std::nan(""));
            occ.wrong_strip.push_back(std::nan(""));
        }
    }
    return occ;
}

PairOccupancy pair_occupancy(const OrbitSample& orbit1, const OrbitSample& orbit2,
                             const DescentSchedule& s, const VerticalProfile& v, double epsilon) {
    struct TimedState {
        double t;
        StripState state;
    };
    const auto timed = [&](const OrbitSample& o) {
        std::vector<TimedState> out;
        const double t_seed = v.time_at(o.xi0());
        for (const auto& e : strip_timeline(o, s, epsilon))
            out.push_back({v.time_at(e.xi) - t_seed, e.state});
        return out;
    };
    const auto tl1 = timed(orbit1);
    const auto tl2 = timed(orbit2);
    const double t_end1 = v.time_at(orbit1.xi_end()) - v.time_at(orbit1.xi0());
    const double t_end2 = v.time_at(orbit2.xi_end()) - v.time_at(orbit2.xi0());
    const double horizon = std::min(t_end1, t_end2);

    // probe times: ends of orbit1's blocks mapped to the common clock
    std::vector<double> probes;
    for (int n = static_cast<int>(std::floor(orbit1.xi0())) + 1;
         static_cast<double>(n) <= orbit1.xi_end(); ++n) {
        const double t = v.time_at(n) - v.time_at(orbit1.xi0());
        if (t <= horizon) probes.push_back(t);
    }
    if (probes.empty() || probes.back() < horizon) probes.push_back(horizon);

    PairOccupancy out;
    double ll = 0, rr = 0, lr = 0, rl = 0;
    std::size_t i1 = 0, i2 = 0, pi = 0;
    double cursor = 0.0;
    while (cursor < horizon) {
        const double n1 = i1 + 1 < tl1.size() ? tl1[i1 + 1].t : horizon;
        const double n2 = i2 + 1 < tl2.size() ? tl2[i2 + 1].t : horizon;
        const double np = pi < probes.size() ? probes[pi] : horizon;
        const double seg_end = std::min({horizon, n1, n2, np});
        const double dt = seg_end - cursor;
        if (dt > 0.0) {
            const StripState s1 = tl1[i1].state, s2 = tl2[i2].state;
            if (s1 == StripState::Left && s2 == StripState::Left) ll += dt;
            else if (s1 == StripState::Right && s2 == StripState::Right) rr += dt;
            else if (s1 == StripState::Left && s2 == StripState::Right) lr += dt;
            else if (s1 == StripState::Right && s2 == StripState::Left) rl += dt;
        }
        cursor = seg_end;
        if (seg_end == n1 && i1 + 1 < tl1.size()) ++i1;
        if (seg_end == n2 && i2 + 1 < tl2.size()) ++i2;
        if (pi < probes.size() && seg_end == probes[pi]) {
            out.t_grid.push_back(seg_end);
            out.s_ll.push_back(ll / seg_end);
            out.s_rr.push_back(rr / seg_end);
            out.s_lr.push_back(lr / seg_end);
            out.s_rl.push_back(rl / seg_end);
            ++pi;
        }
    }
    out.final_ll = ll / horizon;
    out.final_rr = rr / horizon;
    out.final_lr = lr / horizon;
    out.final_rl = rl / horizon;
    out.final_rest = 1.0 - (ll + rr + lr + rl) / horizon;
    return out;
}

E1E2Result e1_e2_check(int n, const std::vector<double>& alpha) {
    if (n < 1 || static_cast<int>(alpha.size()) < n)
        throw std::invalid_argument("e1_e2_check: alpha must have n entries");
    const auto t_of = [](int k) { return std::exp(std::sqrt(static_cast<double>(k))) - 1.0; };
    const double tn = t_of(n);
    double E1 = 0.0, E2 = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double dk = t_of(k) - t_of(k - 1);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        E1 += sign * dk;
        E2 += alpha[static_cast<std::size_t>(k - 1)] * (-sign) * dk;
    }
    E1E2Result r;
    r.E1 = E1 / tn;
    r.E2 = E2 / tn;
    r.bound = (tn - t_of(n - 1)) / tn;
    return r;
}

}  // namespace attractorlab
