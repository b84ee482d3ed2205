#ifndef ATTRACTORLAB_TIMELINE_TIMELINE_HPP
#define ATTRACTORLAB_TIMELINE_TIMELINE_HPP

#include <vector>

#include "attractorlab/core/model.hpp"
#include "attractorlab/numeric/tower_value.hpp"

namespace attractorlab {

enum class TimeScale { LogLambda, LnLn, Zeta };

/// One recorded turn: the k-th Sigma_A crossing at tA (k = 0 is the start of
/// the orbit on Sigma_A at time 0) and the first Sigma_B crossing after it at
/// tB.  The orbit is in U_A on (tA, tB) and in U_B on (tB, next tA).
struct TimelineEvent {
    int k = 0;
    TowerValue tA;
    TowerValue tB;
    bool asymptotic = false;  // produced once the orbit coordinate left plain-double range
};

/// Crossing-time sequence of one orbit of a polycycle model, with the orbit
/// coordinate bookkeeping needed by the analyses:
///   loop     coord[k] = zeta_k                 (plain)
///   biangle  coord[k] = ell_k = ln(1/x_k)      (level <= 1)
///   MBE      coord[k] = u_k  = ln(eta_k)       (tower once the exact tier ends)
class EventTimeline {
  public:
    EventTimeline(PolycycleModel model, double z0, TimeScale natural_scale)
        : model_(std::move(model)), z0_(z0), natural_scale_(natural_scale) {}

    const PolycycleModel& model() const { return model_; }
    double z0() const { return z0_; }
    TimeScale natural_scale() const { return natural_scale_; }

    const std::vector<TimelineEvent>& events() const { return events_; }
    const std::vector<TowerValue>& coords() const { return coords_; }
    int turns() const { return static_cast<int>(events_.size()) - 1; }

    /// Largest fully recorded time (the last Sigma_A crossing).
    const TowerValue& horizon() const { return events_.back().tA; }

    void push_event(TimelineEvent ev, TowerValue coord);

  private:
    PolycycleModel model_;
    double z0_;
    TimeScale natural_scale_;
    std::vector<TimelineEvent> events_;
    std::vector<TowerValue> coords_;
};

/// Iterate the exact return system from z0 for n_turns turns.
/// Biangle times are carried in the log domain, MBE times switch to the
/// tau-recurrence tower tier when the coordinate leaves double range, loop
/// times stay plain.  Throws horizon_error for n_turns > 10^6 and propagates
/// chart-exit/contraction errors from the step maps.
EventTimeline generate_timeline(const PolycycleModel& m, double z0, int n_turns);

/// Generate until the last Sigma_A crossing reaches `horizon` (at least
/// min_turns turns, at most max_turns).
EventTimeline generate_until(const PolycycleModel& m, double z0, const TowerValue& horizon,
                             int min_turns = 4, int max_turns = 64);

/// Rescaled crossing times of one event, tau = log_Lambda(t), lnln(t) or the
/// recorded zeta coordinate.
struct TauEvent {
    int k = 0;
    TowerValue tauA;
    TowerValue tauB;
};

/// Apply the time-scale transform to every event with positive times
/// (event 0 is skipped: its tA is 0).  LogLambda requires t > 0, LnLn t > 1.
/// lambda_base overrides the log base (a pair of timelines is rescaled with
/// the first flow's Lambda); 0 means use the timeline's own model.
std::vector<TauEvent> rescale(const EventTimeline& t, TimeScale scale, double lambda_base = 0.0);

/// Scale transform actually used for a model's own analyses.
double scale_base_lambda(const PolycycleModel& m);

/// Per-turn time ratios (T_{k+1,A}/T_{k,A}, T_{k,B}/T_{k,A}) of a biangle
/// timeline; the first tends to Lambda, the second to Lambda0.
struct RatioPair {
    int k = 0;
    double ratio_A = 0.0;
    double ratio_B = 0.0;
};
std::vector<RatioPair> geometric_ratios(const EventTimeline& t);

/// ln(gamma_hat(k)) = ln T_{k,A} - k ln Lambda for a biangle timeline; the
/// cocycle satisfies gamma(P(z)) = Lambda * gamma(z).
double ln_gamma_hat(const EventTimeline& t, int k);

/// Residual of the MBE double-log recurrence at index n:
/// r_n = tau_{n+1} - e^{tau_n} - C with tau_n = lnln T_{n+1,A}.
struct RecurrenceResidual {
    int n = 0;
    double value = 0.0;
    enum class Tier { Exact, Boundary, Recurrence } tier = Tier::Exact;
};
std::vector<RecurrenceResidual> recurrence_residuals(const EventTimeline& t);

/// tau-length of the U_B legs, tau = lnln t: gap_k = tau(T_{k+1,A}) - tau(T_{k,B}).
/// Tower-tier gaps saturate to 0 at representation; `exact` marks gaps whose
/// turn ran in the exact tier.
struct TauGap {
    int k = 0;
    double value = 0.0;
    bool exact = true;
};
std::vector<TauGap> mbe_tau_gaps(const EventTimeline& t);

}  // namespace attractorlab

#endif
