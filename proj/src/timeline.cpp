#include "attractorlab/timeline/timeline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace attractorlab {

namespace {

// A positive quantity given by its natural log, as a TowerValue.
TowerValue time_from_ln(double ln_t) {
    if (ln_t <= TowerValue::kExpPromote) return TowerValue(0, std::exp(ln_t));
    return TowerValue(1, ln_t);
}

// ln(nu * e^m - lnc) for the biangle leg ell' = nu*ell - ln c, ell = e^m.
// Chart-exit when the new ell is non-positive (image coordinate >= 1).
double affine_ln(double m, double nu, double lnc, const char* leg) {
    if (m < 690.0) {
        const double ell = nu * std::exp(m) - lnc;
        if (!(ell > 0.0)) {
            std::ostringstream os;
            os << "biangle " << leg << ": image left the unit chart";
            throw chart_exit_error(os.str());
        }
        return std::log(ell);
    }
    return m + std::log(nu) + std::log1p(-lnc * std::exp(-m) / nu);
}

struct TurnLegs {
    TowerValue legA;   // time of the U_A sub-leg
    TowerValue legB;   // time of the U_B sub-leg
    bool asymptotic = false;
};

// Per-model iteration state: coordinate bookkeeping plus one-turn legs.
class TurnIterator {
  public:
    explicit TurnIterator(const PolycycleModel& m, double z0) : model_(m) {
        if (!(z0 > 0.0) || !(z0 < 1.0))
            throw std::domain_error("generate_timeline: z0 outside the open unit chart (0,1)");
        switch (m.kind()) {
            case PolycycleModel::Kind::Loop: {
                zeta_ = -std::log(z0);
                const auto& loop = m.as_loop();
                const double floor_zeta = std::log(loop.saddle.c) / (loop.saddle.nu() - 1.0);
                if (!(zeta_ > floor_zeta))
                    throw std::domain_error("loop timeline: zeta0 below the expansion floor");
                break;
            }
            case PolycycleModel::Kind::Biangle: {
                m_ = std::log(std::log(1.0 / z0));
                break;
            }
            case PolycycleModel::Kind::ModifiedBowen: {
                u_ = TowerValue(0, std::log(1.0 / z0));
                break;
            }
        }
    }

    TowerValue coord() const {
        switch (model_.kind()) {
            case PolycycleModel::Kind::Loop: return TowerValue(0, zeta_);
            case PolycycleModel::Kind::Biangle: return time_from_ln(m_);
            case PolycycleModel::Kind::ModifiedBowen: return u_;
        }
        return TowerValue();
    }

    // Legs of the turn starting at the current coordinate; advances the state.
    TurnLegs step() {
        TurnLegs out;
        switch (model_.kind()) {
            case PolycycleModel::Kind::Loop: {
                const auto& loop = model_.as_loop();
                out.legA = TowerValue(0, loop.c1 * zeta_);
                out.legB = TowerValue(0, loop.K);
                const double next = loop_zeta_step(zeta_, loop.saddle);
                if (!(next > zeta_)) throw contraction_error("loop timeline: zeta not increasing");
                if (!std::isfinite(next)) throw horizon_error("loop timeline left double range");
                zeta_ = next;
                break;
            }
            case PolycycleModel::Kind::Biangle: {
                const auto& b = model_.as_biangle();
                out.legA = time_from_ln(m_ - std::log(b.A.lambda));
                const double m_mid = affine_ln(m_, b.A.nu(), std::log(b.A.c), "leg A");
                out.legB = time_from_ln(m_mid - std::log(b.B.lambda));
                const double m_next = affine_ln(m_mid, b.B.nu(), std::log(b.B.c), "leg B");
                if (!(m_next > m_))
                    throw contraction_error("biangle timeline: coordinate not contracting");
                m_ = m_next;
                break;
            }
            case PolycycleModel::Kind::ModifiedBowen: {
                const auto& mbe = model_.as_mbe();
                const double a = mbe.sn.a, bb = mbe.sn.b;
                const double lam = mbe.saddle.lambda, nu = mbe.saddle.nu();
                const double lnc = std::log(mbe.saddle.c);
                if (u_.level() == 0 && u_.mantissa() <= TowerValue::kExpPromote) {
                    // exact tier: eta = e^u representable
                    const double u = u_.mantissa();
                    const double eta = std::exp(u);
                    const double au_over_eta = a * u * std::exp(-u);
                    if (au_over_eta >= 1.0)
                        throw chart_exit_error("mbe timeline: saddle-node image left the chart");
                    out.legA = time_from_ln(u - std::log(bb));
                    out.legB = time_from_ln(u - std::log(lam) + std::log1p(-au_over_eta));
                    const double u_next = nu * eta - a * nu * u - lnc;
                    if (std::isfinite(u_next)) {
                        if (!(u_next > u))
                            throw contraction_error("mbe timeline: coordinate not contracting");
                        u_ = TowerValue(0, u_next);
                    } else {
                        u_ = TowerValue(0, u + std::log(nu)).exp();
                    }
                } else {
                    // tower tier: corrections to the legs and to the next
                    // coordinate fall below the mantissa ulp; the recurrence
                    // is the exact model at double fidelity from here on
                    out.asymptotic = u_.level() >= 1;
                    out.legA = u_.add_const(-std::log(bb)).exp();
                    out.legB = u_.add_const(-std::log(lam)).exp();
                    u_ = u_.add_const(std::log(nu)).exp();
                }
                break;
            }
        }
        return out;
    }

  private:
    const PolycycleModel& model_;
    double zeta_ = 0.0;  // loop
    double m_ = 0.0;     // biangle: ln(ell)
    TowerValue u_;       // MBE: ln(eta)
};

TimeScale natural_scale_for(const PolycycleModel& m) {
    switch (m.kind()) {
        case PolycycleModel::Kind::Loop: return TimeScale::Zeta;
        case PolycycleModel::Kind::Biangle: return TimeScale::LogLambda;
        case PolycycleModel::Kind::ModifiedBowen: return TimeScale::LnLn;
    }
    return TimeScale::LnLn;
}

template <typename StopWhen>
EventTimeline generate_impl(const PolycycleModel& m, double z0, int max_turns, StopWhen done) {
    if (max_turns < 1) throw std::domain_error("generate_timeline: n_turns must be >= 1");
    if (max_turns > 1000000) throw horizon_error("generate_timeline: n_turns > 10^6");

    EventTimeline tl(m, z0, natural_scale_for(m));
    TurnIterator it(m, z0);

    TowerValue tA = TowerValue(0, 0.0);
    for (int k = 0;; ++k) {
        const TowerValue coord = it.coord();
        const TurnLegs legs = it.step();
        const TowerValue tB = tA.add(legs.legA);
        TimelineEvent ev;
        ev.k = k;
        ev.tA = tA;
        ev.tB = tB;
        ev.asymptotic = legs.asymptotic;
        tl.push_event(ev, coord);
        tA = tB.add(legs.legB);
        if (k + 1 >= max_turns || done(k + 1, tA)) {
            // final event: the (k+1)-th Sigma_A crossing and its following
            // Sigma_B crossing, so the last recorded U_B leg is bounded
            const TowerValue coord_end = it.coord();
            const TurnLegs last = it.step();
            TimelineEvent fin;
            fin.k = k + 1;
            fin.tA = tA;
            fin.tB = tA.add(last.legA);
            fin.asymptotic = last.asymptotic;
            tl.push_event(fin, coord_end);
            break;
        }
    }
    return tl;
}

}  // namespace

void EventTimeline::push_event(TimelineEvent ev, TowerValue coord) {
    if (!(ev.tA < ev.tB)) throw invariant_error("EventTimeline: T_kA < T_kB violated");
    // Strict ordering of T_kB < T_{k+1,A} saturates at representation deep in
    // the tower tier (the U_B leg is a bounded factor while the times gain a
    // whole exp level per turn), and for a loop with K = 0; equality is
    // allowed there, a zero-width U_B leg.
    if (!events_.empty() && events_.back().tB > ev.tA)
        throw invariant_error("EventTimeline: T_kB <= T_{k+1,A} violated");
    events_.push_back(ev);
    coords_.push_back(coord);
}

EventTimeline generate_timeline(const PolycycleModel& m, double z0, int n_turns) {
    return generate_impl(m, z0, n_turns, [](int, const TowerValue&) { return false; });
}

EventTimeline generate_until(const PolycycleModel& m, double z0, const TowerValue& horizon,
                             int min_turns, int max_turns) {
    return generate_impl(m, z0, max_turns, [&horizon, min_turns](int k, const TowerValue& tA) {
        return k >= min_turns && tA >= horizon;
    });
}

std::vector<TauEvent> rescale(const EventTimeline& t, TimeScale scale, double lambda_base) {
    std::vector<TauEvent> out;
    const double lnLambda =
        scale == TimeScale::LogLambda
            ? std::log(lambda_base > 0.0 ? lambda_base : scale_base_lambda(t.model()))
            : 1.0;
    for (std::size_t i = 0; i < t.events().size(); ++i) {
        const auto& ev = t.events()[i];
        TauEvent te;
        te.k = ev.k;
        switch (scale) {
            case TimeScale::LogLambda: {
                if (ev.k == 0) continue;  // tA = 0 has no logarithm
                const auto lA = ev.tA.ln().to_plain(), lB = ev.tB.ln().to_plain();
                if (!lA || !lB)
                    throw std::domain_error("rescale: LogLambda time out of log range");
                te.tauA = TowerValue(0, *lA / lnLambda);
                te.tauB = TowerValue(0, *lB / lnLambda);
                break;
            }
            case TimeScale::LnLn: {
                if (ev.k == 0) continue;
                if (!(ev.tA > TowerValue(0, 1.0)))
                    throw std::domain_error("rescale: LnLn requires times > 1");
                te.tauA = ev.tA.ln().ln();
                te.tauB = ev.tB.ln().ln();
                break;
            }
            case TimeScale::Zeta: {
                te.tauA = t.coords()[i];
                te.tauB = t.coords()[i];
                break;
            }
        }
        out.push_back(te);
    }
    return out;
}

double scale_base_lambda(const PolycycleModel& m) {
    if (m.kind() != PolycycleModel::Kind::Biangle)
        throw invariant_error("scale_base_lambda: model has no Lambda");
    return *derived_constants(m).Lambda;
}

std::vector<RatioPair> geometric_ratios(const EventTimeline& t) {
    if (t.model().kind() != PolycycleModel::Kind::Biangle)
        throw invariant_error("geometric_ratios: biangle timeline required");
    const auto& evs = t.events();
    if (evs.size() < 3) throw insufficient_events_error("geometric_ratios: need >= 3 events");
    std::vector<RatioPair> out;
    for (std::size_t i = 1; i + 1 < evs.size(); ++i) {
        RatioPair r;
        r.k = evs[i].k;
        r.ratio_A = evs[i + 1].tA.ratio_to(evs[i].tA);
        r.ratio_B = evs[i].tB.ratio_to(evs[i].tA);
        out.push_back(r);
    }
    return out;
}

double ln_gamma_hat(const EventTimeline& t, int k) {
    if (t.model().kind() != PolycycleModel::Kind::Biangle)
        throw invariant_error("ln_gamma_hat: biangle timeline required");
    if (k < 1 || k >= static_cast<int>(t.events().size()))
        throw insufficient_events_error("ln_gamma_hat: index outside recorded range");
    const auto lnT = t.events()[k].tA.ln().to_plain();
    if (!lnT) throw std::domain_error("ln_gamma_hat: time out of log range");
    return *lnT - k * std::log(scale_base_lambda(t.model()));
}

std::vector<RecurrenceResidual> recurrence_residuals(const EventTimeline& t) {
    if (t.model().kind() != PolycycleModel::Kind::ModifiedBowen)
        throw invariant_error("recurrence_residuals: modified-Bowen timeline required");
    const auto& evs = t.events();
    if (evs.size() < 3)
        throw insufficient_events_error("recurrence_residuals: need >= 3 events");
    const double C = *derived_constants(t.model()).recurrence_C;

    // tau_n = lnln T_{n+1,A}; the tier of tau_n is the tier of the coordinate
    // u_n that drove the turn ending at T_{n+1,A}.  e^{tau_n} is ln T_{n+1,A}
    // itself, taken directly so no exp/ln round trip degrades the residual.
    const auto exact_at = [&](std::size_t n) { return t.coords()[n].level() == 0; };

    std::vector<RecurrenceResidual> out;
    for (std::size_t n = 0; n + 2 < evs.size(); ++n) {
        RecurrenceResidual r;
        r.n = static_cast<int>(n);
        const TowerValue tau_next = evs[n + 2].tA.ln().ln();
        const TowerValue e_tau = evs[n + 1].tA.ln();
        r.value = tau_next.minus_to_plain(e_tau) - C;
        if (exact_at(n) && exact_at(n + 1))
            r.tier = RecurrenceResidual::Tier::Exact;
        else if (exact_at(n))
            r.tier = RecurrenceResidual::Tier::Boundary;
        else
            r.tier = RecurrenceResidual::Tier::Recurrence;
        out.push_back(r);
    }
    return out;
}

std::vector<TauGap> mbe_tau_gaps(const EventTimeline& t) {
    if (t.model().kind() != PolycycleModel::Kind::ModifiedBowen)
        throw invariant_error("mbe_tau_gaps: modified-Bowen timeline required");
    const auto& evs = t.events();
    std::vector<TauGap> out;
    for (std::size_t i = 1; i + 1 < evs.size(); ++i) {
        TauGap g;
        g.k = evs[i].k;
        // tau(T_{k+1,A}) - tau(T_{k,B}) = ln(lnT_{k+1,A} / lnT_{k,B})
        g.value = evs[i + 1].tA.ln().ln_ratio_to(evs[i].tB.ln());
        g.exact = t.coords()[i].level() == 0;
        out.push_back(g);
    }
    return out;
}

}  // namespace attractorlab
