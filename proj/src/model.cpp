#include "attractorlab/core/model.hpp"

#include <cmath>
#include <sstream>

namespace attractorlab {

SaddleParams::SaddleParams(double mu_, double lambda_, double c_) : mu(mu_), lambda(lambda_), c(c_) {
    if (!(mu > 0.0) || !(lambda > 0.0) || !(c > 0.0))
        throw invariant_error("SaddleParams: mu, lambda, c must be positive");
}

SaddleNodeParams::SaddleNodeParams(double a_, double b_) : a(a_), b(b_) {
    if (!(b > 0.0)) throw invariant_error("SaddleNodeParams: b must be positive");
}

PolycycleModel PolycycleModel::loop(SaddleParams p, double c1, double K) {
    if (!(p.nu() > 1.0))
        throw invariant_error("loop model requires characteristic number nu > 1");
    if (!(c1 > 0.0)) throw invariant_error("loop model requires c1 > 0");
    if (K < 0.0) throw invariant_error("loop model requires K >= 0");
    return PolycycleModel(LoopModel{p, c1, K});
}

PolycycleModel PolycycleModel::biangle(SaddleParams A, SaddleParams B) {
    const double Lambda = A.nu() * B.nu();
    if (!(Lambda > 1.0))
        throw invariant_error("biangle model requires Lambda = nuA*nuB > 1");
    return PolycycleModel(BiangleModel{A, B});
}

PolycycleModel PolycycleModel::modified_bowen(SaddleNodeParams sn, SaddleParams s) {
    return PolycycleModel(ModifiedBowenModel{sn, s});
}

PolycycleModel::Kind PolycycleModel::kind() const {
    if (std::holds_alternative<LoopModel>(model_)) return Kind::Loop;
    if (std::holds_alternative<BiangleModel>(model_)) return Kind::Biangle;
    return Kind::ModifiedBowen;
}

const LoopModel& PolycycleModel::as_loop() const { return std::get<LoopModel>(model_); }
const BiangleModel& PolycycleModel::as_biangle() const { return std::get<BiangleModel>(model_); }
const ModifiedBowenModel& PolycycleModel::as_mbe() const {
    return std::get<ModifiedBowenModel>(model_);
}

std::string PolycycleModel::kind_name() const {
    switch (kind()) {
        case Kind::Loop: return "loop";
        case Kind::Biangle: return "biangle";
        case Kind::ModifiedBowen: return "modified-bowen";
    }
    return "?";
}

DerivedConstants derived_constants(const PolycycleModel& m) {
    DerivedConstants d;
    switch (m.kind()) {
        case PolycycleModel::Kind::Loop:
            d.nu = m.as_loop().saddle.nu();
            break;
        case PolycycleModel::Kind::Biangle: {
            const auto& b = m.as_biangle();
            const double Lambda = b.A.nu() * b.B.nu();
            const double r = b.A.mu / b.B.lambda;
            d.Lambda = Lambda;
            d.Lambda0 = (Lambda + r) / (1.0 + r);
            break;
        }
        case PolycycleModel::Kind::ModifiedBowen: {
            const auto& mbe = m.as_mbe();
            const double b = mbe.sn.b, mu = mbe.saddle.mu, lam = mbe.saddle.lambda;
            d.recurrence_C = std::log(b * mu / (b + lam));
            d.c_time = 1.0 / b + 1.0 / lam;
            break;
        }
    }
    return d;
}

namespace {
void require_chart(double x, const char* who) {
    if (!(x > 0.0) || !(x < 1.0)) {
        std::ostringstream os;
        os << who << ": coordinate " << x << " outside the open unit chart (0,1)";
        throw std::domain_error(os.str());
    }
}
}  // namespace

MapResult saddle_local(double x, const SaddleParams& p) {
    require_chart(x, "saddle_local");
    MapResult r;
    r.image = p.c * std::pow(x, p.nu());
    r.time = std::log(1.0 / x) / p.lambda;
    r.left_chart = r.image >= 1.0;
    return r;
}

MapResult saddle_node_local(double x, const SaddleNodeParams& p) {
    require_chart(x, "saddle_node_local");
    MapResult r;
    r.image = std::pow(x, -p.a) * std::exp(-1.0 / x);
    r.time = 1.0 / (p.b * x);
    r.left_chart = r.image >= 1.0;
    return r;
}

StepResult poincare_step(double x, const PolycycleModel& m) {
    require_chart(x, "poincare_step");
    StepResult s;
    switch (m.kind()) {
        case PolycycleModel::Kind::Loop: {
            const auto& loop = m.as_loop();
            const MapResult leg = saddle_local(x, loop.saddle);
            if (leg.left_chart) throw chart_exit_error("poincare_step(loop): saddle image >= 1");
            // Saddle leg time is c1 * zeta with zeta = -ln(x); the
            // Sigma_B -> Sigma_A return is normalized to the identity and
            // takes the model constant K.
            s.next = leg.image;
            s.turn_time = loop.c1 * (-std::log(x)) + loop.K;
            s.time_in_B = loop.K;
            break;
        }
        case PolycycleModel::Kind::Biangle: {
            const auto& b = m.as_biangle();
            const MapResult legA = saddle_local(x, b.A);
            if (legA.left_chart) throw chart_exit_error("poincare_step(biangle): leg A image >= 1");
            const MapResult legB = saddle_local(legA.image, b.B);
            if (legB.left_chart) throw chart_exit_error("poincare_step(biangle): leg B image >= 1");
            s.next = legB.image;
            s.turn_time = legA.time + legB.time;
            s.time_in_B = legB.time;
            break;
        }
        case PolycycleModel::Kind::ModifiedBowen: {
            const auto& mbe = m.as_mbe();
            const MapResult legA = saddle_node_local(x, mbe.sn);
            if (legA.left_chart)
                throw chart_exit_error("poincare_step(mbe): saddle-node image >= 1");
            const MapResult legB = saddle_local(legA.image, mbe.saddle);
            if (legB.left_chart) throw chart_exit_error("poincare_step(mbe): saddle image >= 1");
            s.next = legB.image;
            s.turn_time = legA.time + legB.time;
            s.time_in_B = legB.time;
            break;
        }
    }
    if (s.next >= x) {
        std::ostringstream os;
        os << "poincare_step: contraction violated, next = " << s.next << " >= x = " << x;
        throw contraction_error(os.str());
    }
    return s;
}

double loop_zeta_step(double zeta, const SaddleParams& p) {
    return p.nu() * zeta - std::log(p.c);
}

TowerValue mbe_tau_step(const TowerValue& tau, const PolycycleModel& m) {
    if (m.kind() != PolycycleModel::Kind::ModifiedBowen)
        throw invariant_error("mbe_tau_step: model is not modified-Bowen");
    const double C = *derived_constants(m).recurrence_C;
    return tau.exp().add_const(C);
}

namespace {

// xdot = lambda*x, ydot = -mu*y. The field is linear and diagonal, so the
// four RK4 stages collapse exactly to multiplication by the degree-4 Taylor
// factor of e^{a h}.
double rk4_factor(double a, double h) {
    const double ah = a * h;
    return 1.0 + ah * (1.0 + ah * (0.5 + ah * (1.0 / 6.0 + ah / 24.0)));
}

OracleResult saddle_oracle_pass(double x0, const SaddleParams& p, double step) {
    double x = x0, y = 1.0, t = 0.0;
    const double fx = rk4_factor(p.lambda, step);
    const double fy = rk4_factor(-p.mu, step);
    while (x * fx < 1.0) {
        x *= fx;
        y *= fy;
        t += step;
    }
    // Land on the section x = 1 with a final partial step, found by bisection
    // on the step length using RK4 evaluations only.
    double lo = 0.0, hi = step;
    for (int i = 0; i < 200 && hi - lo > 1e-18; ++i) {
        const double mid = 0.5 * (lo + hi);
        (x * rk4_factor(p.lambda, mid) < 1.0 ? lo : hi) = mid;
    }
    const double h_last = 0.5 * (lo + hi);
    OracleResult r;
    r.exit = y * rk4_factor(-p.mu, h_last);
    r.time = t + h_last;
    return r;
}

}  // namespace

OracleResult saddle_oracle(double x0, const SaddleParams& p, double step) {
    require_chart(x0, "saddle_oracle");
    if (!(step > 0.0) || step > 1e-4)
        throw std::domain_error("saddle_oracle: step must be in (0, 1e-4]");

    const OracleResult fine = saddle_oracle_pass(x0, p, step);
    // Self-check against a pass at twice the step (RK4 error scales by 16).
    const OracleResult coarse = saddle_oracle_pass(x0, p, 2.0 * step);
    const double exit_err = std::abs(fine.exit - coarse.exit) / fine.exit;
    const double time_err = std::abs(fine.time - coarse.time);
    if (exit_err > 1e-7 || time_err > 1e-7) {
        std::ostringstream os;
        os << "saddle_oracle: step " << step << " too large (exit drift " << exit_err
           << ", time drift " << time_err << ")";
        throw std::runtime_error(os.str());
    }
    return fine;
}

}  // namespace attractorlab
