#include "attractorlab/cylinder/circle_field.hpp"

#include <cmath>
#include <stdexcept>

namespace attractorlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;

// C-infinity partition step: 0 below 0, 1 above 1, flat at both ends.
double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double f0 = std::exp(-1.0 / s);
    const double f1 = std::exp(-1.0 / (1.0 - s));
    return f0 / (f0 + f1);
}
}  // namespace

double wrap_2pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

double wrap_pi(double angle) {
    double w = wrap_2pi(angle);
    if (w > kTwoPi / 2.0) w -= kTwoPi;
    return w;
}

double circle_dist(double a, double b) { return std::abs(wrap_pi(a - b)); }

CircleFieldFamily::CircleFieldFamily(double theta_north, double kappa, double delta_N,
                                     double arc_lo, double arc_hi, double blend_width)
    : theta_north_(wrap_2pi(theta_north)),
      kappa_(kappa),
      delta_N_(delta_N),
      arc_lo_(arc_lo),
      arc_hi_(arc_hi),
      blend_width_(blend_width) {
    if (!(kappa > 0.0)) throw std::invalid_argument("CircleFieldFamily: kappa must be positive");
    if (!(delta_N > 0.0) || !(delta_N < kTwoPi / 2.0))
        throw std::invalid_argument("CircleFieldFamily: delta_N must be in (0, pi)");
    if (!(blend_width > 0.0) || !(blend_width < delta_N))
        throw std::invalid_argument("CircleFieldFamily: blend_width must be in (0, delta_N)");
    if (!(arc_hi >= arc_lo)) throw std::invalid_argument("CircleFieldFamily: empty arc_I");
    // arc_I must not meet closure(N)
    for (double a = arc_lo; a <= arc_hi + 1e-12; a += (arc_hi - arc_lo) / 64.0 + 1e-12) {
        if (circle_dist(a, theta_north_) <= delta_N)
            throw std::invalid_argument("CircleFieldFamily: arc_I intersects closure(N)");
    }
}

CircleFieldFamily CircleFieldFamily::default_geometry() {
    const double pi = kTwoPi / 2.0;
    return CircleFieldFamily(pi, 1.0, 0.6, -pi / 3.0, pi / 3.0, 0.25);
}

bool CircleFieldFamily::in_northern_domain(double theta) const {
    return circle_dist(theta, theta_north_) < delta_N_;
}

bool CircleFieldFamily::alpha_in_arc(double alpha) const {
    const double a = wrap_pi(alpha - 0.5 * (arc_lo_ + arc_hi_));
    const double half = 0.5 * (arc_hi_ - arc_lo_);
    return std::abs(a) <= half + 1e-12;
}

double CircleFieldFamily::eval(double alpha, double theta) const {
    if (!alpha_in_arc(alpha)) throw std::domain_error("w_eval: alpha outside arc_I");

    // unrolled coordinate measured from the source, cut at theta_north
    const double p = wrap_2pi(theta - theta_north_);
    const double p_alpha = wrap_2pi(alpha - theta_north_);
    const double linear = -2.0 * kappa_ * (p - p_alpha);

    const double d = circle_dist(theta, theta_north_);
    if (d >= delta_N_) return linear;

    // inside N blend with the fixed source profile; the blend factor is
    // identically zero on the core, which kills the cut discontinuity of the
    // unrolled coordinate on a whole neighbourhood of theta_north
    const double src = 2.0 * kappa_ * std::sin(theta - theta_north_);
    const double beta = smooth_step((d - (delta_N_ - blend_width_)) / blend_width_);
    return beta * linear + (1.0 - beta) * src;
}

FamilyReport family_validate(const CircleFieldFamily& f, int grid, double kappa_override) {
    if (grid < 1000) throw std::invalid_argument("family_validate: grid must be >= 1000");
    const double kappa = kappa_override > 0.0 ? kappa_override : f.kappa();
    FamilyReport report;
    const double h = 1e-6;

    for (int ai = 0; ai < 20; ++ai) {
        const double alpha = f.arc_lo() + (f.arc_hi() - f.arc_lo()) * ai / 19.0;
        int sign_changes = 0;
        double prev = f.eval(alpha, 0.0);
        for (int i = 1; i <= grid; ++i) {
            const double theta = kTwoPi * i / grid;
            const double w = f.eval(alpha, theta);
            if ((w > 0.0 && prev < 0.0) || (w < 0.0 && prev > 0.0)) ++sign_changes;
            if (w != 0.0) prev = w;

            // uniform attraction outside N (stencil kept clear of the blend)
            if (circle_dist(theta, f.theta_north()) > f.delta_N() + 2.0 * h) {
                const double slope = (f.eval(alpha, theta + h) - f.eval(alpha, theta - h)) / (2 * h);
                if (!(slope < -kappa)) {
                    report.pass = false;
                    report.violations.push_back({"uniform-attraction", alpha, theta, slope});
                    if (report.violations.size() > 8) return report;
                }
            }
        }
        if (sign_changes != 2) {
            report.pass = false;
            report.violations.push_back(
                {"two-zeros", alpha, 0.0, static_cast<double>(sign_changes)});
        }
        const double src_slope =
            (f.eval(alpha, f.theta_north() + h) - f.eval(alpha, f.theta_north() - h)) / (2 * h);
        if (!(src_slope > 0.0)) {
            report.pass = false;
            report.violations.push_back({"source-slope", alpha, f.theta_north(), src_slope});
        }
        // fixed points are where they should be
        if (std::abs(f.eval(alpha, alpha)) > 1e-12 ||
            std::abs(f.eval(alpha, f.theta_north())) > 1e-12) {
            report.pass = false;
            report.violations.push_back({"fixed-points", alpha, alpha, f.eval(alpha, alpha)});
        }
    }
    return report;
}

}  // namespace attractorlab
