#include "attractorlab/cylinder/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace attractorlab {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// Integrate the scalar ODE y' = f(x, y) over [x0, x1]; on_accept is called at
// every accepted step with (x, y, y').
template <typename F, typename OnAccept>
void dopri5(const F& f, double x0, double x1, double& y, double tol, const OnAccept& on_accept) {
    double x = x0;
    double k1 = f(x, y);
    double h = std::min(x1 - x0, 0.01);
    const double h_min = 1e-14 * std::max(1.0, std::abs(x1));

    while (x1 - x > h_min) {
        h = std::min(h, x1 - x);
        if (h < h_min) throw std::runtime_error("integrate_orbit: step size underflow");

        const double k2 = f(x + c2 * h, y + h * a21 * k1);
        const double k3 = f(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 = f(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 =
            f(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(x + h, y5);
        const double err =
            std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));

        if (err <= tol) {
            x += h;
            y = y5;
            k1 = k7;  // FSAL
            on_accept(x, y, k7);
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
}

}  // namespace

void OrbitSample::push(double xi, double theta, double dtheta) {
    if (!xi_.empty() && !(xi > xi_.back()))
        throw std::logic_error("OrbitSample: depth must increase");
    xi_.push_back(xi);
    theta_.push_back(theta);
    dtheta_.push_back(dtheta);
}

double OrbitSample::theta_at(double xi) const {
    if (xi_.empty() || xi < xi_.front() - 1e-12 || xi > xi_.back() + 1e-12)
        throw std::domain_error("OrbitSample::theta_at: depth outside the integrated range");
    const auto it = std::lower_bound(xi_.begin(), xi_.end(), xi);
    if (it == xi_.begin()) return theta_.front();
    if (it == xi_.end()) return theta_.back();
    const std::size_t i = static_cast<std::size_t>(it - xi_.begin());
    const double x0 = xi_[i - 1], x1 = xi_[i];
    const double h = x1 - x0;
    const double s = (xi - x0) / h;
    const double y0 = theta_[i - 1], y1 = theta_[i];
    const double d0 = dtheta_[i - 1] * h, d1 = dtheta_[i] * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * d1;
}

OrbitSample integrate_orbit(double theta0, double xi0, double xi_end, const CircleFieldFamily& f,
                            const DescentSchedule& s, const VerticalProfile& /*v*/, double tol) {
    if (!(xi_end > xi0) || xi0 < 0.0)
        throw std::domain_error("integrate_orbit: need xi_end > xi0 >= 0");
    if (!(tol > 0.0)) throw std::domain_error("integrate_orbit: tol must be positive");

    const auto rhs = [&](double xi, double theta) {
        return 2.0 * xi * f.eval(s.eval_xi(xi), theta);
    };

    OrbitSample orbit(theta0, xi0, tol);
    orbit.push(xi0, theta0, rhs(xi0, theta0));

    std::vector<double> cuts = s.breakpoints(xi0, xi_end);
    cuts.push_back(xi_end);
    std::sort(cuts.begin(), cuts.end());

    double y = theta0;
    double x = xi0;
    for (double cut : cuts) {
        if (cut <= x) continue;
        dopri5(rhs, x, cut, y, tol,
               [&](double xa, double ya, double da) { orbit.push(xa, ya, da); });
        x = cut;
    }
    if (orbit.xi().back() < xi_end) orbit.push(xi_end, y, rhs(xi_end, y));
    return orbit;
}

std::vector<double> integrate_orbit_unit_rho(double theta0, double xi0,
                                             const std::vector<double>& xi_samples,
                                             const CircleFieldFamily& f,
                                             const DescentSchedule& s, double tol) {
    // with rho == 1: d(eta)/dt = -1, so eta(t) = eta0 - t and
    // d(theta)/dt = w_{h(eta0 - t)}(theta)
    const double eta0 = -xi0 * xi0;
    const auto rhs = [&](double t, double theta) { return f.eval(s.eval_eta(eta0 - t), theta); };

    std::vector<double> stops;  // sample times plus the schedule breakpoints
    std::vector<double> out;
    double xi_max = xi0;
    for (double xs : xi_samples) xi_max = std::max(xi_max, xs);
    for (double cut : s.breakpoints(xi0, xi_max)) stops.push_back(cut * cut + eta0);
    for (double xs : xi_samples) {
        if (xs < xi0) throw std::domain_error("integrate_orbit_unit_rho: sample above the seed");
        stops.push_back(xs * xs + eta0);
    }
    std::sort(stops.begin(), stops.end());

    double y = theta0;
    double t = 0.0;
    for (double stop : stops) {
        if (stop > t) {
            dopri5(rhs, t, stop, y, tol, [](double, double, double) {});
            t = stop;
        }
        // emit in input order afterwards; collect (time, theta) pairs here
        out.push_back(y);
    }
    // map back: stops were sorted, so re-associate by time
    std::vector<double> result;
    result.reserve(xi_samples.size());
    for (double xs : xi_samples) {
        const double ts = xs * xs + eta0;
        const auto it = std::lower_bound(stops.begin(), stops.end(), ts);
        result.push_back(out[static_cast<std::size_t>(it - stops.begin())]);
    }
    return result;
}

}  // namespace attractorlab
