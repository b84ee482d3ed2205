#include "attractorlab/cylinder/descent.hpp"

#include <cmath>
#include <stdexcept>

namespace attractorlab {

namespace {

// adaptive Simpson quadrature
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// fixed C-infinity bump supported on (0,1), max ~ e^{-4} scale
double unit_bump(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return std::exp(-1.0 / s) * std::exp(-1.0 / (1.0 - s));
}

double g_prime(double xi) { return std::exp(std::sqrt(xi)) / (2.0 * std::sqrt(xi)); }

}  // namespace

double bump_primitive(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double f0 = std::exp(-1.0 / s);
    const double f1 = std::exp(-1.0 / (1.0 - s));
    return f0 / (f0 + f1);
}

DescentSchedule::DescentSchedule(double theta_l, double theta_r)
    : theta_l_(theta_l), theta_r_(theta_r) {
    if (theta_l == theta_r) throw std::invalid_argument("DescentSchedule: theta_l == theta_r");
}

int DescentSchedule::block_of_xi(double xi) {
    if (xi < 0.0) throw std::domain_error("block_of_xi: negative depth");
    return static_cast<int>(std::floor(xi)) + 1;
}

double DescentSchedule::eval_eta(double eta) const {
    if (eta >= 0.0) return theta_l_;
    const double depth = -eta;  // = xi^2
    const double xi = std::sqrt(depth);
    const int n = block_of_xi(xi);
    if (n == 1) return theta_l_;
    const double s = depth - static_cast<double>(n - 1) * (n - 1);  // eta into the block
    if (s >= 1.0) return plateau(n);
    const double from = plateau(n - 1);
    const double to = plateau(n);
    return from + (to - from) * bump_primitive(s);
}

double DescentSchedule::eval_xi(double xi) const { return eval_eta(-xi * xi); }

std::vector<double> DescentSchedule::breakpoints(double xi_lo, double xi_hi) const {
    std::vector<double> out;
    for (int n = std::max(2, static_cast<int>(std::floor(xi_lo)) + 1);
         static_cast<double>(n - 1) < xi_hi; ++n) {
        const double start = static_cast<double>(n - 1);
        const double trans_end = std::sqrt(start * start + 1.0);
        if (start > xi_lo && start < xi_hi) out.push_back(start);
        if (trans_end > xi_lo && trans_end < xi_hi) out.push_back(trans_end);
    }
    return out;
}

VerticalProfile::VerticalProfile() : blend_start_(0.25), bump_scale_(0.0) {
    // solve for the bump amplitude that keeps the integral of 1/sigma over
    // [0,1] equal to e - 1 = t(1)
    const double target = std::exp(1.0) - 1.0;
    const auto base = [this](double xi) {
        if (xi <= blend_start_) return 2.0 * xi;  // keeps g' (singular at 0) out of reach
        const double mix = bump_primitive((xi - blend_start_) / (1.0 - blend_start_));
        return (1.0 - mix) * 2.0 * xi + mix * g_prime(xi);
    };
    const double base_int = blend_start_ * blend_start_ +
                            integrate(base, blend_start_, 1.0, 1e-13);
    const double bump_int =
        integrate([this](double xi) { return unit_bump((xi - blend_start_) / (1.0 - blend_start_)); },
                  0.0, 1.0, 1e-14);
    bump_scale_ = (target - base_int) / bump_int;
    // the corrected density must stay positive
    for (int i = 1; i < 256; ++i) {
        if (!(time_density(i / 256.0) > 0.0))
            throw std::logic_error("VerticalProfile: non-positive time density");
    }
}

double VerticalProfile::time_density(double xi) const {
    if (xi < 0.0) throw std::domain_error("time_density: negative depth");
    if (xi >= 1.0) return g_prime(xi);
    if (xi <= blend_start_) return 2.0 * xi;
    const double s = (xi - blend_start_) / (1.0 - blend_start_);
    const double mix = bump_primitive(s);
    return (1.0 - mix) * 2.0 * xi + mix * g_prime(xi) + bump_scale_ * unit_bump(s);
}

double VerticalProfile::rho(double eta) const {
    if (eta >= 0.0) return 1.0;
    if (eta <= -1.0) {
        const double u = -eta;
        return 4.0 * std::pow(u, 0.75) * std::exp(-std::pow(u, 0.25));
    }
    // -d(eta)/dt = 2 xi sigma(xi)
    const double xi = std::sqrt(-eta);
    if (xi == 0.0) return 1.0;
    return 2.0 * xi / time_density(xi);
}

double VerticalProfile::time_at(double xi) const {
    if (xi < 0.0) throw std::domain_error("time_at: negative depth");
    if (xi >= 1.0) return std::exp(std::sqrt(xi)) - 1.0;
    if (xi <= blend_start_) return xi * xi;  // density 2*xi integrates exactly
    return blend_start_ * blend_start_ +
           integrate([this](double u) { return time_density(u); }, blend_start_, xi, 1e-13);
}

double VerticalProfile::xi_at_time(double t) const {
    if (t < 0.0) throw std::domain_error("xi_at_time: negative time");
    if (t >= std::exp(1.0) - 1.0) {
        const double s = std::log(1.0 + t);
        return s * s;
    }
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (time_at(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ProfileSample VerticalProfile::eval(double xi) const {
    ProfileSample s;
    s.sigma = sigma(xi);
    s.rho = rho(-xi * xi);
    s.t = time_at(xi);
    return s;
}

FlatnessSample flatness_check(const VerticalProfile& v, double zeta, int order) {
    if (!(zeta > 0.0) || zeta > 1e-4)
        throw std::domain_error("flatness_check: zeta must be in (0, 1e-4]");
    if (order < 1 || order > 4) throw std::domain_error("flatness_check: order must be 1..4");

    FlatnessSample out;
    out.zeta = zeta;
    const auto rho_tilde = [&v](double z) { return v.rho(-1.0 / z); };
    out.rho_tilde = rho_tilde(zeta);

    const double h = zeta / 100.0;
    for (int k = 1; k <= order; ++k) {
        // central difference of order k via binomial weights
        double acc = 0.0;
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            const double x = zeta + (0.5 * k - j) * h;
            acc += ((j % 2 == 0) ? 1.0 : -1.0) * binom * rho_tilde(x);
            binom = binom * (k - j) / (j + 1.0);
        }
        out.deriv_mag.push_back(std::abs(acc / std::pow(h, k)));
    }
    return out;
}

}  // namespace attractorlab
