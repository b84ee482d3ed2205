#ifndef ATTRACTORLAB_CYLINDER_DESCENT_HPP
#define ATTRACTORLAB_CYLINDER_DESCENT_HPP

#include <vector>

namespace attractorlab {

/// C-infinity bump primitive on [0,1]: 0 at 0, 1 at 1, flat at both ends.
double bump_primitive(double s);

/// The target-angle schedule h(eta): theta_l for eta >= 0, then plateaus
/// alternating theta_l (odd blocks), theta_r (even blocks).  Blocks are the
/// unit segments I_n = [n-1, n] of the depth coordinate xi = sqrt(-eta);
/// each block with n >= 2 begins with a transition of unit length in eta,
/// a monotone rescaling of the bump primitive.
class DescentSchedule {
  public:
    DescentSchedule(double theta_l, double theta_r);

    double theta_l() const { return theta_l_; }
    double theta_r() const { return theta_r_; }

    double plateau(int block) const { return block % 2 == 1 ? theta_l_ : theta_r_; }

    /// Block index n >= 1 containing depth xi (block n covers xi in [n-1, n)).
    static int block_of_xi(double xi);

    double eval_eta(double eta) const;
    double eval_xi(double xi) const;  // eval_eta(-xi^2)

    /// Depth breakpoints of h inside [xi_lo, xi_hi]: block starts n-1 and
    /// transition ends sqrt((n-1)^2 + 1); the integrator splits steps there.
    std::vector<double> breakpoints(double xi_lo, double xi_hi) const;

  private:
    double theta_l_;
    double theta_r_;
};

struct ProfileSample {
    double sigma = 0.0;  // descent speed in xi: dxi/dt
    double rho = 0.0;    // -d(eta)/dt, the overall field factor
    double t = 0.0;      // cumulative descent time from xi = 0
};

/// The vertical profile: g(xi) = e^{sqrt(xi)} and sigma = 1/g' for xi >= 1,
/// so the cumulative descent time is t(xi) = e^{sqrt(xi)} - 1 exactly; on
/// [0,1] sigma is modified so that rho == 1 near eta = 0 while the integral
/// of 1/sigma over [0,1] stays equal to e - 1.
class VerticalProfile {
  public:
    VerticalProfile();

    /// 1/sigma(xi): the time density dt/dxi.
    double time_density(double xi) const;
    double sigma(double xi) const { return 1.0 / time_density(xi); }

    /// rho(eta): 4(-eta)^{3/4} e^{-(-eta)^{1/4}} for eta <= -1, the modified
    /// branch on (-1, 0], and 1 for eta >= 0.
    double rho(double eta) const;

    /// t(xi) = e^{sqrt(xi)} - 1 for xi >= 1, quadrature of 1/sigma below.
    double time_at(double xi) const;

    /// inverse of time_at
    double xi_at_time(double t) const;

    ProfileSample eval(double xi) const;

  private:
    double blend_start_;   // 1/sigma = 2*xi (rho == 1) up to here
    double bump_scale_;    // integral-preserving correction amplitude
};

struct FlatnessSample {
    double zeta = 0.0;
    double rho_tilde = 0.0;             // rho(-1/zeta)
    std::vector<double> deriv_mag;      // central-difference |d^k rho~/d zeta^k|, k = 1..order
};

/// Numeric witness that rho~(zeta) = 4 zeta^{-3/4} e^{-zeta^{-1/4}} is flat
/// at 0: value and finite-difference derivative magnitudes at zeta <= 1e-4.
FlatnessSample flatness_check(const VerticalProfile& v, double zeta, int order);

}  // namespace attractorlab

#endif
