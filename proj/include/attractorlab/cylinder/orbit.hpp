#ifndef ATTRACTORLAB_CYLINDER_ORBIT_HPP
#define ATTRACTORLAB_CYLINDER_ORBIT_HPP

#include <vector>

#include "attractorlab/cylinder/circle_field.hpp"
#include "attractorlab/cylinder/descent.hpp"

namespace attractorlab {

/// Accepted integration steps of one orbit in the geometric parametrization:
/// theta as a function of depth xi, with the derivative stored for dense
/// (cubic Hermite) evaluation between samples.  Time stamps come from
/// VerticalProfile::time_at, never from integrating rho.
class OrbitSample {
  public:
    OrbitSample(double theta0, double xi0, double tol)
        : theta0_(theta0), xi0_(xi0), tol_(tol) {}

    double theta0() const { return theta0_; }
    double xi0() const { return xi0_; }
    double xi_end() const { return xi_.back(); }
    double tol() const { return tol_; }

    const std::vector<double>& xi() const { return xi_; }
    const std::vector<double>& theta() const { return theta_; }
    const std::vector<double>& dtheta() const { return dtheta_; }

    /// Dense evaluation at any depth inside the integrated range.
    double theta_at(double xi) const;

    void push(double xi, double theta, double dtheta);

  private:
    double theta0_;
    double xi0_;
    double tol_;
    std::vector<double> xi_, theta_, dtheta_;
};

/// Integrate d(theta)/d(xi) = 2 xi w_{h(-xi^2)}(theta) with an adaptive
/// embedded Dormand-Prince 5(4) pair, splitting steps at the schedule's
/// breakpoints.  The equation is rho-independent: trajectories of the full
/// field and of the field with rho replaced by 1 coincide in (xi, theta).
OrbitSample integrate_orbit(double theta0, double xi0, double xi_end, const CircleFieldFamily& f,
                            const DescentSchedule& s, const VerticalProfile& v, double tol);

/// Reference route for the rho-independence check: integrate in the time
/// parametrization with rho == 1 (so eta(t) = eta0 - t) and report theta at
/// the requested depths.
std::vector<double> integrate_orbit_unit_rho(double theta0, double xi0,
                                             const std::vector<double>& xi_samples,
                                             const CircleFieldFamily& f,
                                             const DescentSchedule& s, double tol);

}  // namespace attractorlab

#endif
