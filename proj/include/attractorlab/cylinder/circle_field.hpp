#ifndef ATTRACTORLAB_CYLINDER_CIRCLE_FIELD_HPP
#define ATTRACTORLAB_CYLINDER_CIRCLE_FIELD_HPP

#include <string>
#include <vector>

namespace attractorlab {

/// wrap to [0, 2pi)
double wrap_2pi(double angle);
/// wrap to (-pi, pi]
double wrap_pi(double angle);
/// distance on the circle
double circle_dist(double a, double b);

/// One-parameter family of north-south circle fields w_alpha:
///  - every field has its source at theta_north, inside the repelling arc N
///    of half-width delta_N;
///  - the sink of w_alpha sits at theta = alpha, with alpha ranging over the
///    closed arc I = [arc_lo, arc_hi] disjoint from closure(N);
///  - outside N the field is the linear pull -2*kappa*(p - p_alpha) in the
///    unrolled coordinate p cut at the source, so the sinks are uniformly
///    attracting with slope -2*kappa < -kappa;
///  - inside N the linear pull is blended with a fixed source profile, which
///    suppresses the cut discontinuity on a whole neighbourhood of the cut.
class CircleFieldFamily {
  public:
    CircleFieldFamily(double theta_north, double kappa, double delta_N, double arc_lo,
                      double arc_hi, double blend_width);

    static CircleFieldFamily default_geometry();

    double theta_north() const { return theta_north_; }
    double kappa() const { return kappa_; }
    double delta_N() const { return delta_N_; }
    double arc_lo() const { return arc_lo_; }
    double arc_hi() const { return arc_hi_; }

    bool in_northern_domain(double theta) const;
    bool alpha_in_arc(double alpha) const;

    /// w_alpha(theta); throws std::domain_error when alpha is outside arc_I.
    double eval(double alpha, double theta) const;

  private:
    double theta_north_;
    double kappa_;
    double delta_N_;
    double arc_lo_;
    double arc_hi_;
    double blend_width_;
};

struct FamilyViolation {
    std::string property;  // which of the north-south properties failed
    double alpha = 0.0;
    double theta = 0.0;
    double value = 0.0;
};

struct FamilyReport {
    bool pass = true;
    std::vector<FamilyViolation> violations;
};

/// Grid check of the north-south properties: finite-difference slope < -kappa
/// everywhere outside N for 20 sampled alphas, exactly two zeros, positive
/// source slope.  kappa_override lets the caller probe a stricter constant.
FamilyReport family_validate(const CircleFieldFamily& f, int grid, double kappa_override = 0.0);

}  // namespace attractorlab

#endif
