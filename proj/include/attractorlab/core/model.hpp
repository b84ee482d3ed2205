#ifndef ATTRACTORLAB_CORE_MODEL_HPP
#define ATTRACTORLAB_CORE_MODEL_HPP

#include <optional>
#include <string>
#include <variant>

#include "attractorlab/errors.hpp"
#include "attractorlab/numeric/tower_value.hpp"

namespace attractorlab {

/// Hyperbolic saddle with eigenvalues -mu, lambda and monodromy coefficient c.
/// The exact-model transversal maps drop the o(1) factors of the asymptotic
/// normal forms:  image = c * x^nu,  transit time = (1/lambda) * ln(1/x),
/// with nu = mu/lambda the characteristic number.
struct SaddleParams {
    double mu = 1.0;
    double lambda = 1.0;
    double c = 1.0;

    SaddleParams() = default;
    SaddleParams(double mu_, double lambda_, double c_ = 1.0);

    double nu() const { return mu / lambda; }
};

/// Contracting saddle-node of order two: negative eigenvalue -b, smooth
/// orbital normal-form parameter a.  Exact model:
///   image = x^{-a} * e^{-1/x},  transit time = 1/(b*x).
struct SaddleNodeParams {
    double a = 1.0;
    double b = 1.0;

    SaddleNodeParams() = default;
    SaddleNodeParams(double a_, double b_);
};

struct LoopModel {
    SaddleParams saddle;
    double c1 = 1.0;  // saddle transit-time coefficient, t = c1 * zeta
    double K = 1.0;   // transit time across U_B (the global return leg)
};

struct BiangleModel {
    SaddleParams A;  // saddle crossed first (leg inside U_A)
    SaddleParams B;  // saddle crossed second (leg inside U_B)
};

struct ModifiedBowenModel {
    SaddleNodeParams sn;   // saddle-node A, leg inside U_A
    SaddleParams saddle;   // saddle B, leg inside U_B
};

/// One of the three return systems, with its derived constants.
class PolycycleModel {
  public:
    enum class Kind { Loop, Biangle, ModifiedBowen };

    static PolycycleModel loop(SaddleParams p, double c1 = 1.0, double K = 1.0);
    static PolycycleModel biangle(SaddleParams A, SaddleParams B);
    static PolycycleModel modified_bowen(SaddleNodeParams sn, SaddleParams s);

    Kind kind() const;
    const LoopModel& as_loop() const;
    const BiangleModel& as_biangle() const;
    const ModifiedBowenModel& as_mbe() const;

    std::string kind_name() const;

  private:
    explicit PolycycleModel(std::variant<LoopModel, BiangleModel, ModifiedBowenModel> m)
        : model_(std::move(m)) {}
    std::variant<LoopModel, BiangleModel, ModifiedBowenModel> model_;
};

/// Constants derived from the model parameters, validated against the model
/// invariants (nu > 1 for a loop, Lambda > 1 and Lambda0 in (1, Lambda) for a
/// biangle).
struct DerivedConstants {
    std::optional<double> nu;             // loop: characteristic number
    std::optional<double> Lambda;         // biangle: product of characteristic numbers
    std::optional<double> Lambda0;        // biangle: (Lambda + muA/lamB) / (1 + muA/lamB)
    std::optional<double> recurrence_C;   // MBE: ln(b*mu / (b + lambda))
    std::optional<double> c_time;         // MBE: 1/b + 1/lambda
};

DerivedConstants derived_constants(const PolycycleModel& m);

struct MapResult {
    double image = 0.0;
    double time = 0.0;
    bool left_chart = false;  // image >= 1: the asymptotic model left its validity chart
};

/// Saddle transversal map on (0,1): image = c*x^nu, time = ln(1/x)/lambda.
MapResult saddle_local(double x, const SaddleParams& p);

/// Saddle-node transversal map on (0,1): image = x^{-a} e^{-1/x}, time = 1/(b*x).
MapResult saddle_node_local(double x, const SaddleNodeParams& p);

struct StepResult {
    double next = 0.0;       // image on the starting transversal
    double turn_time = 0.0;  // total time of the turn
    double time_in_B = 0.0;  // time of the U_B sub-leg
};

/// One full turn of the Poincare map of the given model, from Sigma_A back to
/// Sigma_A. Throws chart_exit_error if an intermediate coordinate reaches 1
/// and contraction_error if next >= x.
StepResult poincare_step(double x, const PolycycleModel& m);

/// Loop return map in the coordinate zeta = -ln(xi): Delta(zeta) = nu*zeta - ln c.
double loop_zeta_step(double zeta, const SaddleParams& p);

/// Asymptotic-tier recurrence of the MBE in double-logarithmic time:
/// tau_{n+1} = e^{tau_n} + C with C = ln(b*mu/(b+lambda)).
TowerValue mbe_tau_step(const TowerValue& tau, const PolycycleModel& m);

struct OracleResult {
    double exit = 0.0;  // coordinate on the outgoing transversal x = 1
    double time = 0.0;  // transit time
};

/// Independent check of saddle_local: fixed-step RK4 integration of the
/// linear saddle xdot = lambda*x, ydot = -mu*y from (x0, 1) to the section
/// x = 1 (monodromy coefficient c = 1). Pre: step <= 1e-4.
OracleResult saddle_oracle(double x0, const SaddleParams& p, double step);

}  // namespace attractorlab

#endif
