#pragma once

#include <functional>
#include <string>
#include <vector>

#include "axibilayer/functionals.hpp"
#include "axibilayer/scheme_assembly.hpp"
#include "axibilayer/solver.hpp"

namespace axibilayer {

struct FlowConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  ConservationMode mode = ConservationMode::free;
  JunctionVariant variant = JunctionVariant::with_beta;
  // Stop once max nodal speed < stationarity_tol * initial diameter.
  // Zero disables the test.
  double stationarity_tol = 1e-6;
  long max_steps = 0;        // 0: no limit
  long record_every = 1;     // keep every n-th Diagnostics row in RunResult
  double pinch_off_fraction = 1e-4;
  NewtonOptions newton;

  void validate() const;
};

/// Radius of the sphere solving R' = -(kbar/R)(2/R + kbar), R(0) = 1, from
/// the implicit relation for z = R + 2/kbar.
class OdeReference {
 public:
  explicit OdeReference(double kbar);
  double operator()(double t) const;
  double kbar() const { return kbar_; }
  /// Right-hand side of the ODE, for independent integrators.
  double rate(double R) const;

 private:
  double residual(double R, double t) const;
  double kbar_;
  double z0_;
};

double ode_reference(double kbar, double t);

SchemeState make_initial_data(const TwoPhaseMesh& mesh,
                              const PhysicalParams& params);

enum class Termination { reached_t_end, stationary, max_steps, degenerated };
const char* to_string(Termination t);

struct StepEvent {
  long step = 0;                      // 0 for the initial state
  const SchemeState* state = nullptr;  // state after the step
  const SchemeState* previous = nullptr;  // null for step 0
  const Diagnostics* diagnostics = nullptr;
  double max_speed = 0.0;
};
using StepObserver = std::function<void(const StepEvent&)>;

struct RunResult {
  SchemeState final_state;
  std::vector<Diagnostics> diagnostics;
  Termination termination = Termination::reached_t_end;
  std::string message;
  long steps = 0;
  ConservationTargets targets;
};

/// Evolves the initial mesh with the configured scheme. Degeneration
/// (pinch-off) ends the run early with termination = degenerated and the
/// partial results kept; assumption violations and solver failures throw.
RunResult run(const FlowConfig& config, const PhysicalParams& params,
              const TwoPhaseMesh& initial, const StepObserver& observer = {});
RunResult run(const FlowConfig& config, const PhysicalParams& params,
              SchemeState initial_state, const StepObserver& observer = {});

/// Diagnostics of a state reached by a step from `previous`
/// (pass previous = current for the initial state).
Diagnostics diagnose(const SchemeState& previous, const SchemeState& current,
                     const PhysicalParams& params, const MultiplierState& lambda,
                     int newton_iters);

// ---- test shapes ----------------------------------------------------------

enum class ShapeKind { sphere, perturbed_sphere, spheroid, quarter_pair, cylinder };

struct ShapeSpec {
  ShapeKind kind = ShapeKind::sphere;
  int J1 = 32, J2 = 32;
  double radius = 1.0;       // sphere, quarter_pair, cylinder
  double area_ratio = 0.5;   // A1 / (A1 + A2) for sphere and spheroid
  double v_r = 0.9;          // spheroid reduced volume
  double total_area = 4 * 3.14159265358979323846;  // spheroid
  double height = 2.0;       // cylinder
};

TwoPhaseMesh make_test_shape(const ShapeSpec& spec);

/// Unit circle nodes with the 0.1 cos perturbation of the parameterisation.
TwoPhaseMesh perturbed_sphere(int J1, int J2);
/// Sphere of radius R split at the height giving the phase area ratio
/// A1 / (A1 + A2) = area_ratio; nodes uniform in polar angle per phase.
TwoPhaseMesh split_sphere(int J1, int J2, double R, double area_ratio);
/// Two quarter circles of radius R meeting at the equator.
TwoPhaseMesh quarter_pair(int J1, int J2, double R = 1.0);
/// Closed cylinder with flat caps, junction at half height.
TwoPhaseMesh capped_cylinder(int J1, int J2, double R, double H);
/// Prolate spheroid with the given reduced volume, total area and phase
/// area ratio. Throws InfeasibleShape for v_r outside (0, 1].
TwoPhaseMesh spheroid(int J1, int J2, double v_r, double area_ratio,
                      double total_area);

}  // namespace axibilayer
