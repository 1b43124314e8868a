#pragma once

#include <array>
#include <span>
#include <vector>

#include "axibilayer/evolution.hpp"

namespace axibilayer {

/// Largest | |X| - R(t) | over the given states, phases and nodes.
double linf_radius_error(std::span<const SchemeState> trajectory,
                         const OdeReference& ode);

/// Streaming form of linf_radius_error for use inside a run observer.
class RadiusErrorTracker {
 public:
  explicit RadiusErrorTracker(double kbar) : ode_(kbar) {}
  void observe(const TwoPhaseMesh& mesh, double t);
  double value() const { return max_; }

 private:
  OdeReference ode_;
  double max_ = 0.0;
};

/// Counts relative energy increases E^{m+1} > E^m + tol |E^m|, starting
/// from the second recorded value after `skip` values.
class EnergyMonitor {
 public:
  explicit EnergyMonitor(double tol = 1e-10, long skip = 1)
      : tol_(tol), skip_(skip) {}
  void observe(double energy);
  long rises() const { return rises_; }
  double max_relative_rise() const { return max_rise_; }
  long first_rise() const { return first_; }  // index of the value, -1 if none

 private:
  double tol_;
  long skip_;
  long seen_ = 0;
  double prev_ = 0.0;
  long rises_ = 0;
  long first_ = -1;
  double max_rise_ = 0.0;
};

double eoc(double e_prev, double e, double h_prev, double h);

struct ConvergenceRow {
  int J1 = 0, J2 = 0;
  double h0 = 0.0;
  double dt = 0.0;
  long steps = 0;
  double error = 0.0;
  double error_eoc = 0.0;  // NaN in the first row
  double drift = 0.0;      // |X^M(junction) - R(T) e1|
  double drift_eoc = 0.0;
  std::array<double, 2> element_ratio{};
  long energy_rises = 0;
  double max_energy_rise = 0.0;
};

struct LadderOptions {
  double kbar = -1.0;
  double t_end = 1.0;
  double dt_factor = 1e-3;  // dt = dt_factor * h0^2
  JunctionType junction = JunctionType::c1;
};

/// Free flow of the perturbed sphere against the exact shrinking/expanding
/// sphere with identical phases.
ConvergenceRow convergence_row(int J1, int J2, const LadderOptions& options = {});
std::vector<ConvergenceRow> convergence_ladder(
    std::span<const std::array<int, 2>> resolutions,
    const LadderOptions& options = {});

struct GaussBonnetResult {
  double area_integral = 0.0;  // sum of discrete int K dA over both phases
  double boundary = 0.0;       // 2 pi sum_i mu_i . e1
  double total = 0.0;
  double defect = 0.0;         // total - 4 pi
};

/// Outward conormals of the two phases at the junction from the polygon.
std::array<Vec2, 2> geometric_conormals(const TwoPhaseMesh& mesh);

GaussBonnetResult gauss_bonnet_check(
    const TwoPhaseMesh& mesh, const std::array<std::span<const double>, 2>& kappa,
    const std::array<Vec2, 2>& conormals);
/// Curvature from the positions and polygon conormals.
GaussBonnetResult gauss_bonnet_check(const TwoPhaseMesh& mesh);

struct JunctionDiagnostics {
  std::array<double, 2> K{};       // discrete mean curvature at the junction
  double K_jump = 0.0;             // K[0] - K[1]
  std::array<double, 2> dK_ds{};   // one-sided arclength derivatives
  std::array<double, 2> k_normal{};    // -(nu_i . e1) / r
  std::array<double, 2> k_conormal{};  // -(mu_i . e1) / r
  // C0 conditions
  std::array<double, 2> c0_curvature{};
  Vec2 c0_force = Vec2::Zero();
  // C1 conditions
  double c1_curvature = 0.0;
  double c1_derivative = 0.0;
  double c1_tangential = 0.0;
};

JunctionDiagnostics junction_residuals(const SchemeState& state,
                                       const PhysicalParams& params,
                                       const MultiplierState& lambda = {});

struct DriftSeries {
  JunctionVariant variant = JunctionVariant::with_beta;
  std::vector<double> t, energy, displacement;
  double final_displacement = 0.0;
  long energy_rises = 0;       // relative tolerance 1e-10
  double max_energy_rise = 0.0;
  long large_rises = 0;        // relative rises above 1e-6
};

struct DriftComparison {
  int J1 = 0, J2 = 0;
  double dt = 0.0, t_end = 0.0;
  DriftSeries with_beta, sideh;
};

/// Free C1 flow from two quarter circles (a steady state of the continuous
/// problem) with both junction treatments.
DriftComparison compare_junction_drift(int J1, int J2, double dt, double t_end,
                                       long record_every = 1);

}  // namespace axibilayer
