#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "axibilayer/mesh_geometry.hpp"

namespace axibilayer {

enum class JunctionType { c0, c1 };

struct PhysicalParams {
  std::array<double, 2> alpha{1.0, 1.0};   // mean bending rigidities, > 0
  std::array<double, 2> alphaG{0.0, 0.0};  // Gaussian bending rigidities
  std::array<double, 2> kbar{0.0, 0.0};    // spontaneous curvatures
  double varsigma = 0.0;                   // line tension, >= 0
  JunctionType junction = JunctionType::c1;

  bool c1() const { return junction == JunctionType::c1; }

  /// Throws InvalidValue for a hard violation. Returns warnings (currently
  /// only the energy lower-bound condition) as human-readable strings.
  std::vector<std::string> validate() const;
};

struct Diagnostics {
  double t = 0.0;
  double energy = 0.0;
  std::array<double, 2> area{};
  double volume = 0.0;
  double reduced_volume = 0.0;
  std::array<double, 2> element_ratio{};
  Vec2 junction = Vec2::Zero();
  std::array<double, 2> lambdaA{};
  double lambdaV = 0.0;
  double beta = 0.0;
  int newton_iters = 0;
};

struct JunctionConormal {
  std::array<Vec2, 2> m{Vec2::Zero(), Vec2::Zero()};
};

/// A_i = 2 pi int r |X_rho|, exact for piecewise-linear r.
double surface_area(const PhaseCurve& curve);
/// V = -pi sum_i int r^2 [X_rho]^perp . e1, exact.
double enclosed_volume(const TwoPhaseMesh& mesh);
double enclosed_volume(const PhaseCurve& curve);

/// Directional derivatives, exact for the polygonal functionals. The
/// direction holds one vector per node of the curve.
double first_variation_area(const PhaseCurve& curve,
                            std::span<const Vec2> direction);
double first_variation_volume(const PhaseCurve& curve,
                              std::span<const Vec2> direction);
double first_variation_volume(const TwoPhaseMesh& mesh,
                              const std::array<std::vector<Vec2>, 2>& direction);

/// Inputs of one completed time step used for post-processing.
struct StepData {
  const TwoPhaseMesh* old_mesh = nullptr;  // X^m
  const TwoPhaseMesh* new_mesh = nullptr;  // X^{m+1}
  std::array<std::span<const double>, 2> kappa;  // kappa^{m+1}
  double beta = 0.0;                             // beta^{m+1}, C1 only
};

/// Junction conormals recovered from the curvature side constraint tested
/// with the junction basis function of each phase.
JunctionConormal junction_conormal(const StepData& step, bool c1);

/// Fully discrete energy: bending part at (X^m, kappa^{m+1}), Gaussian part
/// through the conormals, line part at X^{m+1}.
double discrete_energy(const StepData& step, const JunctionConormal& m,
                       const PhysicalParams& params);

/// Only the bending part of the energy for nodal curvatures on a mesh.
double bending_energy(const TwoPhaseMesh& mesh,
                      const std::array<std::span<const double>, 2>& kappa,
                      const PhysicalParams& params);

double reduced_volume(double area_total, double volume);
/// Longest over shortest element of one curve.
double element_ratio(const PhaseCurve& curve);

}  // namespace axibilayer
