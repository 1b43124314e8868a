#pragma once

#include <Eigen/Sparse>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "axibilayer/functionals.hpp"
#include "axibilayer/mesh_geometry.hpp"

namespace axibilayer {

/// with_beta: the scheme with the extra junction degree of freedom beta.
/// sideh: the comparison variant without beta and without the
/// orthogonality condition (only meaningful for C1 junctions).
enum class JunctionVariant { with_beta, sideh };

enum class ConservationMode { free, area, volume, area_volume };

inline bool conserves_area(ConservationMode m) {
  return m == ConservationMode::area || m == ConservationMode::area_volume;
}
inline bool conserves_volume(ConservationMode m) {
  return m == ConservationMode::volume || m == ConservationMode::area_volume;
}

struct SchemeState {
  TwoPhaseMesh X;
  std::array<std::vector<double>, 2> kappa;  // nodal, pole value 0
  std::array<std::vector<Vec2>, 2> Y;        // nodal, pole e1 value 0
  double beta = 0.0;
  double t = 0.0;
};

/// Unknown numbering. Ordering is node-interleaved (X, kappa, Y per node,
/// walking phase 1 from the top pole to the junction and then phase 2 to the
/// bottom pole) so that the matrix is banded.
struct DofLayout {
  // -1 marks an eliminated component.
  std::array<std::vector<std::array<int, 2>>, 2> x;
  std::array<std::vector<int>, 2> kappa;
  std::array<std::vector<std::array<int, 2>>, 2> y;
  // Known part of Y at each node: Y = unknown + offset. Nonzero only at the
  // junction (the Dirichlet value for C0, minus the prescribed jump for the
  // lower phase for C1).
  std::array<std::vector<Vec2>, 2> y_offset;
  int beta = -1;  // its row is the orthogonality condition
  int size = 0;
  int n_x = 0, n_kappa = 0, n_y = 0;
};

DofLayout make_layout(int J1, int J2, const PhysicalParams& params,
                      JunctionVariant variant);

struct AssembledSystem {
  DofLayout layout;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  // Right-hand sides multiplying lambda_{A,1}, lambda_{A,2}, lambda_V.
  std::array<std::optional<Eigen::VectorXd>, 2> area_column;
  std::optional<Eigen::VectorXd> volume_column;
};

AssembledSystem assemble(const SchemeState& state, const PhysicalParams& params,
                         double dt, ConservationMode mode,
                         JunctionVariant variant = JunctionVariant::with_beta);

/// The comparison scheme without beta; requires a C1 junction.
AssembledSystem assemble_sideh_variant(
    const SchemeState& state, const PhysicalParams& params, double dt,
    ConservationMode mode = ConservationMode::free);

/// Nodal values of one solution vector.
struct StepIncrement {
  std::array<std::vector<Vec2>, 2> dX;
  std::array<std::vector<double>, 2> kappa;
  std::array<std::vector<Vec2>, 2> Y;
  double beta = 0.0;
};

StepIncrement unpack(const DofLayout& layout, const Eigen::VectorXd& x);
/// Only the position increment, for directions without offsets.
std::array<std::vector<Vec2>, 2> unpack_positions(const DofLayout& layout,
                                                  const Eigen::VectorXd& x);

struct AssumptionCheck {
  std::string name;
  bool passed = true;
  int phase = -1;  // 0-based, -1 when not node specific
  int node = -1;
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;

  bool ok() const;
  const AssumptionCheck* first_failure() const;
  /// Throws AssumptionViolated for the first failed check.
  void require() const;
};

/// Assumption names: "junction_match", "pole_on_axis", "positivity",
/// "distinct_nodes", "distinct_next_nearest", and for C1 additionally
/// "c1_distinct_neighbours" and "c1_normal_span".
AssumptionReport validate_assumptions(const TwoPhaseMesh& mesh, bool c1);

}  // namespace axibilayer
