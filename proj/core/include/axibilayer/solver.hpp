#pragma once

#include <Eigen/Core>
#include <Eigen/Sparse>
#include <array>
#include <optional>
#include <vector>

#include "axibilayer/functionals.hpp"
#include "axibilayer/scheme_assembly.hpp"

namespace axibilayer {

/// LU factorisation of a square sparse matrix in LAPACK band storage.
/// Bandwidths are read off the sparsity pattern.
class BandedLU {
 public:
  explicit BandedLU(const Eigen::SparseMatrix<double>& A);

  /// Solves in place for every column of B.
  void solve(Eigen::MatrixXd& B) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  int size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

 private:
  int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
};

struct LinearSolution {
  Eigen::VectorXd base;
  std::array<std::optional<Eigen::VectorXd>, 2> area;  // responses to lambda_A
  std::optional<Eigen::VectorXd> volume;               // response to lambda_V
  double residual = 0.0;  // max over columns of ||A x - b|| / ||b||
};

/// Direct solve for the base right-hand side and every present response
/// column. Throws SingularMatrix when a pivot falls below 1e-14 times the
/// largest matrix entry.
LinearSolution linear_solve(const AssembledSystem& system);

struct MultiplierState {
  std::array<double, 2> lambdaA{0.0, 0.0};
  double lambdaV = 0.0;
};

struct ConservationTargets {
  std::array<double, 2> area{0.0, 0.0};
  double volume = 0.0;
};

ConservationTargets measure_targets(const TwoPhaseMesh& mesh);

struct NewtonOptions {
  double tol = 1e-10;  // on the relative constraint residual
  int max_iters = 20;
};

struct StepSolution {
  StepIncrement increment;
  MultiplierState multipliers;
  int newton_iters = 0;
  // Relative residuals of A1, A2, V (zero for inactive constraints).
  std::array<double, 3> constraint_residuals{0.0, 0.0, 0.0};
  double linear_residual = 0.0;
};

/// One step of the (possibly conserving) scheme. In free mode this is a
/// single linear solve. Otherwise the position is affine in the multipliers
/// and Newton's method is run on the active constraints, warm-started from
/// `guess`. Throws NewtonDiverged or SingularJacobian.
StepSolution newton_conserve(const SchemeState& state,
                             const PhysicalParams& params, double dt,
                             ConservationMode mode,
                             const ConservationTargets& targets,
                             const MultiplierState& guess = {},
                             const NewtonOptions& options = {},
                             JunctionVariant variant = JunctionVariant::with_beta);

/// Solution of the linear system with the multipliers held fixed.
StepSolution solve_with_multipliers(const SchemeState& state,
                                    const PhysicalParams& params, double dt,
                                    const MultiplierState& lambda,
                                    JunctionVariant variant = JunctionVariant::with_beta);

}  // namespace axibilayer
