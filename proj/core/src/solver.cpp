#include "axibilayer/solver.hpp"

#include <lapacke.h>

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "axibilayer/errors.hpp"

namespace axibilayer {

BandedLU::BandedLU(const Eigen::SparseMatrix<double>& A) : n_(A.rows()) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matrix is not square");
  double scale = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
      kl_ = std::max<int>(kl_, it.row() - it.col());
      ku_ = std::max<int>(ku_, it.col() - it.row());
      scale = std::max(scale, std::abs(it.value()));
    }
  ldab_ = 2 * kl_ + ku_ + 1;
  ab_.assign(static_cast<std::size_t>(ldab_) * n_, 0.0);
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
      const int i = it.row(), j = it.col();
      ab_[static_cast<std::size_t>(j) * ldab_ + kl_ + ku_ + i - j] += it.value();
    }
  ipiv_.assign(n_, 0);
  if (n_ == 0) return;
  const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_,
                                         ab_.data(), ldab_, ipiv_.data());
  if (info < 0) throw std::logic_error("dgbtrf: invalid argument");
  const double floor = 1e-14 * scale;
  for (int j = 0; j < n_; ++j) {
    const double u = ab_[static_cast<std::size_t>(j) * ldab_ + kl_ + ku_];
    if (!(std::abs(u) > floor))
      throw SingularMatrix("singular system: pivot " + std::to_string(j) +
                           " is " + std::to_string(u) + " (matrix scale " +
                           std::to_string(scale) + ")");
  }
}

void BandedLU::solve(Eigen::MatrixXd& B) const {
  if (B.rows() != n_) throw std::invalid_argument("right-hand side size mismatch");
  if (n_ == 0 || B.cols() == 0) return;
  const lapack_int info =
      LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, B.cols(), ab_.data(),
                     ldab_, ipiv_.data(), B.data(), B.rows());
  if (info != 0) throw std::logic_error("dgbtrs failed");
}

Eigen::VectorXd BandedLU::solve(const Eigen::VectorXd& b) const {
  Eigen::MatrixXd B = b;
  solve(B);
  return B.col(0);
}

LinearSolution linear_solve(const AssembledSystem& sys) {
  std::vector<const Eigen::VectorXd*> cols{&sys.rhs};
  for (const auto& c : sys.area_column)
    if (c) cols.push_back(&*c);
  if (sys.volume_column) cols.push_back(&*sys.volume_column);

  const int n = sys.matrix.rows();
  Eigen::MatrixXd B(n, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) B.col(k) = *cols[k];

  BandedLU lu(sys.matrix);
  Eigen::MatrixXd Xs = B;
  lu.solve(Xs);

  LinearSolution out;
  const Eigen::MatrixXd R = sys.matrix * Xs - B;
  for (Eigen::Index k = 0; k < B.cols(); ++k) {
    const double bn = B.col(k).norm();
    const double rn = R.col(k).norm();
    out.residual = std::max(out.residual, bn > 0 ? rn / bn : rn);
  }
  int k = 0;
  out.base = Xs.col(k++);
  for (int l = 0; l < 2; ++l)
    if (sys.area_column[l]) out.area[l] = Xs.col(k++);
  if (sys.volume_column) out.volume = Xs.col(k++);
  return out;
}

ConservationTargets measure_targets(const TwoPhaseMesh& mesh) {
  return {{surface_area(mesh[0]), surface_area(mesh[1])}, enclosed_volume(mesh)};
}

namespace {

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

TwoPhaseMesh displaced(const TwoPhaseMesh& X,
                       const std::array<std::vector<Vec2>, 2>& dX) {
  TwoPhaseMesh out = X;
  for (int i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < dX[i].size(); ++j) out[i].nodes[j] += dX[i][j];
  return out;
}

}  // namespace

StepSolution newton_conserve(const SchemeState& state,
                             const PhysicalParams& params, double dt,
                             ConservationMode mode,
                             const ConservationTargets& targets,
                             const MultiplierState& guess,
                             const NewtonOptions& options,
                             JunctionVariant variant) {
  const AssembledSystem sys = assemble(state, params, dt, mode, variant);
  const LinearSolution lin = linear_solve(sys);
  const DofLayout& L = sys.layout;

  StepSolution out;
  out.linear_residual = lin.residual;
  if (mode == ConservationMode::free) {
    out.increment = unpack(L, lin.base);
    return out;
  }

  // Active constraints: indices into (A1, A2, V).
  std::vector<int> active;
  std::vector<const Eigen::VectorXd*> response;
  if (conserves_area(mode)) {
    active.insert(active.end(), {0, 1});
    response.push_back(&*lin.area[0]);
    response.push_back(&*lin.area[1]);
  }
  if (conserves_volume(mode)) {
    active.push_back(2);
    response.push_back(&*lin.volume);
  }
  const int na = active.size();
  std::array<double, 3> target{targets.area[0], targets.area[1], targets.volume};
  std::array<double, 3> lam_all{guess.lambdaA[0], guess.lambdaA[1], guess.lambdaV};
  Eigen::VectorXd lam(na);
  for (int k = 0; k < na; ++k) lam[k] = lam_all[active[k]];

  const auto base_dX = unpack_positions(L, lin.base);
  std::vector<std::array<std::vector<Vec2>, 2>> dir;
  for (const auto* r : response) dir.push_back(unpack_positions(L, *r));

  auto position = [&](const Eigen::VectorXd& l) {
    auto dX = base_dX;
    for (int k = 0; k < na; ++k)
      for (int i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < dX[i].size(); ++j) dX[i][j] += l[k] * dir[k][i][j];
    return displaced(state.X, dX);
  };
  auto constraint = [&](const TwoPhaseMesh& X, int which) {
    return which < 2 ? surface_area(X[which]) : enclosed_volume(X);
  };

  double prev_norm = std::numeric_limits<double>::infinity();
  int growth = 0;
  int iters = 0;
  Eigen::VectorXd rel(na);
  for (;;) {
    const TwoPhaseMesh X = position(lam);
    Eigen::VectorXd res(na);
    for (int k = 0; k < na; ++k) {
      res[k] = constraint(X, active[k]) - target[active[k]];
      rel[k] = res[k] / std::abs(target[active[k]]);
    }
    const double norm = rel.cwiseAbs().maxCoeff();
    if (!std::isfinite(norm))
      throw NewtonDiverged("constraint residual is not finite");
    if (norm <= options.tol) break;
    if (iters >= options.max_iters)
      throw NewtonDiverged("no convergence after " + std::to_string(iters) +
                           " iterations (residual " + fmt_sci(norm) + ")");
    growth = norm > prev_norm ? growth + 1 : 0;
    if (growth >= 3)
      throw NewtonDiverged("constraint residual grew for 3 iterations");
    prev_norm = norm;

    Eigen::MatrixXd jac(na, na);
    for (int k = 0; k < na; ++k)
      for (int l = 0; l < na; ++l) {
        const int which = active[k];
        jac(k, l) = which < 2 ? first_variation_area(X[which], dir[l][which])
                              : first_variation_volume(X, dir[l]);
      }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    const double jscale = jac.cwiseAbs().maxCoeff();
    lu.setThreshold(1e-12);
    if (!(jscale > 0.0) || !lu.isInvertible())
      throw SingularJacobian("constraint Jacobian is singular");
    lam -= lu.solve(res);
    ++iters;
  }

  Eigen::VectorXd x = lin.base;
  for (int k = 0; k < na; ++k) x += lam[k] * *response[k];
  out.increment = unpack(L, x);
  for (int k = 0; k < na; ++k) {
    lam_all[active[k]] = lam[k];
    out.constraint_residuals[active[k]] = rel[k];
  }
  out.multipliers = {{lam_all[0], lam_all[1]}, lam_all[2]};
  out.newton_iters = iters;
  return out;
}

StepSolution solve_with_multipliers(const SchemeState& state,
                                    const PhysicalParams& params, double dt,
                                    const MultiplierState& lambda,
                                    JunctionVariant variant) {
  const AssembledSystem sys =
      assemble(state, params, dt, ConservationMode::area_volume, variant);
  Eigen::VectorXd rhs = sys.rhs + lambda.lambdaA[0] * *sys.area_column[0] +
                        lambda.lambdaA[1] * *sys.area_column[1] +
                        lambda.lambdaV * *sys.volume_column;
  BandedLU lu(sys.matrix);
  const Eigen::VectorXd x = lu.solve(rhs);
  StepSolution out;
  out.increment = unpack(sys.layout, x);
  out.multipliers = lambda;
  const double bn = rhs.norm();
  out.linear_residual = (sys.matrix * x - rhs).norm() / (bn > 0 ? bn : 1.0);
  return out;
}

}  // namespace axibilayer
