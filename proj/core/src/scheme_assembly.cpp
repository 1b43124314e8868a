#include "axibilayer/scheme_assembly.hpp"

#include <cmath>
#include <numbers>

#include "axibilayer/errors.hpp"

namespace axibilayer {

using std::numbers::pi;

namespace {

constexpr double kRelTol = 1e-12;

}  // namespace

DofLayout make_layout(int J1, int J2, const PhysicalParams& params,
                      JunctionVariant variant) {
  DofLayout L;
  const std::array<int, 2> J{J1, J2};
  const bool c1 = params.c1();
  for (int i = 0; i < 2; ++i) {
    L.x[i].assign(J[i] + 1, {-1, -1});
    L.kappa[i].assign(J[i] + 1, -1);
    L.y[i].assign(J[i] + 1, {-1, -1});
    L.y_offset[i].assign(J[i] + 1, Vec2::Zero());
  }
  int next = 0;
  auto node = [&](int i, int j) {
    const bool pole = (i == 0 && j == 0) || (i == 1 && j == J2);
    L.x[i][j] = {pole ? -1 : next++, 0};
    L.x[i][j][1] = next++;
    L.n_x += pole ? 1 : 2;
    if (!pole) {
      L.kappa[i][j] = next++;
      ++L.n_kappa;
    }
    L.y[i][j] = {pole ? -1 : next++, 0};
    L.y[i][j][1] = next++;
    L.n_y += pole ? 1 : 2;
  };
  for (int j = 0; j < J1; ++j) node(0, j);

  // Junction: shared position, one curvature per phase, Y per junction type.
  L.x[0][J1] = {next, next + 1};
  next += 2;
  L.n_x += 2;
  L.x[1][0] = L.x[0][J1];
  L.kappa[0][J1] = next++;
  L.kappa[1][0] = next++;
  L.n_kappa += 2;
  if (c1) {
    L.y[0][J1] = {next, next + 1};
    next += 2;
    L.n_y += 2;
    L.y[1][0] = L.y[0][J1];
    L.y_offset[1][0] =
        Vec2(-2 * pi * (params.alphaG[0] - params.alphaG[1]), 0.0);
    if (variant == JunctionVariant::with_beta) L.beta = next++;
  } else {
    L.y_offset[0][J1] = Vec2(2 * pi * params.alphaG[0], 0.0);
    L.y_offset[1][0] = Vec2(2 * pi * params.alphaG[1], 0.0);
  }

  for (int j = 1; j <= J2; ++j) node(1, j);
  L.size = next;
  return L;
}

namespace {

bool all_finite(const SchemeState& s) {
  for (int i = 0; i < 2; ++i) {
    for (const auto& p : s.X[i].nodes)
      if (!p.allFinite()) return false;
    for (double k : s.kappa[i])
      if (!std::isfinite(k)) return false;
    for (const auto& y : s.Y[i])
      if (!y.allFinite()) return false;
  }
  return std::isfinite(s.beta);
}

class Builder {
 public:
  explicit Builder(int n) : rhs_(Eigen::VectorXd::Zero(n)) {}

  void add(int row, int col, double v) {
    if (row >= 0 && col >= 0 && v != 0.0) triplets_.emplace_back(row, col, v);
  }
  void add_rhs(int row, double v) {
    if (row >= 0) rhs_[row] += v;
  }
  Eigen::SparseMatrix<double> matrix(int n) {
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(triplets_.begin(), triplets_.end());
    return m;
  }
  Eigen::VectorXd& rhs() { return rhs_; }

 private:
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::VectorXd rhs_;
};

}  // namespace

AssembledSystem assemble(const SchemeState& state, const PhysicalParams& params,
                         double dt, ConservationMode mode,
                         JunctionVariant variant) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw NonFiniteInput("time step must be positive and finite");
  if (!all_finite(state)) throw NonFiniteInput("state contains NaN or Inf");
  const bool c1 = params.c1();
  if (variant == JunctionVariant::sideh && !c1)
    throw std::invalid_argument("the variant without beta needs a C1 junction");
  validate_assumptions(state.X, c1).require();

  const TwoPhaseMesh& X = state.X;
  AssembledSystem sys;
  sys.layout = make_layout(X[0].elements(), X[1].elements(), params, variant);
  const DofLayout& L = sys.layout;
  const int n = L.size;
  Builder b(n);
  const bool with_beta = L.beta >= 0;

  std::array<Eigen::VectorXd, 2> area_col{Eigen::VectorXd::Zero(n),
                                          Eigen::VectorXd::Zero(n)};
  Eigen::VectorXd volume_col = Eigen::VectorXd::Zero(n);

  // Spans of the elements touching the junction, for beta.
  std::array<Vec2, 2> span;

  for (int i = 0; i < 2; ++i) {
    const PhaseCurve& c = X[i];
    const int J = c.elements();
    const auto g = analyze(c);
    const auto& kap = state.kappa[i];
    const auto& Y = state.Y[i];
    const auto K = discrete_mean_curvature(c, g.vertices, kap);
    const double alpha = params.alpha[i], kbar = params.kbar[i];
    std::vector<double> w(J + 1), cz(J + 1);
    for (int k = 0; k <= J; ++k) {
      const double dk = K[k] - kbar;
      w[k] = alpha * dk * dk;
      cz[k] = alpha * dk * (g.vertices[k].z_weight - 2.0);
    }
    const int jn = c.junction_node();
    const int ej = i == 0 ? J - 1 : 0;  // element at the junction
    span[i] = c.nodes[ej + 1] - c.nodes[ej];

    // Nodal terms.
    for (int p = 0; p <= J; ++p) {
      const VertexFrame& v = g.vertices[p];
      const double r = c.nodes[p].x();
      for (int d = 0; d < 2; ++d) {
        const int row = L.x[i][p][d];
        if (row < 0) continue;
        for (int d2 = 0; d2 < 2; ++d2)
          b.add(row, L.x[i][p][d2], 2 * pi / dt * r * v.mass * v.Q(d, d2));
        if (d == 0 && !c.is_pole(p))
          b.add_rhs(row, 2 * pi * cz[p] * v.omega.x() / r * v.mass);
        if (d == 0 && p == jn) b.add_rhs(row, -pi * params.varsigma);
      }
      // Curvature equation.
      const int kr = L.kappa[i][p];
      if (kr >= 0) {
        b.add(kr, kr, 2 * pi * alpha * r * v.mass);
        for (int d = 0; d < 2; ++d) b.add(kr, L.y[i][p][d], -v.mass * v.omega[d]);
        b.add_rhs(kr, 2 * pi * alpha * v.mass * (v.omega.x() + r * kbar) +
                          v.mass * v.omega.dot(L.y_offset[i][p]));
      }
      // Curvature part of the side constraint.
      if (kr >= 0)
        for (int d = 0; d < 2; ++d) b.add(L.y[i][p][d], kr, v.mass * v.omega[d]);
    }

    // Element terms.
    for (int e = 0; e < J; ++e) {
      const ElementFrame& f = g.elements[e];
      const int a = e, bn = e + 1;
      const double len = f.length;
      const Vec2& tau = f.tangent;
      const Vec2& nu = f.normal;
      const Vec2 dY = Y[bn] - Y[a];
      const Vec2 dXm = c.nodes[bn] - c.nodes[a];
      const double ra = c.nodes[a].x(), rb = c.nodes[bn].x();
      const double wr = w[a] * ra + w[bn] * rb;
      const Vec2 yperp = kap[a] * perp(Y[a]) + kap[bn] * perp(Y[bn]);
      for (int p : {a, bn}) {
        const double s = p == bn ? 1.0 : -1.0;
        for (int d = 0; d < 2; ++d) {
          // Position equation, tested with phi_p e_d.
          const int row = L.x[i][p][d];
          if (row >= 0) {
            b.add(row, L.y[i][bn][d], -s / len);
            b.add(row, L.y[i][a][d], s / len);
            b.add_rhs(row, s / len * (L.y_offset[i][bn][d] - L.y_offset[i][a][d]));
            double f_rhs = -dY.dot(tau) * s * tau[d] / len;
            f_rhs += -0.5 * pi * ((d == 0 ? w[p] * len : 0.0) + wr * tau[d] * s);
            double t3 = 0.0;
            for (int q : {a, bn})
              t3 += cz[q] * (nu[d] * tau.x() +
                             tau[d] * (g.vertices[q].omega.x() - nu.x()));
            f_rhs += pi * s * t3;
            f_rhs += 0.5 * s * yperp[d];
            if (c1 && with_beta && e == ej)
              f_rhs += 0.5 * state.beta * s * Y[jn][d];
            b.add_rhs(row, f_rhs);

            // Constraint responses at X^m.
            const double dA = pi * (tau[d] * s * (ra + rb) + (d == 0 ? len : 0.0));
            area_col[i][row] -= dA;
            double dV;
            if (d == 1)
              dV = s * (ra * ra + ra * rb + rb * rb);
            else
              dV = dXm.y() * (p == a ? 2 * ra + rb : ra + 2 * rb);
            volume_col[row] -= -pi * dV / 3.0;
          }
          // Side constraint, tested with phi_p e_d.
          const int yrow = L.y[i][p][d];
          if (yrow >= 0) {
            b.add(yrow, L.x[i][bn][d], s / len);
            b.add(yrow, L.x[i][a][d], -s / len);
            b.add_rhs(yrow, -s / len * dXm[d]);
          }
        }
      }
    }

    if (with_beta)
      for (int d = 0; d < 2; ++d)
        b.add(L.y[i][jn][d], L.beta, 0.5 * span[i][d]);
  }

  if (with_beta) {
    // sum_i (chi_i [X^m_i]_rho, Y_i)^h = 0 at the junction.
    const int J1 = X[0].elements();
    for (int d = 0; d < 2; ++d)
      b.add(L.beta, L.y[0][J1][d], 0.5 * (span[0][d] + span[1][d]));
    b.add_rhs(L.beta, -0.5 * (span[0].dot(L.y_offset[0][J1]) +
                              span[1].dot(L.y_offset[1][0])));
  }

  sys.matrix = b.matrix(n);
  sys.rhs = std::move(b.rhs());
  if (conserves_area(mode)) {
    sys.area_column[0] = std::move(area_col[0]);
    sys.area_column[1] = std::move(area_col[1]);
  }
  if (conserves_volume(mode)) sys.volume_column = std::move(volume_col);
  return sys;
}

AssembledSystem assemble_sideh_variant(const SchemeState& state,
                                       const PhysicalParams& params, double dt,
                                       ConservationMode mode) {
  return assemble(state, params, dt, mode, JunctionVariant::sideh);
}

StepIncrement unpack(const DofLayout& L, const Eigen::VectorXd& x) {
  StepIncrement out;
  out.dX = unpack_positions(L, x);
  for (int i = 0; i < 2; ++i) {
    const std::size_t N = L.x[i].size();
    out.kappa[i].assign(N, 0.0);
    out.Y[i].assign(N, Vec2::Zero());
    for (std::size_t j = 0; j < N; ++j) {
      if (L.kappa[i][j] >= 0) out.kappa[i][j] = x[L.kappa[i][j]];
      for (int d = 0; d < 2; ++d)
        out.Y[i][j][d] =
            (L.y[i][j][d] >= 0 ? x[L.y[i][j][d]] : 0.0) + L.y_offset[i][j][d];
    }
  }
  if (L.beta >= 0) out.beta = x[L.beta];
  return out;
}

std::array<std::vector<Vec2>, 2> unpack_positions(const DofLayout& L,
                                                  const Eigen::VectorXd& x) {
  std::array<std::vector<Vec2>, 2> dX;
  for (int i = 0; i < 2; ++i) {
    dX[i].assign(L.x[i].size(), Vec2::Zero());
    for (std::size_t j = 0; j < L.x[i].size(); ++j)
      for (int d = 0; d < 2; ++d)
        if (L.x[i][j][d] >= 0) dX[i][j][d] = x[L.x[i][j][d]];
  }
  return dX;
}

bool AssumptionReport::ok() const { return first_failure() == nullptr; }

const AssumptionCheck* AssumptionReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

void AssumptionReport::require() const {
  if (const auto* f = first_failure())
    throw AssumptionViolated(f->name, f->phase, f->node,
                             "mesh assumption '" + f->name + "' violated" +
                                 (f->phase >= 0
                                      ? " at phase " + std::to_string(f->phase + 1) +
                                            ", node " + std::to_string(f->node)
                                      : std::string()) +
                                 (f->detail.empty() ? "" : ": " + f->detail));
}

AssumptionReport validate_assumptions(const TwoPhaseMesh& mesh, bool c1) {
  AssumptionReport rep;
  const double scale = std::max(mesh.diameter(), 1e-300);
  const double tol = kRelTol * scale;
  auto fail = [&](const std::string& name, int i, int j, std::string detail) {
    rep.checks.push_back({name, false, i, j, std::move(detail)});
  };
  auto pass = [&](const std::string& name) { rep.checks.push_back({name, true, -1, -1, {}}); };
  std::size_t before = rep.checks.size();
  for (int i = 0; i < 2; ++i)
    if (mesh[i].elements() < 3)
      fail("element_count", i, -1, "each phase needs at least 3 elements");
  if (rep.checks.size() == before) pass("element_count");
  if (!rep.ok()) return rep;

  if ((mesh[0].nodes.back() - mesh[1].nodes.front()).norm() > tol)
    fail("junction_match", -1, -1, "last node of phase 1 differs from first node of phase 2");
  else
    pass("junction_match");

  before = rep.checks.size();
  for (int i = 0; i < 2; ++i) {
    const int p = mesh[i].pole_node();
    if (mesh[i].nodes[p].x() != 0.0) fail("pole_on_axis", i, p, "pole node must have r = 0");
  }
  if (rep.checks.size() == before) pass("pole_on_axis");

  before = rep.checks.size();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j <= mesh[i].elements(); ++j)
      if (!mesh[i].is_pole(j) && !(mesh[i].nodes[j].x() > 0.0))
        fail("positivity", i, j, "r must be positive away from the poles");
  if (rep.checks.size() == before) pass("positivity");

  before = rep.checks.size();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < mesh[i].elements(); ++j)
      if (!((mesh[i].nodes[j + 1] - mesh[i].nodes[j]).norm() > tol))
        fail("distinct_nodes", i, j, "consecutive nodes coincide");
  if (rep.checks.size() == before) pass("distinct_nodes");

  before = rep.checks.size();
  for (int i = 0; i < 2; ++i)
    for (int j = 1; j < mesh[i].elements(); ++j)
      if (!((mesh[i].nodes[j + 1] - mesh[i].nodes[j - 1]).norm() > tol))
        fail("distinct_next_nearest", i, j, "next-nearest neighbours coincide");
  if (rep.checks.size() == before) pass("distinct_next_nearest");

  if (!c1 || !rep.ok()) return rep;

  const int J1 = mesh[0].elements();
  if (!((mesh[0].nodes[J1 - 1] - mesh[1].nodes[1]).norm() > tol))
    fail("c1_distinct_neighbours", -1, -1,
         "the two neighbours of the junction coincide");
  else
    pass("c1_distinct_neighbours");

  auto spans_plane = [](const std::vector<VertexFrame>& v, int from, int to) {
    const Vec2 ref = v[from].v;
    for (int j = from + 1; j <= to; ++j)
      if (std::abs(ref.x() * v[j].v.y() - ref.y() * v[j].v.x()) > kRelTol)
        return true;
    return false;
  };
  const auto v0 = vertex_normals(mesh[0]);
  const auto v1 = vertex_normals(mesh[1]);
  if (spans_plane(v0, 1, J1) || spans_plane(v1, 0, mesh[1].elements() - 1))
    pass("c1_normal_span");
  else
    fail("c1_normal_span", -1, -1,
         "vertex normals of both phases are all parallel");
  return rep;
}

}  // namespace axibilayer
