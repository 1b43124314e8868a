#include "axibilayer/verification.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace axibilayer {

using std::numbers::pi;

double linf_radius_error(std::span<const SchemeState> trajectory,
                         const OdeReference& ode) {
  double e = 0.0;
  for (const auto& s : trajectory) {
    const double R = ode(s.t);
    for (const auto& c : s.X.curves)
      for (const auto& p : c.nodes) e = std::max(e, std::abs(p.norm() - R));
  }
  return e;
}

void RadiusErrorTracker::observe(const TwoPhaseMesh& mesh, double t) {
  const double R = ode_(t);
  for (const auto& c : mesh.curves)
    for (const auto& p : c.nodes) max_ = std::max(max_, std::abs(p.norm() - R));
}

void EnergyMonitor::observe(double energy) {
  const long index = seen_++;
  if (index > skip_) {
    const double rise = (energy - prev_) / std::abs(prev_);
    if (energy > prev_ + tol_ * std::abs(prev_)) {
      ++rises_;
      if (first_ < 0) first_ = index;
    }
    max_rise_ = std::max(max_rise_, rise);
  }
  prev_ = energy;
}

double eoc(double e_prev, double e, double h_prev, double h) {
  return std::log(e_prev / e) / std::log(h_prev / h);
}

ConvergenceRow convergence_row(int J1, int J2, const LadderOptions& options) {
  PhysicalParams params;
  params.kbar = {options.kbar, options.kbar};
  params.junction = options.junction;
  const TwoPhaseMesh mesh = perturbed_sphere(J1, J2);

  ConvergenceRow row;
  row.J1 = J1;
  row.J2 = J2;
  row.h0 = mesh.max_edge();
  row.dt = options.dt_factor * row.h0 * row.h0;

  FlowConfig config;
  config.dt = row.dt;
  config.t_end = options.t_end;
  config.stationarity_tol = 0.0;
  config.record_every = std::numeric_limits<long>::max();

  RadiusErrorTracker tracker(options.kbar);
  EnergyMonitor energy;
  const RunResult result = run(config, params, mesh, [&](const StepEvent& ev) {
    energy.observe(ev.diagnostics->energy);
    if (ev.step > 0) tracker.observe(ev.state->X, ev.state->t);
  });
  row.steps = result.steps;
  row.error = tracker.value();
  const double R = ode_reference(options.kbar, result.final_state.t);
  row.drift = (result.final_state.X.junction() - Vec2(R, 0.0)).norm();
  row.element_ratio = {element_ratio(result.final_state.X[0]),
                       element_ratio(result.final_state.X[1])};
  row.energy_rises = energy.rises();
  row.max_energy_rise = energy.max_relative_rise();
  row.error_eoc = row.drift_eoc = std::numeric_limits<double>::quiet_NaN();
  return row;
}

std::vector<ConvergenceRow> convergence_ladder(
    std::span<const std::array<int, 2>> resolutions, const LadderOptions& options) {
  std::vector<ConvergenceRow> rows;
  for (const auto& r : resolutions) {
    rows.push_back(convergence_row(r[0], r[1], options));
    if (rows.size() > 1) {
      const auto& a = rows[rows.size() - 2];
      auto& b = rows.back();
      b.error_eoc = eoc(a.error, b.error, a.h0, b.h0);
      b.drift_eoc = eoc(a.drift, b.drift, a.h0, b.h0);
    }
  }
  return rows;
}

// ---- Gauss-Bonnet ---------------------------------------------------------

std::array<Vec2, 2> geometric_conormals(const TwoPhaseMesh& mesh) {
  const auto& a = mesh[0].nodes;
  const auto& b = mesh[1].nodes;
  const Vec2 t1 = (a[a.size() - 1] - a[a.size() - 2]).normalized();
  const Vec2 t2 = (b[1] - b[0]).normalized();
  return {t1, -t2};
}

GaussBonnetResult gauss_bonnet_check(
    const TwoPhaseMesh& mesh, const std::array<std::span<const double>, 2>& kappa,
    const std::array<Vec2, 2>& conormals) {
  GaussBonnetResult out;
  for (int i = 0; i < 2; ++i) {
    const auto g = analyze(mesh[i]);
    const auto K = discrete_mean_curvature(mesh[i], g.vertices, kappa[i]);
    for (int j = 0; j <= mesh[i].elements(); ++j) {
      const double r = mesh[i].nodes[j].x();
      // Gaussian curvature kappa (K - kappa) of the surface of revolution
      out.area_integral +=
          2 * pi * kappa[i][j] * (K[j] - kappa[i][j]) * r * g.vertices[j].mass;
    }
    out.boundary += 2 * pi * conormals[i].x();
  }
  out.total = out.area_integral + out.boundary;
  out.defect = out.total - 4 * pi;
  return out;
}

GaussBonnetResult gauss_bonnet_check(const TwoPhaseMesh& mesh) {
  const auto k0 = curvature_from_positions(mesh[0]);
  const auto k1 = curvature_from_positions(mesh[1]);
  return gauss_bonnet_check(mesh, {k0, k1}, geometric_conormals(mesh));
}

// ---- junction conditions --------------------------------------------------

JunctionDiagnostics junction_residuals(const SchemeState& state,
                                       const PhysicalParams& params,
                                       const MultiplierState& lambda) {
  JunctionDiagnostics d;
  const double r = state.X.junction().x();
  std::array<Vec2, 2> nu, mu;
  std::array<double, 2> kap{};
  for (int i = 0; i < 2; ++i) {
    const PhaseCurve& c = state.X[i];
    const auto g = analyze(c);
    const auto K = discrete_mean_curvature(c, g.vertices, state.kappa[i]);
    const int jn = c.junction_node();
    const int nb = i == 0 ? jn - 1 : jn + 1;
    const ElementFrame& e = g.elements[i == 0 ? jn - 1 : 0];
    d.K[i] = K[jn];
    kap[i] = state.kappa[i][jn];
    // derivative in the direction of increasing parameter
    d.dK_ds[i] = (i == 0 ? K[jn] - K[nb] : K[nb] - K[jn]) / e.length;
    nu[i] = e.normal;
    mu[i] = i == 0 ? e.tangent : Vec2(-e.tangent);
    d.k_normal[i] = -nu[i].x() / r;
    d.k_conormal[i] = -mu[i].x() / r;
  }
  d.K_jump = d.K[0] - d.K[1];
  const auto& a = params.alpha;
  const auto& aG = params.alphaG;
  const auto& kb = params.kbar;
  const double s = params.varsigma;

  for (int i = 0; i < 2; ++i)
    d.c0_curvature[i] = a[i] * (d.K[i] - kb[i]) - aG[i] * nu[i].x() / r;
  d.c0_force = -s / r * Vec2::UnitX();
  for (int i = 0; i < 2; ++i) {
    const double sign = i == 0 ? 1.0 : -1.0;
    const double gauss = kap[i] * (d.K[i] - kap[i]);
    const double dk = d.K[i] - kb[i];
    d.c0_force += sign * a[i] * d.dK_ds[i] * nu[i] -
                  (0.5 * a[i] * dk * dk + aG[i] * gauss + lambda.lambdaA[i]) * mu[i];
  }

  const Vec2 nu_avg = (nu[0] + nu[1]).normalized();
  const Vec2 mu_avg = (mu[1] - mu[0]).normalized();  // mu = mu_2 = -mu_1
  auto jump = [](double v1, double v2) { return v2 - v1; };
  d.c1_curvature = jump(a[0] * (d.K[0] - kb[0]), a[1] * (d.K[1] - kb[1])) -
                   (aG[1] - aG[0]) * nu_avg.x() / r;
  d.c1_derivative = -jump(a[0] * d.dK_ds[0], a[1] * d.dK_ds[1]) - s * nu_avg.x() / r;
  auto tangential = [&](int i) {
    const double dk = d.K[i] - kb[i];
    return -0.5 * a[i] * dk * dk + a[i] * dk * kap[i] - lambda.lambdaA[i];
  };
  d.c1_tangential = jump(tangential(0), tangential(1)) - s * mu_avg.x() / r;
  return d;
}

// ---- scheme comparison ----------------------------------------------------

DriftComparison compare_junction_drift(int J1, int J2, double dt, double t_end,
                                       long record_every) {
  DriftComparison out;
  out.J1 = J1;
  out.J2 = J2;
  out.dt = dt;
  out.t_end = t_end;
  PhysicalParams params;
  params.junction = JunctionType::c1;
  const TwoPhaseMesh mesh = quarter_pair(J1, J2);
  const Vec2 start = mesh.junction();

  for (auto variant : {JunctionVariant::with_beta, JunctionVariant::sideh}) {
    DriftSeries& series = variant == JunctionVariant::sideh ? out.sideh : out.with_beta;
    series.variant = variant;
    FlowConfig config;
    config.dt = dt;
    config.t_end = t_end;
    config.variant = variant;
    config.stationarity_tol = 0.0;
    config.record_every = std::numeric_limits<long>::max();
    EnergyMonitor fine(1e-10), coarse(1e-6);
    const RunResult result = run(config, params, mesh, [&](const StepEvent& ev) {
      fine.observe(ev.diagnostics->energy);
      coarse.observe(ev.diagnostics->energy);
      if (ev.step % record_every == 0) {
        series.t.push_back(ev.state->t);
        series.energy.push_back(ev.diagnostics->energy);
        series.displacement.push_back((ev.state->X.junction() - start).norm());
      }
    });
    series.final_displacement = (result.final_state.X.junction() - start).norm();
    series.energy_rises = fine.rises();
    series.max_energy_rise = fine.max_relative_rise();
    series.large_rises = coarse.rises();
  }
  return out;
}

}  // namespace axibilayer
