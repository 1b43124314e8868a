#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "axibilayer/errors.hpp"
#include "axibilayer/evolution.hpp"
#include "axibilayer/verification.hpp"
#include "support.hpp"

using namespace axibilayer;
using std::numbers::pi;

namespace {

double rk4(const OdeReference& ode, double t_end, double h) {
  double R = 1.0;
  const long n = std::lround(t_end / h);
  for (long k = 0; k < n; ++k) {
    const double k1 = ode.rate(R), k2 = ode.rate(R + 0.5 * h * k1),
                 k3 = ode.rate(R + 0.5 * h * k2), k4 = ode.rate(R + h * k3);
    R += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return R;
}

double total_area(const TwoPhaseMesh& m) { return surface_area(m[0]) + surface_area(m[1]); }

}  // namespace

TEST(OdeReference, RateAndFixedPoints) {
  const OdeReference ode(-1.0);
  EXPECT_DOUBLE_EQ(ode(0.0), 1.0);
  EXPECT_DOUBLE_EQ(ode.rate(2.0), 0.0);
  EXPECT_DOUBLE_EQ(ode.rate(1.0), 1.0);
  // the sphere grows towards the steady radius -2 / kbar
  EXPECT_GT(ode(0.5), 1.0);
  EXPECT_LT(ode(50.0), 2.0);
  EXPECT_GT(ode(50.0), 1.99);
  EXPECT_DOUBLE_EQ(OdeReference(-2.0)(0.7), 1.0);
  EXPECT_THROW(OdeReference(0.0), std::invalid_argument);
}

TEST(OdeReference, AgreesWithRungeKutta) {
  for (double kbar : {-1.0, -0.5, -3.0}) {
    const OdeReference ode(kbar);
    for (double t : {0.1, 0.5, 1.0}) EXPECT_NEAR(ode(t), rk4(ode, t, 1e-4), 1e-9) << kbar;
  }
}

TEST(Shapes, PerturbedSphereEndpoints) {
  const auto m = perturbed_sphere(16, 8);
  EXPECT_EQ(m[0].nodes.front(), Vec2(0, 1));
  EXPECT_EQ(m[1].nodes.back(), Vec2(0, -1));
  EXPECT_NEAR((m.junction() - Vec2(1, 0)).norm(), 0.0, 1e-15);
  for (const auto& c : m.curves)
    for (const auto& p : c.nodes) EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(m.max_edge(), 2.3408e-1, 5e-5);
}

TEST(Shapes, SplitSphereAreaRatio) {
  for (double ratio : {0.3, 0.5, 0.8}) {
    const auto m = split_sphere(96, 96, 1.5, ratio);
    EXPECT_NEAR(surface_area(m[0]) / total_area(m), ratio, 2e-3);
    EXPECT_TRUE(validate_assumptions(m, true).ok());
  }
  const auto q = quarter_pair(9, 5, 2.0);
  EXPECT_EQ(q.junction(), Vec2(2, 0));
}

TEST(Shapes, SpheroidReducedVolume) {
  for (double vr : {0.95, 0.9, 0.8}) {
    const auto m = spheroid(64, 64, vr, 0.4, 4 * pi);
    const double A = total_area(m);
    EXPECT_NEAR(reduced_volume(A, enclosed_volume(m)), vr, 1e-3);
    EXPECT_NEAR(A, 4 * pi, 1e-2 * 4 * pi);
    EXPECT_NEAR(surface_area(m[0]) / A, 0.4, 1e-2);
  }
  EXPECT_THROW(spheroid(16, 16, 1.2, 0.5, 1.0), InfeasibleShape);
  EXPECT_THROW(spheroid(16, 16, 0.0, 0.5, 1.0), InfeasibleShape);
}

TEST(Shapes, CylinderCornersAreNodes) {
  const auto m = capped_cylinder(10, 10, 1.0, 2.0);
  EXPECT_TRUE(validate_assumptions(m, false).ok());
  EXPECT_EQ(m.junction(), Vec2(1, 0));
  bool corner = false;
  for (const auto& p : m[0].nodes) corner |= p == Vec2(1, 1);
  EXPECT_TRUE(corner);
  EXPECT_THROW(capped_cylinder(10, 10, -1.0, 2.0), InfeasibleShape);
}

TEST(InitialData, JunctionAndPoleValues) {
  PhysicalParams params;
  params.junction = JunctionType::c0;
  params.alphaG = {0.5, -0.25};
  params.kbar = {-1.0, -1.0};
  const auto s = make_initial_data(split_sphere(16, 16, 1.0, 0.5), params);
  EXPECT_EQ(s.kappa[0].front(), 0.0);
  EXPECT_EQ(s.kappa[1].back(), 0.0);
  EXPECT_EQ(s.Y[0].front().x(), 0.0);
  EXPECT_NEAR((s.Y[0].back() - Vec2(2 * pi * 0.5, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((s.Y[1].front() - Vec2(-2 * pi * 0.25, 0)).norm(), 0.0, 1e-15);
  EXPECT_EQ(s.beta, 0.0);
  EXPECT_EQ(s.t, 0.0);
}

TEST(FlowConfig, Validation) {
  FlowConfig c;
  EXPECT_NO_THROW(c.validate());
  c.dt = -1.0;
  EXPECT_THROW(c.validate(), InvalidValue);
  c = {};
  c.record_every = 0;
  EXPECT_THROW(c.validate(), InvalidValue);
}

TEST(Run, ConservationOverManySteps) {
  // area and volume preserved at every accepted step
  std::mt19937 rng(5);
  PhysicalParams params;
  params.kbar = {-2.0, 1.0};
  params.junction = JunctionType::c0;
  const auto mesh = fixtures::smooth_random_mesh(rng);
  const auto A0 = surface_area(mesh[0]), A1 = surface_area(mesh[1]);
  const auto V = enclosed_volume(mesh);
  FlowConfig config;
  config.dt = 1e-3;
  config.t_end = 1.0;
  config.mode = ConservationMode::area_volume;
  config.stationarity_tol = 0.0;
  double worst = 0.0;
  const auto result = run(config, params, mesh, [&](const StepEvent& ev) {
    const auto& d = *ev.diagnostics;
    worst = std::max({worst, std::abs(d.area[0] - A0) / A0, std::abs(d.area[1] - A1) / A1,
                      std::abs(d.volume - V) / V});
  });
  EXPECT_EQ(result.steps, 1000);
  EXPECT_LE(worst, 1e-8);
}

TEST(Run, FreeFlowEnergyDecreases) {
  PhysicalParams params;
  params.kbar = {-1.0, -1.0};
  FlowConfig config;
  config.dt = 1e-3 * 0.23408 * 0.23408;
  config.t_end = 0.05;
  config.stationarity_tol = 0.0;
  EnergyMonitor monitor;
  run(config, params, perturbed_sphere(16, 8),
      [&](const StepEvent& ev) { monitor.observe(ev.diagnostics->energy); });
  EXPECT_EQ(monitor.rises(), 0);
}

TEST(Run, ShrinkingSphereDegenerates) {
  PhysicalParams params;
  params.kbar = {1.0, 1.0};
  FlowConfig config;
  config.dt = 1e-3;
  config.t_end = 10.0;
  config.pinch_off_fraction = 0.05;
  const auto result = run(config, params, split_sphere(16, 16, 1.0, 0.5));
  EXPECT_EQ(result.termination, Termination::degenerated);
  EXPECT_NE(result.message.find("pinch-off"), std::string::npos);
  EXPECT_LT(result.final_state.t, 10.0);
}

TEST(Run, StationaryAndStepLimits) {
  PhysicalParams params;
  params.kbar = {-1.0, -1.0};
  FlowConfig config;
  config.dt = 1e-2;
  config.t_end = 100.0;
  config.stationarity_tol = 1e-3;
  const auto result = run(config, params, split_sphere(32, 32, 2.0, 0.5));
  EXPECT_EQ(result.termination, Termination::stationary);
  EXPECT_LT(result.final_state.t, 100.0);

  config.stationarity_tol = 0.0;
  config.max_steps = 7;
  config.record_every = 3;
  const auto limited = run(config, params, split_sphere(8, 8, 1.0, 0.5));
  EXPECT_EQ(limited.termination, Termination::max_steps);
  EXPECT_EQ(limited.steps, 7);
  // initial row plus steps 3 and 6
  EXPECT_EQ(limited.diagnostics.size(), 3u);
}

TEST(Run, LastStepLandsOnEndTime) {
  PhysicalParams params;
  FlowConfig config;
  config.dt = 0.03;
  config.t_end = 0.1;
  config.stationarity_tol = 0.0;
  const auto result = run(config, params, split_sphere(8, 8, 1.0, 0.5));
  EXPECT_EQ(result.steps, 4);
  EXPECT_DOUBLE_EQ(result.final_state.t, 0.1);
  EXPECT_DOUBLE_EQ(result.diagnostics.back().t, 0.1);
}

TEST(Run, DiagnosticsConsistent) {
  PhysicalParams params;
  params.junction = JunctionType::c1;
  params.kbar = {-0.5, -4.0};
  FlowConfig config;
  config.dt = 1e-4;
  config.t_end = 1e-2;
  config.mode = ConservationMode::area;
  config.stationarity_tol = 0.0;
  const auto result = run(config, params, split_sphere(24, 24, 1.0, 0.5));
  for (const auto& d : result.diagnostics) {
    EXPECT_NEAR(d.reduced_volume, reduced_volume(d.area[0] + d.area[1], d.volume), 1e-14);
    EXPECT_GE(d.element_ratio[0], 1.0);
    EXPECT_EQ(d.lambdaV, 0.0);
  }
  EXPECT_GT(result.diagnostics.back().newton_iters, 0);
}
