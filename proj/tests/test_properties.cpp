// Randomised invariants over many generated meshes.
#include <gtest/gtest.h>

#include <random>

#include "axibilayer/errors.hpp"
#include "axibilayer/evolution.hpp"
#include "axibilayer/solver.hpp"
#include "support.hpp"

using namespace axibilayer;

TEST(Property, RandomMeshesSolveAccurately) {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const auto mesh = fixtures::random_mesh(rng);
    PhysicalParams params;
    params.junction = k % 2 ? JunctionType::c1 : JunctionType::c0;
    params.alpha = {1.0 + 0.5 * (u(rng) + 1), 1.0 + 0.5 * (u(rng) + 1)};
    params.alphaG = {0.3 * u(rng), 0.3 * u(rng)};
    params.kbar = {2 * u(rng), 2 * u(rng)};
    params.varsigma = 0.1 * (u(rng) + 1);
    ASSERT_TRUE(validate_assumptions(mesh, params.c1()).ok()) << "mesh " << k;
    const auto state = make_initial_data(mesh, params);
    const auto sys = assemble(state, params, 1e-3, ConservationMode::area_volume);
    const auto sol = linear_solve(sys);
    EXPECT_LE(sol.residual, 1e-10) << "mesh " << k;
  }
}

TEST(Property, NewtonMeetsTargetsOnAsphericalMeshes) {
  std::mt19937 rng(4243);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const auto mesh = fixtures::smooth_random_mesh(rng);
    SCOPED_TRACE("mesh " + std::to_string(k));
    PhysicalParams params;
    params.junction = k % 2 ? JunctionType::c1 : JunctionType::c0;
    params.alphaG = {0.3 * u(rng), 0.3 * u(rng)};
    params.kbar = {2 * u(rng), 2 * u(rng)};
    params.varsigma = 0.1 * (u(rng) + 1);
    const auto state = make_initial_data(mesh, params);
    StepSolution step;
    ASSERT_NO_THROW(step = newton_conserve(state, params, 1e-4, ConservationMode::area_volume,
                                           measure_targets(mesh)));
    for (double r : step.constraint_residuals) EXPECT_LE(std::abs(r), 1e-10) << "mesh " << k;
  }
}

TEST(Property, ViolatingMeshesRejectedWithName) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> pick(0, 1);
  for (int k = 0; k < 20; ++k) {
    auto mesh = fixtures::random_mesh(rng);
    const int i = pick(rng);
    const int j = 2 + k % (mesh[i].elements() - 3);  // j + 1 stays interior
    std::string expected;
    switch (k % 3) {
      case 0:
        mesh[i].nodes[j].x() = 0.0;
        expected = "positivity";
        break;
      case 1:
        mesh[i].nodes[j + 1] = mesh[i].nodes[j];
        expected = "distinct_nodes";
        break;
      default:
        mesh[i].nodes[j + 1] = mesh[i].nodes[j - 1];
        expected = "distinct_next_nearest";
        break;
    }
    PhysicalParams params;
    params.junction = JunctionType::c0;
    SchemeState state;
    state.X = mesh;
    for (int p = 0; p < 2; ++p) {
      state.kappa[p].assign(mesh[p].nodes.size(), 0.0);
      state.Y[p].assign(mesh[p].nodes.size(), Vec2::Zero());
    }
    try {
      assemble(state, params, 1e-3, ConservationMode::free);
      ADD_FAILURE() << "mesh " << k << " was accepted";
    } catch (const AssumptionViolated& e) {
      EXPECT_EQ(e.assumption(), expected) << "mesh " << k;
      EXPECT_EQ(e.phase(), i);
    }
  }
}

TEST(Property, ConservationAcrossShapes) {
  std::mt19937 rng(99);
  std::vector<std::pair<TwoPhaseMesh, JunctionType>> cases{
      {spheroid(20, 20, 0.85, 0.4, 4 * 3.141592653589793), JunctionType::c0},
      {capped_cylinder(16, 16, 1.0, 2.0), JunctionType::c0},
      {fixtures::smooth_random_mesh(rng), JunctionType::c1},
      {spheroid(16, 12, 0.9, 0.6, 8 * 3.141592653589793), JunctionType::c1},
  };
  for (const auto& [mesh, junction] : cases) {
    SCOPED_TRACE(mesh[0].nodes.size());
    PhysicalParams params;
    params.junction = junction;
    params.kbar = {-1.0, 0.5};
    params.alphaG = {0.2, -0.1};
    FlowConfig config;
    config.dt = 1e-3;
    config.t_end = 1.0;
    config.mode = ConservationMode::area_volume;
    config.stationarity_tol = 0.0;
    const auto targets = measure_targets(mesh);
    double worst = 0.0;
    long steps = 0;
    run(config, params, mesh, [&](const StepEvent& ev) {
      const auto& d = *ev.diagnostics;
      steps = ev.step;
      for (int i = 0; i < 2; ++i)
        worst = std::max(worst, std::abs(d.area[i] - targets.area[i]) / targets.area[i]);
      worst = std::max(worst, std::abs(d.volume - targets.volume) / targets.volume);
    });
    EXPECT_GE(steps, 1000);
    EXPECT_LE(worst, 1e-8);
  }
}
