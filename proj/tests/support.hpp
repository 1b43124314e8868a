#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "axibilayer/mesh_geometry.hpp"
#include "axibilayer/solver.hpp"

namespace axibilayer::fixtures {

// Star-shaped closed surface r(theta) with jittered nodes and a random
// junction latitude. theta = 0 is the top of the axis.
inline TwoPhaseMesh random_mesh(std::mt19937& rng) {
  using std::numbers::pi;
  std::uniform_int_distribution<int> count(4, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int J1 = count(rng), J2 = count(rng);
  const double thetaJ = pi * (0.2 + 0.6 * unit(rng));
  const double a2 = 0.15 * (unit(rng) - 0.5), a3 = 0.1 * (unit(rng) - 0.5);
  const double scale = 0.5 + 2.0 * unit(rng);
  auto radius = [&](double th) {
    return scale * (1.0 + a2 * std::cos(2 * th) + a3 * std::cos(3 * th));
  };
  auto point = [&](double th) {
    const double rho = radius(th);
    return Vec2(rho * std::sin(th), rho * std::cos(th));
  };
  auto arc = [&](double from, double to, int J) {
    std::vector<Vec2> nodes(J + 1);
    const double step = (to - from) / J;
    for (int j = 0; j <= J; ++j) {
      double th = from + j * step;
      if (j > 0 && j < J) th += 0.3 * step * (2 * unit(rng) - 1);
      nodes[j] = point(th);
    }
    return nodes;
  };
  auto upper = arc(0.0, thetaJ, J1);
  auto lower = arc(thetaJ, pi, J2);
  upper.front().x() = 0.0;
  lower.back().x() = 0.0;
  lower.front() = upper.back();
  return make_mesh(std::move(upper), std::move(lower));
}

// Without nodal jitter, element counts matched across the junction, and
// clearly aspherical: constrained flows degenerate near the sphere and a
// jittered mesh is redistributed wholesale in the first step.
inline TwoPhaseMesh smooth_random_mesh(std::mt19937& rng) {
  using std::numbers::pi;
  std::uniform_int_distribution<int> count(8, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int J1 = count(rng);
  const double thetaJ = pi * (0.25 + 0.5 * unit(rng));
  const int J2 = std::max(4, static_cast<int>(std::lround(J1 * (pi - thetaJ) / thetaJ)));
  const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
  const double a2 = sign * (0.25 + 0.2 * unit(rng)), a3 = 0.3 * (unit(rng) - 0.5);
  const double scale = 0.5 + 2.0 * unit(rng);
  auto arc = [&](double from, double to, int J) {
    std::vector<Vec2> nodes(J + 1);
    for (int j = 0; j <= J; ++j) {
      const double th = from + (to - from) * j / J;
      const double rho = scale * (1.0 + a2 * std::cos(2 * th) + a3 * std::cos(3 * th));
      nodes[j] = Vec2(rho * std::sin(th), rho * std::cos(th));
    }
    return nodes;
  };
  auto upper = arc(0.0, thetaJ, J1);
  auto lower = arc(thetaJ, pi, J2);
  upper.front().x() = 0.0;
  lower.back().x() = 0.0;
  lower.front() = upper.back();
  return make_mesh(std::move(upper), std::move(lower));
}

// Circle arc through polar angles [from, to] with J uniform elements.
inline std::vector<Vec2> circle_arc(double from, double to, int J, double R = 1.0) {
  std::vector<Vec2> nodes(J + 1);
  for (int j = 0; j <= J; ++j) {
    const double th = from + (to - from) * j / J;
    nodes[j] = R * Vec2(std::sin(th), std::cos(th));
  }
  // poles sit on the axis exactly
  if (from == 0.0) nodes.front().x() = 0.0;
  if (to == std::numbers::pi) nodes.back().x() = 0.0;
  return nodes;
}

struct Step {
  SchemeState next;
  StepSolution solution;
};

inline Step advance(const SchemeState& state, const PhysicalParams& params, double dt,
                    ConservationMode mode = ConservationMode::free,
                    const ConservationTargets& targets = {},
                    JunctionVariant variant = JunctionVariant::with_beta) {
  Step out;
  out.solution =
      newton_conserve(state, params, dt, mode, targets, {}, {}, variant);
  out.next = state;
  for (int i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < state.X[i].nodes.size(); ++j)
      out.next.X[i].nodes[j] += out.solution.increment.dX[i][j];
  out.next.kappa = out.solution.increment.kappa;
  out.next.Y = out.solution.increment.Y;
  out.next.beta = out.solution.increment.beta;
  out.next.t = state.t + dt;
  return out;
}

}  // namespace axibilayer::fixtures
