#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "axibilayer/errors.hpp"
#include "axibilayer/mesh_geometry.hpp"
#include "support.hpp"

using namespace axibilayer;
using std::numbers::pi;

namespace {

PhaseCurve curve(int phase, std::vector<Vec2> nodes) { return PhaseCurve{phase, std::move(nodes)}; }

}  // namespace

TEST(ElementFrames, QuarterChord) {
  const auto f = element_frames(curve(0, {{0, 1}, {1, 0}}));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_NEAR(f[0].tangent.x(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f[0].tangent.y(), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f[0].normal.x(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f[0].normal.y(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f[0].length, std::sqrt(2.0), 1e-15);
}

TEST(ElementFrames, VerticalSegmentDownward) {
  const auto f = element_frames(curve(0, {{1, 1}, {1, 0}}));
  EXPECT_EQ(f[0].tangent, Vec2(0, -1));
  EXPECT_EQ(f[0].normal, Vec2(1, 0));
}

TEST(ElementFrames, CoincidentNodesRejected) {
  EXPECT_THROW(element_frames(curve(0, {{0, 1}, {0.5, 0.5}, {0.5, 0.5}})), DegenerateMesh);
}

TEST(ElementFrames, SphereNormalsPointOutward) {
  const auto mesh = make_mesh(fixtures::circle_arc(0, pi / 2, 16, 2.0),
                              fixtures::circle_arc(pi / 2, pi, 16, 2.0));
  for (int i = 0; i < 2; ++i) {
    const auto f = element_frames(mesh[i]);
    for (int e = 0; e < mesh[i].elements(); ++e) {
      const Vec2 mid = 0.5 * (mesh[i].nodes[e] + mesh[i].nodes[e + 1]);
      EXPECT_GT(f[e].normal.dot(mid.normalized()), 0.0);
      EXPECT_NEAR(f[e].tangent.dot(f[e].normal), 0.0, 1e-15);
    }
  }
}

TEST(MassLumpedIp, Constants) {
  const auto c = curve(0, {{0, 1}, {0.5, 0.5}, {1, 0}});
  const auto one = ScalarField::constant(2, 1.0);
  EXPECT_DOUBLE_EQ(mass_lumped_ip(one, one, c), 0.5);
}

TEST(MassLumpedIp, NodalHat) {
  const auto c = curve(0, {{0, 1}, {0.5, 0.5}, {1, 0}});
  const std::vector<double> hat{0, 1, 0};
  const auto f = ScalarField::nodal(hat);
  EXPECT_DOUBLE_EQ(mass_lumped_ip(f, f, c), 0.25);
}

TEST(MassLumpedIp, SpeedGivesLength) {
  std::mt19937 rng(7);
  const auto mesh = fixtures::random_mesh(rng);
  for (int i = 0; i < 2; ++i) {
    double length = 0;
    for (const auto& e : element_frames(mesh[i])) length += e.length;
    const auto one = ScalarField::constant(mesh[i].elements(), 1.0);
    EXPECT_NEAR(mass_lumped_ip(one, parameter_speed(mesh[i]), mesh[i]), length, 1e-13);
  }
}

TEST(MassLumpedIp, SymmetricAndPositive) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  const auto c = curve(0, fixtures::circle_arc(0, 1.0, 7));
  std::vector<std::array<double, 2>> a(7), b(7);
  for (int e = 0; e < 7; ++e) a[e] = {u(rng), u(rng)}, b[e] = {u(rng), u(rng)};
  const ScalarField f{a}, g{b};
  EXPECT_DOUBLE_EQ(mass_lumped_ip(f, g, c), mass_lumped_ip(g, f, c));
  EXPECT_GT(mass_lumped_ip(f, g, c), 0.0);
}

TEST(VertexNormals, CollinearInteriorNode) {
  const auto v = vertex_normals(curve(0, {{0, 1}, {1, 1}, {2, 1}, {3, 0}}));
  EXPECT_NEAR((v[1].omega - Vec2(0, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((v[1].v - Vec2(0, 1)).norm(), 0.0, 1e-15);
  Mat2 expected;
  expected << 0, 0, 0, 1;
  EXPECT_NEAR((v[1].Q - expected).norm(), 0.0, 1e-15);
}

TEST(VertexNormals, JunctionIsIdentity) {
  const auto v = vertex_normals(curve(0, fixtures::circle_arc(0, 1.2, 5)));
  EXPECT_EQ(v.back().Q, Mat2::Identity());
  const auto w = vertex_normals(curve(1, fixtures::circle_arc(1.2, pi, 5)));
  EXPECT_EQ(w.front().Q, Mat2::Identity());
  EXPECT_EQ(v.front().z_weight, 2.0);
  EXPECT_EQ(w.back().z_weight, 2.0);
  EXPECT_EQ(v[2].z_weight, 1.0);
}

TEST(VertexNormals, StraightPolygon) {
  std::vector<Vec2> nodes;
  for (int j = 0; j <= 6; ++j) nodes.emplace_back(0.5 * j, 3.0 - 0.5 * j);
  const auto c = curve(0, nodes);
  const Vec2 nu = element_frames(c)[0].normal;
  for (const auto& v : vertex_normals(c)) {
    EXPECT_NEAR((v.omega - nu).norm(), 0.0, 1e-15);
    EXPECT_NEAR(v.omega.norm(), 1.0, 1e-15);
  }
}

TEST(VertexNormals, ProjectorProperties) {
  std::mt19937 rng(11);
  for (int k = 0; k < 10; ++k) {
    const auto mesh = fixtures::random_mesh(rng);
    for (int i = 0; i < 2; ++i) {
      const auto v = vertex_normals(mesh[i]);
      for (int j = 0; j <= mesh[i].elements(); ++j) {
        const Mat2& Q = v[j].Q;
        EXPECT_NEAR((Q - Q.transpose()).norm(), 0.0, 1e-15);
        EXPECT_NEAR((Q * Q - Q).norm(), 0.0, 1e-14);
        EXPECT_NEAR(v[j].v.norm(), 1.0, 1e-14);
        if (mesh[i].is_junction(j)) continue;
        EXPECT_NEAR((Q * v[j].v - v[j].v).norm(), 0.0, 1e-14);
        const Vec2 w(0.3, -1.7);
        EXPECT_NEAR((Q * w - v[j].v.dot(w) * v[j].v).norm(), 0.0, 1e-14);
      }
    }
  }
}

TEST(VertexNormals, MassLumpedProjection) {
  // (omega, phi |X_rho|)^h = (nu, phi |X_rho|)^h for every nodal hat phi
  std::mt19937 rng(5);
  const auto mesh = fixtures::random_mesh(rng);
  const auto& c = mesh[0];
  const auto frames = element_frames(c);
  const auto v = vertex_normals(c);
  const auto speed = parameter_speed(c);
  std::vector<Vec2> omega;
  for (const auto& f : v) omega.push_back(f.omega);
  VectorField nu;
  for (const auto& f : frames) nu.values.push_back(std::array<Vec2, 2>{f.normal, f.normal});
  for (int j = 0; j <= c.elements(); ++j) {
    std::vector<double> hat(c.elements() + 1, 0.0);
    hat[j] = 1.0;
    const auto phi = ScalarField::nodal(hat);
    ScalarField weight = phi;
    for (int e = 0; e < c.elements(); ++e)
      for (int s = 0; s < 2; ++s) weight.values[e][s] *= speed.values[e][s];
    const auto w = VectorField::nodal(omega);
    for (int d = 0; d < 2; ++d) {
      ScalarField a, b;
      for (int e = 0; e < c.elements(); ++e) {
        a.values.push_back({w.values[e][0][d], w.values[e][1][d]});
        b.values.push_back({nu.values[e][0][d], nu.values[e][1][d]});
      }
      EXPECT_NEAR(mass_lumped_ip(a, weight, c), mass_lumped_ip(b, weight, c), 1e-14);
    }
  }
}

TEST(MeanCurvature, PoleAndDirectSubstitution) {
  const auto c = curve(0, {{0, 1}, {0.6, 0.8}, {1, 0}});
  auto frames = vertex_normals(c);
  frames[1].omega = Vec2(1, 0);
  const std::vector<double> kappa{-1.0, 0.0, 0.0};
  const auto K = discrete_mean_curvature(c, frames, kappa);
  EXPECT_DOUBLE_EQ(K[0], -2.0);
  // node at r = 0.6, omega = e1: K = -1 / 0.6
  EXPECT_DOUBLE_EQ(K[1], -1.0 / 0.6);
  const auto d = curve(0, {{0, 1}, {1, 0.5}, {1, 0}});
  auto g = vertex_normals(d);
  g[1].omega = Vec2(1, 0);
  EXPECT_DOUBLE_EQ(discrete_mean_curvature(d, g, std::vector<double>{0, 0, 0})[1], -1.0);
}

TEST(MeanCurvature, UnitSphereFromPositions) {
  for (int phase = 0; phase < 2; ++phase) {
    const auto c = phase == 0 ? curve(0, fixtures::circle_arc(0, pi / 2, 64))
                              : curve(1, fixtures::circle_arc(pi / 2, pi, 64));
    const auto kappa = curvature_from_positions(c);
    const auto v = vertex_normals(c);
    const auto K = discrete_mean_curvature(c, v, kappa);
    for (int j = 0; j <= c.elements(); ++j) {
      if (c.is_pole(j) || c.is_junction(j)) continue;
      EXPECT_NEAR(K[j], -2.0, 1e-2) << "node " << j;
      EXPECT_NEAR(kappa[j], -1.0, 1e-2) << "node " << j;
    }
    EXPECT_EQ(kappa[c.pole_node()], 0.0);
    // one-sided at the junction: omega is the end element normal, tilted by h/2
    const double h = pi / 128;
    EXPECT_NEAR(kappa[c.junction_node()], 0.0, 1e-12);
    EXPECT_NEAR(K[c.junction_node()], -std::cos(h / 2), 1e-9);
  }
}

TEST(Equidistribution, DefectVanishesOnUniformArc) {
  const auto c = curve(0, fixtures::circle_arc(0, 1.3, 9));
  for (double d : equidistribution_defect(c)) EXPECT_LT(d, 1e-12);
  const auto e = curve(0, {{0, 2}, {0.5, 2}, {1.5, 2}, {2, 1}});
  // collinear unequal neighbours count as parallel
  EXPECT_LT(equidistribution_defect(e)[0], 1e-12);
}

TEST(MeshExtent, DiameterAndMaxEdge) {
  const auto mesh = make_mesh({{0, 1}, {1, 1}, {1, 0}}, {{1, 0}, {1, -1}, {0, -1}});
  EXPECT_DOUBLE_EQ(mesh.max_edge(), 1.0);
  EXPECT_NEAR(mesh.diameter(), std::sqrt(5.0), 1e-15);
  EXPECT_EQ(mesh.junction(), Vec2(1, 0));
}
