#include "axibilayer/mesh_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "axibilayer/errors.hpp"

namespace axibilayer {

namespace {

constexpr double kRelativeDistinctness = 1e-12;

double extent(std::span<const Vec2> nodes) {
  if (nodes.empty()) return 0.0;
  Vec2 lo = nodes.front(), hi = nodes.front();
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

std::string where(const PhaseCurve& curve, int j) {
  return "phase " + std::to_string(curve.phase + 1) + ", node " +
         std::to_string(j);
}

}  // namespace

double TwoPhaseMesh::diameter() const {
  std::vector<Vec2> all(curves[0].nodes);
  all.insert(all.end(), curves[1].nodes.begin(), curves[1].nodes.end());
  return extent(all);
}

double TwoPhaseMesh::max_edge() const {
  double h = 0.0;
  for (const auto& c : curves)
    for (int e = 0; e < c.elements(); ++e)
      h = std::max(h, (c.nodes[e + 1] - c.nodes[e]).norm());
  return h;
}

TwoPhaseMesh make_mesh(std::vector<Vec2> upper, std::vector<Vec2> lower) {
  TwoPhaseMesh mesh;
  mesh.curves[0] = PhaseCurve{0, std::move(upper)};
  mesh.curves[1] = PhaseCurve{1, std::move(lower)};
  return mesh;
}

std::vector<ElementFrame> element_frames(const PhaseCurve& curve) {
  const int J = curve.elements();
  if (J < 1) throw DegenerateMesh("curve has no elements");
  const double tol = kRelativeDistinctness * extent(curve.nodes);
  std::vector<ElementFrame> frames(J);
  for (int e = 0; e < J; ++e) {
    const Vec2 d = curve.nodes[e + 1] - curve.nodes[e];
    const double len = d.norm();
    if (!(len > tol))
      throw DegenerateMesh("zero-length element between " +
                           where(curve, e) + " and node " +
                           std::to_string(e + 1));
    frames[e].length = len;
    frames[e].tangent = d / len;
    frames[e].normal = -perp(frames[e].tangent);
  }
  return frames;
}

std::vector<VertexFrame> vertex_normals(const PhaseCurve& curve,
                                        std::span<const ElementFrame> frames) {
  const int J = curve.elements();
  std::vector<VertexFrame> out(J + 1);
  for (int k = 0; k <= J; ++k) {
    Vec2 weighted = Vec2::Zero();
    double len = 0.0;
    if (k > 0) {
      weighted += frames[k - 1].length * frames[k - 1].normal;
      len += frames[k - 1].length;
    }
    if (k < J) {
      weighted += frames[k].length * frames[k].normal;
      len += frames[k].length;
    }
    VertexFrame& vf = out[k];
    vf.mass = 0.5 * len;
    vf.omega = weighted / len;
    const double n = vf.omega.norm();
    if (!(n > kRelativeDistinctness))
      throw DegenerateMesh("vanishing vertex normal at " + where(curve, k) +
                           " (neighbouring nodes coincide)");
    vf.v = vf.omega / n;
    vf.Q = curve.is_junction(k) ? Mat2::Identity() : Mat2(vf.v * vf.v.transpose());
    vf.z_weight = curve.is_pole(k) ? 2.0 : 1.0;
  }
  return out;
}

std::vector<VertexFrame> vertex_normals(const PhaseCurve& curve) {
  return vertex_normals(curve, element_frames(curve));
}

CurveGeometry analyze(const PhaseCurve& curve) {
  CurveGeometry g;
  g.elements = element_frames(curve);
  g.vertices = vertex_normals(curve, g.elements);
  return g;
}

std::array<CurveGeometry, 2> analyze(const TwoPhaseMesh& mesh) {
  return {analyze(mesh.curves[0]), analyze(mesh.curves[1])};
}

ScalarField parameter_speed(const PhaseCurve& curve) {
  const double h = curve.parameter_step();
  ScalarField f;
  for (int e = 0; e < curve.elements(); ++e) {
    const double s = (curve.nodes[e + 1] - curve.nodes[e]).norm() / h;
    f.values.push_back({s, s});
  }
  return f;
}

namespace {

template <typename T, typename Dot>
double lumped(const PiecewiseField<T>& f, const PiecewiseField<T>& g,
              const PhaseCurve& curve, Dot dot) {
  const std::size_t J = curve.elements();
  if (f.values.size() != J || g.values.size() != J)
    throw std::invalid_argument("field does not match the curve's elements");
  double sum = 0.0;
  for (std::size_t e = 0; e < J; ++e)
    sum += dot(f.values[e][0], g.values[e][0]) +
           dot(f.values[e][1], g.values[e][1]);
  return 0.5 * curve.parameter_step() * sum;
}

}  // namespace

double mass_lumped_ip(const ScalarField& f, const ScalarField& g,
                      const PhaseCurve& curve) {
  return lumped(f, g, curve, [](double a, double b) { return a * b; });
}

double mass_lumped_ip(const VectorField& f, const VectorField& g,
                      const PhaseCurve& curve) {
  return lumped(f, g, curve,
                [](const Vec2& a, const Vec2& b) { return a.dot(b); });
}

std::vector<double> discrete_mean_curvature(const PhaseCurve& curve,
                                            std::span<const VertexFrame> frames,
                                            std::span<const double> kappa) {
  const int J = curve.elements();
  std::vector<double> K(J + 1);
  for (int k = 0; k <= J; ++k) {
    if (curve.is_pole(k)) {
      K[k] = 2.0 * kappa[k];
      continue;
    }
    const double r = curve.nodes[k].x();
    if (!(r > 0.0))
      throw DegenerateMesh("node off the pole lies on the axis at " +
                           where(curve, k));
    K[k] = kappa[k] - frames[k].omega.x() / r;
  }
  return K;
}

std::vector<double> curvature_from_positions(const PhaseCurve& curve) {
  const auto g = analyze(curve);
  const int J = curve.elements();
  std::vector<double> kappa(J + 1, 0.0);
  for (int k = 0; k <= J; ++k) {
    // (kvec, eta |X_rho|)^h + (tau, eta_rho) = 0 for the nodal basis.
    Vec2 tau_jump = Vec2::Zero();
    if (k < J) tau_jump += g.elements[k].tangent;
    if (k > 0) tau_jump -= g.elements[k - 1].tangent;
    const Vec2 kvec = tau_jump / g.vertices[k].mass;
    kappa[k] = curve.is_pole(k) ? 0.0 : kvec.dot(g.vertices[k].v);
  }
  return kappa;
}

std::vector<double> equidistribution_defect(const PhaseCurve& curve) {
  const int J = curve.elements();
  std::vector<double> defect;
  for (int j = 1; j < J; ++j) {
    const Vec2 a = curve.nodes[j] - curve.nodes[j - 1];
    const Vec2 b = curve.nodes[j + 1] - curve.nodes[j];
    const double la = a.norm(), lb = b.norm();
    const double length_mismatch = std::abs(la - lb) / std::max(la, lb);
    const double parallel = std::abs(a.x() * b.y() - a.y() * b.x()) / (la * lb);
    defect.push_back(std::min(length_mismatch, parallel));
  }
  return defect;
}

}  // namespace axibilayer
