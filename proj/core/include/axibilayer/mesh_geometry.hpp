#pragma once

#include <Eigen/Core>
#include <array>
#include <span>
#include <vector>

namespace axibilayer {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Clockwise rotation by pi/2: (a, b) -> (b, -a).
inline Vec2 perp(const Vec2& v) { return {v.y(), -v.x()}; }

/// One polygonal generating curve in the meridian half plane (r, z), r >= 0.
///
/// Phase 0 (the upper phase) runs from the top pole (node 0, on the axis) to
/// the junction (node J). Phase 1 (the lower phase) runs from the junction
/// (node 0) to the bottom pole (node J). With this orientation the element
/// normals -tau^perp point out of the enclosed body.
struct PhaseCurve {
  int phase = 0;  // 0 = upper, 1 = lower
  std::vector<Vec2> nodes;

  int elements() const { return static_cast<int>(nodes.size()) - 1; }
  int pole_node() const { return phase == 0 ? 0 : elements(); }
  int junction_node() const { return phase == 0 ? elements() : 0; }
  bool is_pole(int j) const { return j == pole_node(); }
  bool is_junction(int j) const { return j == junction_node(); }
  /// Uniform parameter width h = 1 / (2 J) of each element.
  double parameter_step() const { return 0.5 / elements(); }
};

struct TwoPhaseMesh {
  std::array<PhaseCurve, 2> curves;

  const PhaseCurve& operator[](int i) const { return curves[i]; }
  PhaseCurve& operator[](int i) { return curves[i]; }
  Vec2 junction() const { return curves[0].nodes.back(); }
  /// Largest pairwise extent of the node cloud (bounding-box diagonal).
  double diameter() const;
  /// Largest element length over both phases.
  double max_edge() const;
};

TwoPhaseMesh make_mesh(std::vector<Vec2> upper, std::vector<Vec2> lower);

struct ElementFrame {
  Vec2 tangent;   // unit, direction of increasing parameter
  Vec2 normal;    // -tangent^perp
  double length;  // Euclidean length; |X_rho| = length / h
};

struct VertexFrame {
  Vec2 omega;       // mass-lumped projection of the element normals
  Vec2 v;           // omega / |omega|
  Mat2 Q;           // identity at the junction, v (x) v elsewhere
  double z_weight;  // 2 at the pole, 1 elsewhere
  double mass;      // lumped mass: half the length of adjacent elements
};

std::vector<ElementFrame> element_frames(const PhaseCurve& curve);

std::vector<VertexFrame> vertex_normals(const PhaseCurve& curve,
                                        std::span<const ElementFrame> frames);
std::vector<VertexFrame> vertex_normals(const PhaseCurve& curve);

/// Frames of one curve computed together, as every scheme step needs both.
struct CurveGeometry {
  std::vector<ElementFrame> elements;
  std::vector<VertexFrame> vertices;
};

CurveGeometry analyze(const PhaseCurve& curve);
std::array<CurveGeometry, 2> analyze(const TwoPhaseMesh& mesh);

/// Piecewise-linear field on a curve that may jump at interior nodes:
/// values[e] = {value at left end of element e, value at right end}.
template <typename T>
struct PiecewiseField {
  std::vector<std::array<T, 2>> values;

  static PiecewiseField nodal(std::span<const T> node_values) {
    PiecewiseField f;
    for (std::size_t e = 0; e + 1 < node_values.size(); ++e)
      f.values.push_back({node_values[e], node_values[e + 1]});
    return f;
  }
  static PiecewiseField constant(int elements, const T& c) {
    PiecewiseField f;
    f.values.assign(elements, {c, c});
    return f;
  }
};

using ScalarField = PiecewiseField<double>;
using VectorField = PiecewiseField<Vec2>;

/// The parameter speed |X_rho| as an element-wise constant field.
ScalarField parameter_speed(const PhaseCurve& curve);

/// Vertex quadrature of the L2 product on the parameter interval:
/// (f, g)^h = h/2 sum_e [ (fg)(right end of e) + (fg)(left end of e) ].
double mass_lumped_ip(const ScalarField& f, const ScalarField& g,
                      const PhaseCurve& curve);
double mass_lumped_ip(const VectorField& f, const VectorField& g,
                      const PhaseCurve& curve);

/// Discrete mean curvature of the revolved surface at each node:
/// kappa - (omega . e1) / (X . e1) away from the pole, 2 kappa at the pole.
std::vector<double> discrete_mean_curvature(const PhaseCurve& curve,
                                            std::span<const VertexFrame> frames,
                                            std::span<const double> kappa);

/// Nodal curvature from positions alone: the mass-lumped curvature vector,
/// dotted with the vertex normal, with the pole value set to zero.
std::vector<double> curvature_from_positions(const PhaseCurve& curve);

/// Per interior node: min of the relative length mismatch and the
/// parallelism defect of the two adjacent elements. Zero when the curve is
/// equidistributed wherever neighbouring elements are not parallel.
std::vector<double> equidistribution_defect(const PhaseCurve& curve);

}  // namespace axibilayer
