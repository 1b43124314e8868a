#include "axibilayer/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "axibilayer/errors.hpp"

namespace axibilayer {

using std::numbers::pi;

std::vector<std::string> PhysicalParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  for (int i = 0; i < 2; ++i) {
    const std::string k = std::to_string(i + 1);
    if (!finite(alpha[i]) || !(alpha[i] > 0.0))
      throw InvalidValue("alpha" + k, "bending rigidity must be positive");
    if (!finite(alphaG[i]))
      throw InvalidValue("alphaG" + k, "must be finite");
    if (!finite(kbar[i])) throw InvalidValue("kbar" + k, "must be finite");
  }
  if (!finite(varsigma) || varsigma < 0.0)
    throw InvalidValue("varsigma", "line tension must be non-negative");
  std::vector<std::string> warnings;
  if (std::min(alpha[0], alpha[1]) < 0.5 * std::abs(alphaG[0] - alphaG[1]))
    warnings.push_back(
        "min(alpha1, alpha2) < |alphaG1 - alphaG2| / 2: the energy may be "
        "unbounded from below");
  return warnings;
}

double surface_area(const PhaseCurve& curve) {
  double a = 0.0;
  for (int e = 0; e < curve.elements(); ++e) {
    const Vec2& p = curve.nodes[e];
    const Vec2& q = curve.nodes[e + 1];
    a += (q - p).norm() * (p.x() + q.x());
  }
  return pi * a;
}

double enclosed_volume(const PhaseCurve& curve) {
  double v = 0.0;
  for (int e = 0; e < curve.elements(); ++e) {
    const Vec2& p = curve.nodes[e];
    const Vec2& q = curve.nodes[e + 1];
    const double ra = p.x(), rb = q.x();
    v += (q.y() - p.y()) * (ra * ra + ra * rb + rb * rb);
  }
  return -pi * v / 3.0;
}

double enclosed_volume(const TwoPhaseMesh& mesh) {
  return enclosed_volume(mesh[0]) + enclosed_volume(mesh[1]);
}

double first_variation_area(const PhaseCurve& curve,
                            std::span<const Vec2> eta) {
  if (eta.size() != curve.nodes.size())
    throw std::invalid_argument("direction does not match the curve");
  double d = 0.0;
  for (int e = 0; e < curve.elements(); ++e) {
    const Vec2 diff = curve.nodes[e + 1] - curve.nodes[e];
    const double len = diff.norm();
    const Vec2 tau = diff / len;
    const double rsum = curve.nodes[e].x() + curve.nodes[e + 1].x();
    d += tau.dot(eta[e + 1] - eta[e]) * rsum + len * (eta[e].x() + eta[e + 1].x());
  }
  return pi * d;
}

double first_variation_volume(const PhaseCurve& curve,
                              std::span<const Vec2> eta) {
  if (eta.size() != curve.nodes.size())
    throw std::invalid_argument("direction does not match the curve");
  double d = 0.0;
  for (int e = 0; e < curve.elements(); ++e) {
    const Vec2& p = curve.nodes[e];
    const Vec2& q = curve.nodes[e + 1];
    const double ra = p.x(), rb = q.x(), dz = q.y() - p.y();
    d += (eta[e + 1].y() - eta[e].y()) * (ra * ra + ra * rb + rb * rb) +
         dz * ((2 * ra + rb) * eta[e].x() + (ra + 2 * rb) * eta[e + 1].x());
  }
  return -pi * d / 3.0;
}

double first_variation_volume(const TwoPhaseMesh& mesh,
                              const std::array<std::vector<Vec2>, 2>& eta) {
  return first_variation_volume(mesh[0], eta[0]) +
         first_variation_volume(mesh[1], eta[1]);
}

JunctionConormal junction_conormal(const StepData& step, bool c1) {
  JunctionConormal out;
  for (int i = 0; i < 2; ++i) {
    const PhaseCurve& old_c = (*step.old_mesh)[i];
    const PhaseCurve& new_c = (*step.new_mesh)[i];
    const int J = old_c.elements();
    // element touching the junction and its far node
    const int e = i == 0 ? J - 1 : 0;
    const int jn = old_c.junction_node();
    const int far = i == 0 ? J - 1 : 1;
    const Vec2 d_old = old_c.nodes[jn] - old_c.nodes[far];
    const double len = d_old.norm();
    const Vec2 nu = -perp((old_c.nodes[e + 1] - old_c.nodes[e]) / len);
    const Vec2 d_new = new_c.nodes[jn] - new_c.nodes[far];
    // The junction test function has derivative +1/h on the last element of
    // phase 1 and -1/h on the first element of phase 2; both cases reduce
    // to (X(junction) - X(neighbour)) / L.
    Vec2 m = 0.5 * len * step.kappa[i][jn] * nu + d_new / len;
    if (c1) {
      const Vec2 span = old_c.nodes[e + 1] - old_c.nodes[e];
      m += 0.5 * step.beta * span;
    }
    out.m[i] = m;
  }
  return out;
}

double bending_energy(const TwoPhaseMesh& mesh,
                      const std::array<std::span<const double>, 2>& kappa,
                      const PhysicalParams& params) {
  double e = 0.0;
  for (int i = 0; i < 2; ++i) {
    const PhaseCurve& c = mesh[i];
    const auto g = analyze(c);
    const auto K = discrete_mean_curvature(c, g.vertices, kappa[i]);
    for (int n = 0; n <= c.elements(); ++n) {
      const double dk = K[n] - params.kbar[i];
      e += params.alpha[i] * dk * dk * c.nodes[n].x() * g.vertices[n].mass;
    }
  }
  return pi * e;
}

double discrete_energy(const StepData& step, const JunctionConormal& m,
                       const PhysicalParams& params) {
  double e = bending_energy(*step.old_mesh, step.kappa, params);
  for (int i = 0; i < 2; ++i) e -= 2 * pi * params.alphaG[i] * m.m[i].x();
  e += 2 * pi * params.varsigma * step.new_mesh->junction().x();
  return e;
}

double reduced_volume(double area_total, double volume) {
  return 6.0 * std::sqrt(pi) * volume / std::pow(area_total, 1.5);
}

double element_ratio(const PhaseCurve& curve) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int e = 0; e < curve.elements(); ++e) {
    const double l = (curve.nodes[e + 1] - curve.nodes[e]).norm();
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return hi / lo;
}

}  // namespace axibilayer
