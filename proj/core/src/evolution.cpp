#include "axibilayer/evolution.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>

#include "axibilayer/errors.hpp"

namespace axibilayer {

using std::numbers::pi;

void FlowConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidValue("dt", "must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw InvalidValue("t_end", "must be positive");
  if (!(stationarity_tol >= 0.0)) throw InvalidValue("stationarity_tol", "must be >= 0");
  if (max_steps < 0) throw InvalidValue("max_steps", "must be >= 0");
  if (record_every < 1) throw InvalidValue("record_every", "must be >= 1");
  if (!(newton.tol > 0.0)) throw InvalidValue("newton_tol", "must be positive");
  if (newton.max_iters < 1) throw InvalidValue("newton_max_iters", "must be >= 1");
}

// ---- sphere reference -----------------------------------------------------

OdeReference::OdeReference(double kbar) : kbar_(kbar) {
  if (kbar == 0.0 || !std::isfinite(kbar))
    throw std::invalid_argument("the sphere reference needs a nonzero kbar");
  z0_ = 1.0 + 2.0 / kbar;
}

double OdeReference::rate(double R) const {
  return -kbar_ / R * (2.0 / R + kbar_);
}

double OdeReference::residual(double R, double t) const {
  const double k = kbar_;
  const double z = R + 2.0 / k;
  return 0.5 * (z * z - z0_ * z0_) - 4.0 / k * (z - z0_) +
         4.0 / (k * k) * std::log(z / z0_) + k * k * t;
}

double OdeReference::operator()(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  if (t == 0.0 || kbar_ == -2.0) return 1.0;
  // The residual is kbar^2 t > 0 at R = 1 and tends to -inf towards the
  // steady radius -2/kbar (or towards R = 0 for kbar > 0).
  const double target = kbar_ < 0 ? -2.0 / kbar_ : 0.0;
  double far = target;
  const double gap = target - 1.0;
  int k = 1;
  for (; k < 1100; ++k) {
    far = target - gap * std::ldexp(1.0, -k);
    if (far == target) break;
    const double f = residual(far, t);
    if (std::isfinite(f) && f < 0.0) break;
  }
  const double f_far = residual(far, t);
  if (!(std::isfinite(f_far) && f_far < 0.0))
    throw RootNotBracketed("no sign change for the sphere radius at t = " +
                           std::to_string(t));
  double lo = std::min(1.0, far), hi = std::max(1.0, far);
  auto f = [&](double R) { return residual(R, t); };
  boost::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, f(lo), f(hi), boost::math::tools::eps_tolerance<double>(52),
      iters);
  return 0.5 * (a + b);
}

double ode_reference(double kbar, double t) { return OdeReference(kbar)(t); }

// ---- initial data ---------------------------------------------------------

SchemeState make_initial_data(const TwoPhaseMesh& mesh,
                              const PhysicalParams& params) {
  params.validate();
  SchemeState s;
  s.X = mesh;
  for (int i = 0; i < 2; ++i) {
    const PhaseCurve& c = mesh[i];
    const int J = c.elements();
    const auto g = analyze(c);
    s.kappa[i] = curvature_from_positions(c);
    const auto K = discrete_mean_curvature(c, g.vertices, s.kappa[i]);
    s.Y[i].assign(J + 1, Vec2::Zero());
    for (int k = 0; k <= J; ++k) {
      const auto& v = g.vertices[k];
      Vec2 y = 2 * pi * params.alpha[i] * c.nodes[k].x() *
               (K[k] - params.kbar[i]) / v.omega.norm() * v.v;
      if (c.is_pole(k)) y.x() = 0.0;
      if (c.is_junction(k)) y = Vec2(2 * pi * params.alphaG[i], 0.0);
      s.Y[i][k] = y;
    }
  }
  s.beta = 0.0;
  s.t = 0.0;
  return s;
}

// ---- time loop ------------------------------------------------------------

const char* to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::stationary: return "stationary";
    case Termination::max_steps: return "max_steps";
    case Termination::degenerated: return "degenerated";
  }
  return "unknown";
}

Diagnostics diagnose(const SchemeState& previous, const SchemeState& current,
                     const PhysicalParams& params, const MultiplierState& lambda,
                     int newton_iters) {
  Diagnostics d;
  d.t = current.t;
  StepData step{&previous.X, &current.X, {current.kappa[0], current.kappa[1]},
                current.beta};
  const auto m = junction_conormal(step, params.c1());
  d.energy = discrete_energy(step, m, params);
  d.area = {surface_area(current.X[0]), surface_area(current.X[1])};
  d.volume = enclosed_volume(current.X);
  d.reduced_volume = reduced_volume(d.area[0] + d.area[1], d.volume);
  d.element_ratio = {element_ratio(current.X[0]), element_ratio(current.X[1])};
  d.junction = current.X.junction();
  d.lambdaA = lambda.lambdaA;
  d.lambdaV = lambda.lambdaV;
  d.beta = current.beta;
  d.newton_iters = newton_iters;
  return d;
}

RunResult run(const FlowConfig& config, const PhysicalParams& params,
              const TwoPhaseMesh& initial, const StepObserver& observer) {
  return run(config, params, make_initial_data(initial, params), observer);
}

RunResult run(const FlowConfig& config, const PhysicalParams& params,
              SchemeState state, const StepObserver& observer) {
  config.validate();
  params.validate();
  RunResult out;
  out.targets = measure_targets(state.X);
  const double diameter = state.X.diameter();
  const double r_min = config.pinch_off_fraction * diameter;
  MultiplierState lambda;

  Diagnostics d0 = diagnose(state, state, params, lambda, 0);
  out.diagnostics.push_back(d0);
  if (observer) observer({0, &state, nullptr, &d0, 0.0});

  const double t0 = state.t;
  const long total = std::max<long>(
      1, static_cast<long>(std::ceil((config.t_end - t0) / config.dt - 1e-9)));
  out.termination = Termination::reached_t_end;
  long step = 0;
  while (step < total) {
    if (config.max_steps > 0 && step >= config.max_steps) {
      out.termination = Termination::max_steps;
      break;
    }
    const double t_next =
        step + 1 == total ? config.t_end : t0 + (step + 1) * config.dt;
    const double dt = t_next - state.t;
    const StepSolution sol = newton_conserve(state, params, dt, config.mode,
                                             out.targets, lambda, config.newton,
                                             config.variant);
    lambda = sol.multipliers;
    SchemeState next;
    next.X = state.X;
    double max_disp = 0.0;
    for (int i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < next.X[i].nodes.size(); ++j) {
        next.X[i].nodes[j] += sol.increment.dX[i][j];
        max_disp = std::max(max_disp, sol.increment.dX[i][j].norm());
      }
    next.kappa = sol.increment.kappa;
    next.Y = sol.increment.Y;
    next.beta = sol.increment.beta;
    next.t = t_next;
    ++step;

    const double speed = max_disp / dt;
    const Diagnostics d = diagnose(state, next, params, lambda, sol.newton_iters);
    if (step % config.record_every == 0 || step == total) out.diagnostics.push_back(d);
    if (observer) observer({step, &next, &state, &d, speed});
    state = std::move(next);

    std::string why;
    for (int i = 0; i < 2 && why.empty(); ++i)
      for (int j = 0; j <= state.X[i].elements(); ++j)
        if (!state.X[i].is_pole(j) && state.X[i].nodes[j].x() < r_min) {
          why = "pinch-off: phase " + std::to_string(i + 1) + " node " +
                std::to_string(j) + " reached r = " +
                std::to_string(state.X[i].nodes[j].x());
          break;
        }
    if (!why.empty()) {
      out.termination = Termination::degenerated;
      out.message = Degenerated(step, why).what();
      if (out.diagnostics.back().t != d.t) out.diagnostics.push_back(d);
      break;
    }
    if (config.stationarity_tol > 0.0 &&
        speed < config.stationarity_tol * diameter) {
      out.termination = Termination::stationary;
      if (out.diagnostics.back().t != d.t) out.diagnostics.push_back(d);
      break;
    }
  }
  out.steps = step;
  out.final_state = std::move(state);
  return out;
}

// ---- shapes ---------------------------------------------------------------

namespace {

std::vector<Vec2> arc(double R, double theta0, double theta1, int J) {
  // polar angle theta from the top of the sphere
  std::vector<Vec2> pts(J + 1);
  for (int j = 0; j <= J; ++j) {
    const double th = theta0 + (theta1 - theta0) * j / J;
    pts[j] = Vec2(R * std::sin(th), R * std::cos(th));
  }
  return pts;
}

void pin_poles(TwoPhaseMesh& m) {
  m[0].nodes.front().x() = 0.0;
  m[1].nodes.back().x() = 0.0;
  m[1].nodes.front() = m[0].nodes.back();
}

}  // namespace

TwoPhaseMesh perturbed_sphere(int J1, int J2) {
  auto point = [](double q) {
    const double a = (0.5 - q) * pi + 0.1 * std::cos((0.5 - 2 * q) * pi);
    return Vec2(std::cos(a), std::sin(a));
  };
  std::vector<Vec2> up(J1 + 1), lo(J2 + 1);
  for (int j = 0; j <= J1; ++j) up[j] = point(j * 0.5 / J1);
  for (int j = 0; j <= J2; ++j) lo[j] = point(0.5 + j * 0.5 / J2);
  // exact values at the poles and the junction
  up.front() = Vec2(0.0, 1.0);
  up.back() = Vec2(1.0, 0.0);
  lo.back() = Vec2(0.0, -1.0);
  auto m = make_mesh(std::move(up), std::move(lo));
  pin_poles(m);
  return m;
}

TwoPhaseMesh split_sphere(int J1, int J2, double R, double area_ratio) {
  if (!(R > 0.0)) throw InfeasibleShape("radius must be positive");
  if (!(area_ratio > 0.0 && area_ratio < 1.0))
    throw InfeasibleShape("area ratio must lie in (0, 1)");
  const double thJ = std::acos(1.0 - 2.0 * area_ratio);
  auto m = make_mesh(arc(R, 0.0, thJ, J1), arc(R, thJ, pi, J2));
  if (area_ratio == 0.5) m[0].nodes.back() = Vec2(R, 0.0);
  m[1].nodes.back() = Vec2(0.0, -R);
  pin_poles(m);
  return m;
}

TwoPhaseMesh quarter_pair(int J1, int J2, double R) {
  return split_sphere(J1, J2, R, 0.5);
}

TwoPhaseMesh capped_cylinder(int J1, int J2, double R, double H) {
  if (!(R > 0.0 && H > 0.0)) throw InfeasibleShape("cylinder needs R, H > 0");
  auto part = [&](int J, bool upper) {
    const double cap = R, side = 0.5 * H;
    int nc = std::clamp(static_cast<int>(std::lround(J * cap / (cap + side))), 1, J - 1);
    int ns = J - nc;
    std::vector<Vec2> pts;
    if (upper) {
      for (int j = 0; j < nc; ++j) pts.emplace_back(R * j / nc, 0.5 * H);
      for (int j = 0; j <= ns; ++j) pts.emplace_back(R, 0.5 * H * (1.0 - double(j) / ns));
    } else {
      for (int j = 0; j < ns; ++j) pts.emplace_back(R, -0.5 * H * double(j) / ns);
      for (int j = 0; j <= nc; ++j) pts.emplace_back(R * (1.0 - double(j) / nc), -0.5 * H);
    }
    return pts;
  };
  auto m = make_mesh(part(J1, true), part(J2, false));
  pin_poles(m);
  return m;
}

namespace {

TwoPhaseMesh ellipse_split(int J1, int J2, double a, double c, double thJ) {
  auto e = [&](double th0, double th1, int J) {
    std::vector<Vec2> pts(J + 1);
    for (int j = 0; j <= J; ++j) {
      const double th = th0 + (th1 - th0) * j / J;
      pts[j] = Vec2(a * std::sin(th), c * std::cos(th));
    }
    return pts;
  };
  auto m = make_mesh(e(0.0, thJ, J1), e(thJ, pi, J2));
  pin_poles(m);
  return m;
}

template <typename F>
double bisect(F f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int k = 0; k < iters; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TwoPhaseMesh spheroid(int J1, int J2, double v_r, double area_ratio,
                      double total_area) {
  if (!(v_r > 0.0 && v_r <= 1.0))
    throw InfeasibleShape("reduced volume must lie in (0, 1]");
  if (!(area_ratio > 0.0 && area_ratio < 1.0))
    throw InfeasibleShape("area ratio must lie in (0, 1)");
  if (!(total_area > 0.0)) throw InfeasibleShape("total area must be positive");
  auto vr_of = [&](double aspect) {
    const auto m = ellipse_split(J1, J2, 1.0, aspect, pi / 2);
    return reduced_volume(surface_area(m[0]) + surface_area(m[1]),
                          enclosed_volume(m));
  };
  const double vr_sphere = vr_of(1.0);
  double aspect = 1.0;
  if (v_r < vr_sphere) {
    double hi = 2.0;
    while (vr_of(hi) > v_r) {
      hi *= 2.0;
      if (hi > 1e6) throw InfeasibleShape("reduced volume too small for a spheroid");
    }
    aspect = bisect([&](double k) { return vr_of(k) - v_r; }, 1.0, hi);
  }
  auto ratio_of = [&](double th) {
    const auto m = ellipse_split(J1, J2, 1.0, aspect, th);
    const double a1 = surface_area(m[0]);
    return a1 / (a1 + surface_area(m[1])) - area_ratio;
  };
  const double thJ = bisect(ratio_of, 1e-6, pi - 1e-6);
  auto m = ellipse_split(J1, J2, 1.0, aspect, thJ);
  const double s = std::sqrt(total_area / (surface_area(m[0]) + surface_area(m[1])));
  for (auto& c : m.curves)
    for (auto& p : c.nodes) p *= s;
  return m;
}

TwoPhaseMesh make_test_shape(const ShapeSpec& spec) {
  switch (spec.kind) {
    case ShapeKind::sphere:
      return split_sphere(spec.J1, spec.J2, spec.radius, spec.area_ratio);
    case ShapeKind::perturbed_sphere: return perturbed_sphere(spec.J1, spec.J2);
    case ShapeKind::spheroid:
      return spheroid(spec.J1, spec.J2, spec.v_r, spec.area_ratio, spec.total_area);
    case ShapeKind::quarter_pair: return quarter_pair(spec.J1, spec.J2, spec.radius);
    case ShapeKind::cylinder:
      return capped_cylinder(spec.J1, spec.J2, spec.radius, spec.height);
  }
  throw InfeasibleShape("unknown shape");
}

}  // namespace axibilayer
