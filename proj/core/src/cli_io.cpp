#include "axibilayer/cli_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "axibilayer/errors.hpp"

namespace axibilayer {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw InvalidValue(std::string(key), "'" + std::string(v) + "' is not a finite number");
  return x;
}

long to_long(std::string_view key, std::string_view v) {
  long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw InvalidValue(std::string(key), "'" + std::string(v) + "' is not an integer");
  return x;
}

template <typename E>
E to_enum(std::string_view key, std::string_view v,
          std::initializer_list<std::pair<std::string_view, E>> options) {
  std::string names;
  for (const auto& [name, e] : options) {
    if (v == name) return e;
    names += (names.empty() ? "" : "|") + std::string(name);
  }
  throw InvalidValue(std::string(key), "'" + std::string(v) + "' is not one of " + names);
}

std::vector<std::array<int, 2>> to_ladder(std::string_view key, std::string_view v) {
  // "16x8,32x16"
  std::vector<std::array<int, 2>> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    const auto x = item.find('x');
    if (x == std::string_view::npos)
      throw InvalidValue(std::string(key), "expected entries like 16x8");
    out.push_back({static_cast<int>(to_long(key, trim(item.substr(0, x)))),
                   static_cast<int>(to_long(key, trim(item.substr(x + 1))))});
    if (comma == std::string_view::npos) break;
    v = v.substr(comma + 1);
  }
  if (out.empty()) throw InvalidValue(std::string(key), "empty ladder");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto num = [&](const char* name, auto member) {
      t[name] = [member](RunConfig& c, std::string_view k, std::string_view v) {
        member(c) = to_double(k, v);
      };
    };
    auto integer = [&](const char* name, auto member) {
      t[name] = [member](RunConfig& c, std::string_view k, std::string_view v) {
        member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(to_long(k, v));
      };
    };
    num("alpha1", [](RunConfig& c) -> double& { return c.params.alpha[0]; });
    num("alpha2", [](RunConfig& c) -> double& { return c.params.alpha[1]; });
    num("alphaG1", [](RunConfig& c) -> double& { return c.params.alphaG[0]; });
    num("alphaG2", [](RunConfig& c) -> double& { return c.params.alphaG[1]; });
    num("kbar1", [](RunConfig& c) -> double& { return c.params.kbar[0]; });
    num("kbar2", [](RunConfig& c) -> double& { return c.params.kbar[1]; });
    num("varsigma", [](RunConfig& c) -> double& { return c.params.varsigma; });
    num("dt", [](RunConfig& c) -> double& { return c.flow.dt; });
    num("t_end", [](RunConfig& c) -> double& { return c.flow.t_end; });
    num("stationarity_tol", [](RunConfig& c) -> double& { return c.flow.stationarity_tol; });
    num("pinch_off_fraction", [](RunConfig& c) -> double& { return c.flow.pinch_off_fraction; });
    num("newton_tol", [](RunConfig& c) -> double& { return c.flow.newton.tol; });
    num("radius", [](RunConfig& c) -> double& { return c.shape.radius; });
    num("area_ratio", [](RunConfig& c) -> double& { return c.shape.area_ratio; });
    num("v_r", [](RunConfig& c) -> double& { return c.shape.v_r; });
    num("total_area", [](RunConfig& c) -> double& { return c.shape.total_area; });
    num("height", [](RunConfig& c) -> double& { return c.shape.height; });
    num("dt_factor", [](RunConfig& c) -> double& { return c.dt_factor; });
    integer("J1", [](RunConfig& c) -> int& { return c.shape.J1; });
    integer("J2", [](RunConfig& c) -> int& { return c.shape.J2; });
    integer("max_steps", [](RunConfig& c) -> long& { return c.flow.max_steps; });
    integer("record_every", [](RunConfig& c) -> long& { return c.flow.record_every; });
    integer("newton_max_iters", [](RunConfig& c) -> int& { return c.flow.newton.max_iters; });
    integer("snapshot_every", [](RunConfig& c) -> long& { return c.snapshot_every; });
    integer("azimuthal", [](RunConfig& c) -> int& { return c.azimuthal; });
    t["junction"] = [](RunConfig& c, std::string_view k, std::string_view v) {
      c.params.junction = to_enum<JunctionType>(k, v, {{"c0", JunctionType::c0},
                                                       {"c1", JunctionType::c1}});
    };
    t["mode"] = [](RunConfig& c, std::string_view k, std::string_view v) {
      c.flow.mode = to_enum<ConservationMode>(
          k, v, {{"free", ConservationMode::free},
                 {"area", ConservationMode::area},
                 {"volume", ConservationMode::volume},
                 {"area_volume", ConservationMode::area_volume}});
    };
    t["variant"] = [](RunConfig& c, std::string_view k, std::string_view v) {
      c.flow.variant = to_enum<JunctionVariant>(
          k, v, {{"with_beta", JunctionVariant::with_beta},
                 {"sideh", JunctionVariant::sideh}});
    };
    t["shape"] = [](RunConfig& c, std::string_view k, std::string_view v) {
      c.shape.kind = to_enum<ShapeKind>(k, v, {{"sphere", ShapeKind::sphere},
                                               {"perturbed_sphere", ShapeKind::perturbed_sphere},
                                               {"spheroid", ShapeKind::spheroid},
                                               {"quarter_pair", ShapeKind::quarter_pair},
                                               {"cylinder", ShapeKind::cylinder}});
    };
    t["output_dir"] = [](RunConfig& c, std::string_view k, std::string_view v) {
      if (v.empty()) throw InvalidValue(std::string(k), "must not be empty");
      c.output_dir = std::string(v);
    };
    t["snapshot"] = [](RunConfig& c, std::string_view, std::string_view v) {
      c.snapshot = std::string(v);
    };
    t["ladder"] = [](RunConfig& c, std::string_view k, std::string_view v) {
      c.ladder = to_ladder(k, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  flow.validate();
  if (shape.J1 < 3) throw InvalidValue("J1", "must be at least 3");
  if (shape.J2 < 3) throw InvalidValue("J2", "must be at least 3");
  if (!(shape.radius > 0.0)) throw InvalidValue("radius", "must be positive");
  if (!(shape.area_ratio > 0.0 && shape.area_ratio < 1.0))
    throw InvalidValue("area_ratio", "must lie in (0, 1)");
  if (!(shape.v_r > 0.0 && shape.v_r <= 1.0)) throw InvalidValue("v_r", "must lie in (0, 1]");
  if (!(shape.total_area > 0.0)) throw InvalidValue("total_area", "must be positive");
  if (!(shape.height > 0.0)) throw InvalidValue("height", "must be positive");
  if (snapshot_every < 0) throw InvalidValue("snapshot_every", "must be >= 0");
  if (azimuthal < 3) throw InvalidValue("azimuthal", "must be at least 3");
  if (!(dt_factor > 0.0)) throw InvalidValue("dt_factor", "must be positive");
  for (const auto& r : ladder)
    if (r[0] < 3 || r[1] < 3) throw InvalidValue("ladder", "element counts must be >= 3");
  if (flow.variant == JunctionVariant::sideh && !params.c1())
    throw InvalidValue("variant", "sideh needs junction=c1");
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   int line) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw UnknownKey(std::string(key), line);
  it->second(config, key, value);
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw InvalidValue(std::string(assignment), "override must look like key=value");
  apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidValue(std::string(line), "line " + std::to_string(line_no) +
                                                " is not of the form key=value");
    const auto key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second)
      throw InvalidValue(std::string(key), "given twice (line " + std::to_string(line_no) + ")");
    apply_setting(config, key, trim(line.substr(eq + 1)), line_no);
  }
  config.validate();
  return config;
}

RunConfig parse_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---- formats --------------------------------------------------------------

namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string format_row(const Diagnostics& d) {
  std::string s;
  auto add = [&](double x) {
    if (!s.empty()) s += ',';
    s += g17(x);
  };
  add(d.t);
  add(d.energy);
  add(d.area[0]);
  add(d.area[1]);
  add(d.volume);
  add(d.reduced_volume);
  add(d.element_ratio[0]);
  add(d.element_ratio[1]);
  add(d.lambdaA[0]);
  add(d.lambdaA[1]);
  add(d.lambdaV);
  add(d.beta);
  s += ',' + std::to_string(d.newton_iters);
  add(d.junction.x());
  add(d.junction.y());
  return s;
}

CsvWriter::CsvWriter(const fs::path& path) {
  file_ = std::fopen(path.c_str(), "w");
  if (!file_) throw Error("cannot write " + path.string());
  std::fprintf(file_, "%s\n", kCsvHeader);
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::write(const Diagnostics& d) {
  std::fprintf(file_, "%s\n", format_row(d).c_str());
  std::fflush(file_);
}

void write_snapshot(std::ostream& out, const SchemeState& s) {
  out << "J1 J2 t\n"
      << s.X[0].elements() << ' ' << s.X[1].elements() << ' ' << g17(s.t) << '\n'
      << "j r z kappa Y1 Y2\n";
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j <= s.X[i].elements(); ++j) {
      const Vec2& p = s.X[i].nodes[j];
      const Vec2& y = s.Y[i][j];
      out << j << ' ' << g17(p.x()) << ' ' << g17(p.y()) << ' ' << g17(s.kappa[i][j])
          << ' ' << g17(y.x()) << ' ' << g17(y.y()) << '\n';
    }
}

void write_snapshot(const fs::path& path, const SchemeState& state) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_snapshot(out, state);
}

SchemeState read_snapshot(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw Error("snapshot ends early at line " + std::to_string(line_no + 1));
    ++line_no;
    return std::istringstream(line);
  };
  auto fail = [&]() { throw Error("malformed snapshot line " + std::to_string(line_no)); };
  if (trim(next().str()) != "J1 J2 t") fail();
  int J1 = 0, J2 = 0;
  double t = 0.0;
  {
    auto ls = next();
    if (!(ls >> J1 >> J2 >> t) || J1 < 1 || J2 < 1) fail();
  }
  if (trim(next().str()) != "j r z kappa Y1 Y2") fail();
  SchemeState s;
  s.t = t;
  const std::array<int, 2> J{J1, J2};
  for (int i = 0; i < 2; ++i) {
    s.X[i].phase = i;
    s.X[i].nodes.resize(J[i] + 1);
    s.kappa[i].resize(J[i] + 1);
    s.Y[i].resize(J[i] + 1);
    for (int j = 0; j <= J[i]; ++j) {
      auto ls = next();
      int idx = -1;
      double r, z, k, y1, y2;
      if (!(ls >> idx >> r >> z >> k >> y1 >> y2) || idx != j) fail();
      s.X[i].nodes[j] = Vec2(r, z);
      s.kappa[i][j] = k;
      s.Y[i][j] = Vec2(y1, y2);
    }
  }
  return s;
}

SchemeState read_snapshot(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot read snapshot " + path.string());
  return read_snapshot(in);
}

void export_obj(std::ostream& out, const TwoPhaseMesh& mesh, int segments) {
  if (segments < 3) throw std::invalid_argument("need at least 3 segments");
  // Meridian from the top pole to the bottom pole, junction once.
  std::vector<Vec2> meridian(mesh[0].nodes.begin(), mesh[0].nodes.end());
  meridian.insert(meridian.end(), mesh[1].nodes.begin() + 1, mesh[1].nodes.end());
  const int rings = static_cast<int>(meridian.size()) - 2;
  const double two_pi = 2 * std::acos(-1.0);

  out << "# surface of revolution: " << rings << " rings x " << segments << '\n';
  out << "v 0 0 " << g17(meridian.front().y()) << '\n';
  for (int k = 1; k <= rings; ++k)
    for (int s = 0; s < segments; ++s) {
      const double phi = two_pi * s / segments;
      const Vec2& p = meridian[k];
      out << "v " << g17(p.x() * std::cos(phi)) << ' ' << g17(p.x() * std::sin(phi))
          << ' ' << g17(p.y()) << '\n';
    }
  out << "v 0 0 " << g17(meridian.back().y()) << '\n';

  const int top = 1, bottom = 2 + rings * segments;
  auto ring = [&](int k, int s) { return 2 + (k - 1) * segments + (s % segments); };
  for (int s = 0; s < segments; ++s) out << "f " << top << ' ' << ring(1, s) << ' ' << ring(1, s + 1) << '\n';
  for (int k = 1; k < rings; ++k)
    for (int s = 0; s < segments; ++s) {
      out << "f " << ring(k, s) << ' ' << ring(k + 1, s) << ' ' << ring(k, s + 1) << '\n';
      out << "f " << ring(k, s + 1) << ' ' << ring(k + 1, s) << ' ' << ring(k + 1, s + 1) << '\n';
    }
  for (int s = 0; s < segments; ++s)
    out << "f " << bottom << ' ' << ring(rings, s + 1) << ' ' << ring(rings, s) << '\n';
}

OutputLock::OutputLock(const fs::path& dir) : lock_(dir / ".axibilayer.lock") {
  fs::create_directories(dir);
  std::FILE* f = std::fopen(lock_.c_str(), "wx");
  if (!f)
    throw ConfigError("output directory " + dir.string() +
                      " is in use by another run (remove " + lock_.string() +
                      " if that run is gone)");
  std::fclose(f);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(lock_, ec);
}

// ---- commands -------------------------------------------------------------

namespace {

void say(std::ostream* log, const std::string& s) {
  if (log) *log << s << std::endl;
}

std::string snapshot_name(long step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "snapshot_%08ld.txt", step);
  return buf;
}

struct FlowOutcome {
  RunResult result;
  int exit = exit_ok;
};

FlowOutcome run_flow(const RunConfig& config, const fs::path& dir, std::ostream* log) {
  const TwoPhaseMesh mesh = make_test_shape(config.shape);
  fs::create_directories(dir / "snapshots");
  CsvWriter csv(dir / "timeseries.csv");
  const long every = config.flow.record_every;
  long last_written = -1;
  FlowOutcome out;
  out.result = run(config.flow, config.params, mesh, [&](const StepEvent& ev) {
    if (ev.step % every == 0) {
      csv.write(*ev.diagnostics);
      last_written = ev.step;
    }
    if (ev.step == 0 ||
        (config.snapshot_every > 0 && ev.step % config.snapshot_every == 0))
      write_snapshot(dir / "snapshots" / snapshot_name(ev.step), *ev.state);
    if (log && ev.step > 0 && ev.step % 1000 == 0) {
      std::ostringstream ss;
      ss << "step " << ev.step << " t=" << ev.state->t << " E=" << ev.diagnostics->energy;
      say(log, ss.str());
    }
  });
  const auto& res = out.result;
  if (last_written != res.steps) csv.write(res.diagnostics.back());
  write_snapshot(dir / "snapshots" / snapshot_name(res.steps), res.final_state);

  std::ofstream summary(dir / "summary.txt");
  summary << "termination " << to_string(res.termination) << '\n'
          << "steps " << res.steps << '\n'
          << "t " << g17(res.final_state.t) << '\n';
  if (!res.message.empty()) summary << "message " << res.message << '\n';
  say(log, std::string("finished: ") + to_string(res.termination) + " after " +
               std::to_string(res.steps) + " steps");
  if (res.termination == Termination::degenerated) {
    say(log, res.message);
    out.exit = exit_degenerated;
  }
  return out;
}

}  // namespace

int command_run(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  OutputLock lock(dir);
  for (const auto& w : config.params.validate()) say(log, "warning: " + w);
  return run_flow(config, dir, log).exit;
}

int command_converge(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  OutputLock lock(dir);
  LadderOptions opt;
  opt.kbar = config.params.kbar[0];
  opt.t_end = config.flow.t_end;
  opt.dt_factor = config.dt_factor;
  opt.junction = config.params.junction;
  std::FILE* f = std::fopen((dir / "convergence.csv").c_str(), "w");
  if (!f) throw Error("cannot write convergence.csv");
  std::fprintf(f, "J1,J2,h0,dt,steps,error,eoc_error,drift,eoc_drift,rM1,rM2\n");
  std::vector<ConvergenceRow> rows;
  for (const auto& r : config.ladder) {
    say(log, "row " + std::to_string(r[0]) + "x" + std::to_string(r[1]));
    rows.push_back(convergence_row(r[0], r[1], opt));
    auto& row = rows.back();
    if (rows.size() > 1) {
      const auto& a = rows[rows.size() - 2];
      row.error_eoc = eoc(a.error, row.error, a.h0, row.h0);
      row.drift_eoc = eoc(a.drift, row.drift, a.h0, row.h0);
    }
    auto opt_eoc = [](double x) { return std::isnan(x) ? std::string() : g17(x); };
    std::fprintf(f, "%d,%d,%s,%s,%ld,%s,%s,%s,%s,%s,%s\n", row.J1, row.J2,
                 g17(row.h0).c_str(), g17(row.dt).c_str(), row.steps,
                 g17(row.error).c_str(), opt_eoc(row.error_eoc).c_str(),
                 g17(row.drift).c_str(), opt_eoc(row.drift_eoc).c_str(),
                 g17(row.element_ratio[0]).c_str(), g17(row.element_ratio[1]).c_str());
    std::fflush(f);
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(4) << "  h0=" << row.h0
       << " error=" << row.error << " drift=" << row.drift;
    say(log, ss.str());
  }
  std::fclose(f);
  return exit_ok;
}

int command_compare(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  OutputLock lock(dir);
  const DriftComparison cmp =
      compare_junction_drift(config.shape.J1, config.shape.J2, config.flow.dt,
                             config.flow.t_end, config.flow.record_every);
  std::ofstream summary(dir / "compare.csv");
  summary << "variant,final_displacement,energy_rises,max_energy_rise,large_rises\n";
  for (const DriftSeries* s : {&cmp.with_beta, &cmp.sideh}) {
    const char* name = s->variant == JunctionVariant::sideh ? "sideh" : "with_beta";
    summary << name << ',' << g17(s->final_displacement) << ',' << s->energy_rises
            << ',' << g17(s->max_energy_rise) << ',' << s->large_rises << '\n';
    std::ofstream ts(dir / (std::string("compare_") + name + ".csv"));
    ts << "t,E,displacement\n";
    for (std::size_t k = 0; k < s->t.size(); ++k)
      ts << g17(s->t[k]) << ',' << g17(s->energy[k]) << ',' << g17(s->displacement[k]) << '\n';
    say(log, std::string(name) + ": junction displacement " + g17(s->final_displacement));
  }
  return exit_ok;
}

int command_residuals(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  OutputLock lock(dir);
  const FlowOutcome flow = run_flow(config, dir, log);
  const auto& res = flow.result;
  const Diagnostics& last = res.diagnostics.back();
  const JunctionDiagnostics d = junction_residuals(
      res.final_state, config.params, {last.lambdaA, last.lambdaV});
  std::ofstream out(dir / "residuals.csv");
  out << "quantity,value\n";
  auto row = [&](const char* name, double v) { out << name << ',' << g17(v) << '\n'; };
  row("t", res.final_state.t);
  row("K1", d.K[0]);
  row("K2", d.K[1]);
  row("K_jump", d.K_jump);
  row("dK1_ds", d.dK_ds[0]);
  row("dK2_ds", d.dK_ds[1]);
  row("k_normal1", d.k_normal[0]);
  row("k_normal2", d.k_normal[1]);
  row("k_conormal1", d.k_conormal[0]);
  row("k_conormal2", d.k_conormal[1]);
  if (config.params.c1()) {
    row("c1_curvature", d.c1_curvature);
    row("c1_derivative", d.c1_derivative);
    row("c1_tangential", d.c1_tangential);
  } else {
    row("c0_curvature1", d.c0_curvature[0]);
    row("c0_curvature2", d.c0_curvature[1]);
    row("c0_force_r", d.c0_force.x());
    row("c0_force_z", d.c0_force.y());
  }
  say(log, "junction curvature jump " + g17(d.K_jump));
  return flow.exit;
}

int command_export3d(const RunConfig& config, std::ostream* log) {
  const fs::path dir = config.output_dir;
  OutputLock lock(dir);
  const TwoPhaseMesh mesh = config.snapshot.empty()
                                ? make_test_shape(config.shape)
                                : read_snapshot(fs::path(config.snapshot)).X;
  std::ofstream out(dir / "surface.obj");
  export_obj(out, mesh, config.azimuthal);
  say(log, "wrote " + (dir / "surface.obj").string());
  return exit_ok;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InfeasibleShape*>(&e))
    return exit_config;
  if (dynamic_cast<const AssumptionViolated*>(&e)) return exit_assumption;
  if (dynamic_cast<const DegenerateMesh*>(&e) || dynamic_cast<const Degenerated*>(&e))
    return exit_degenerated;
  if (dynamic_cast<const SingularMatrix*>(&e) || dynamic_cast<const NewtonDiverged*>(&e) ||
      dynamic_cast<const SingularJacobian*>(&e) || dynamic_cast<const RootNotBracketed*>(&e) ||
      dynamic_cast<const NonFiniteInput*>(&e))
    return exit_solver;
  return exit_solver;
}

}  // namespace axibilayer
