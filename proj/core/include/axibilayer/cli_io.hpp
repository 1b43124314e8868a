#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "axibilayer/evolution.hpp"
#include "axibilayer/verification.hpp"

namespace axibilayer {

struct RunConfig {
  PhysicalParams params;
  FlowConfig flow;
  ShapeSpec shape;
  std::string output_dir = "out";
  long snapshot_every = 0;  // 0: initial and final state only
  int azimuthal = 64;       // OBJ ring resolution
  std::string snapshot;     // export3d input, empty: the configured shape
  std::vector<std::array<int, 2>> ladder{{16, 8}, {32, 16}, {64, 32}};
  double dt_factor = 1e-3;  // converge: dt = dt_factor * h0^2

  /// Throws InvalidValue for any inconsistent setting.
  void validate() const;
};

/// key=value lines; '#' starts a comment. Unknown keys and repeated keys
/// are rejected.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(std::string_view text);
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   int line = 0);
/// "key=value" form used by --override.
void apply_override(RunConfig& config, std::string_view assignment);

// ---- output formats -------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "t,E,A1,A2,V,vr,rM1,rM2,lamA1,lamA2,lamV,beta,newton_iters,junction_r,junction_z";

std::string format_row(const Diagnostics& d);

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;
  void write(const Diagnostics& d);

 private:
  std::FILE* file_ = nullptr;
};

void write_snapshot(std::ostream& out, const SchemeState& state);
void write_snapshot(const std::filesystem::path& path, const SchemeState& state);
/// Reads a snapshot back. beta is not part of the format and is zero.
SchemeState read_snapshot(std::istream& in);
SchemeState read_snapshot(const std::filesystem::path& path);

/// Triangulated surface of revolution: one ring of `segments` vertices per
/// off-axis node and a fan at each pole, outward oriented.
void export_obj(std::ostream& out, const TwoPhaseMesh& mesh, int segments);

/// Exclusive claim on an output directory for the lifetime of the object.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& dir);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path lock_;
};

// ---- subcommands ----------------------------------------------------------

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 1,
  exit_degenerated = 2,
  exit_assumption = 3,
  exit_solver = 4,
};

/// Each command writes into config.output_dir and logs progress to `log`
/// (may be null). The return value is the process exit code for normal
/// completion; errors propagate as exceptions.
int command_run(const RunConfig& config, std::ostream* log);
int command_converge(const RunConfig& config, std::ostream* log);
int command_compare(const RunConfig& config, std::ostream* log);
int command_residuals(const RunConfig& config, std::ostream* log);
int command_export3d(const RunConfig& config, std::ostream* log);

/// Maps an exception from the library to an exit code.
int exit_code_for(const std::exception& e);

}  // namespace axibilayer
