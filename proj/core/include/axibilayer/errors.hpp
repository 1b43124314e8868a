#pragma once

#include <stdexcept>
#include <string>

namespace axibilayer {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateMesh : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

// A discrete mesh assumption (positivity, node distinctness, C1 span
// condition) failed. `assumption` names the condition, phase/node locate it.
class AssumptionViolated : public Error {
 public:
  AssumptionViolated(std::string assumption, int phase, int node,
                     const std::string& what)
      : Error(what),
        assumption_(std::move(assumption)),
        phase_(phase),
        node_(node) {}

  const std::string& assumption() const { return assumption_; }
  int phase() const { return phase_; }
  int node() const { return node_; }

 private:
  std::string assumption_;
  int phase_;
  int node_;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NewtonDiverged : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class RootNotBracketed : public Error {
 public:
  using Error::Error;
};

class InfeasibleShape : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MissingFile : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownKey : public ConfigError {
 public:
  UnknownKey(std::string key, int line)
      : ConfigError("unknown key '" + key + "' on line " +
                    std::to_string(line)),
        key_(std::move(key)),
        line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

class InvalidValue : public ConfigError {
 public:
  InvalidValue(std::string key, const std::string& reason)
      : ConfigError("invalid value for '" + key + "': " + reason),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// The flow left the model's range of validity (e.g. pinch-off at the axis).
class Degenerated : public Error {
 public:
  Degenerated(long step, const std::string& reason)
      : Error("degenerated at step " + std::to_string(step) + ": " + reason),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace axibilayer
