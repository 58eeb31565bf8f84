#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermatlab/instance.hpp"
#include "fermatlab/nevanlinna.hpp"

namespace fermatlab::report {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitPass = 0, kExitUsage = 1, kExitCheckFailure = 2 };

/// Task names accepted by --task, "all" included.
const std::vector<std::string>& task_names();

struct RunConfig {
  std::string task = "all";
  int field_order = 1;
  std::vector<double> radii = nevanlinna::kDefaultRadii;
  std::size_t samples = 100'000;
  std::uint64_t seed = nevanlinna::kDefaultQuadratureSeed;
  double tolerance = 1e-8;
  std::vector<std::string> inputs;  // files, or directories scanned for *.inst
  std::string out_dir;
  unsigned jobs = 1;

  /// Throws PreconditionError on an unknown task, bad radii, fewer than
  /// 1000 samples or a nonpositive tolerance.
  void validate() const;
  nevanlinna::QuadratureConfig quadrature() const;
};

struct ExpectationResult {
  std::string key;
  std::string expected;
  std::string actual;  // "<missing>" when the check produced no such fact
  bool ok = false;
};

struct QuadratureMeta {
  std::string method;
  std::size_t nodes = 0;
  std::uint64_t seed = 0;
  double error = 0;
};

struct InstanceResult {
  std::string name;
  std::string task;
  std::string verdict;  // pass, fail, not_applicable or error
  bool passed = false;
  std::string diagnostic;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<ExpectationResult> expectations;
  std::optional<QuadratureMeta> quadrature;
  /// Profile table for the Nevanlinna tasks; empty otherwise.
  std::string csv;
};

/// Runs one instance. Errors raised by the checks become verdict "error".
/// Passing means every expectation holds, and the verdict is "pass" unless
/// the instance states an expected verdict.
InstanceResult evaluate(const Instance& instance, const RunConfig& cfg);

/// Instances of every input, in file order; directories are read in sorted
/// order. Throws PreconditionError; parse errors are prefixed with the file.
std::vector<Instance> load_inputs(const RunConfig& cfg);

/// Evaluates on cfg.jobs worker threads; results keep the input order.
std::vector<InstanceResult> evaluate_all(const std::vector<Instance>& instances, const RunConfig& cfg);

std::string verdicts_json(const std::vector<InstanceResult>& results, const RunConfig& cfg);
std::string summary_text(const std::vector<InstanceResult>& results);

/// Loads, evaluates and writes verdicts.json, summary.txt and one CSV per
/// Nevanlinna instance into cfg.out_dir. Returns the process exit code;
/// usage and parse errors are reported on `err`.
int run(const RunConfig& cfg, std::ostream& err);

}  // namespace fermatlab::report
