#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heyde/dual_models.hpp"
#include "heyde/io.hpp"

namespace heyde::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kPropertyFailed = 1,
  kInputError = 2,
  kBoundaryCounterexample = 3,
};

struct CommandResult {
  Json report;
  int exit_code = kOk;
};

struct CheckHeydeConfig {
  std::string group;
  std::string alpha;  // JSON text or file path; empty means the identity
  std::string mu1;
  std::string mu2;
  std::size_t cap = kDefaultCap;
};

struct VerifyConfig {
  std::string model;  // JSON text or file path
  std::optional<std::size_t> level;
  SampleSpec sample;
  std::size_t cap = kDefaultCap;
};

struct SweepConfig {
  std::vector<std::string> groups;
  std::uint64_t seed = 0;
  std::size_t budget = 100;  // sampled instances per automorphism
  bool boundary = false;
  std::size_t shards = 0;
  std::size_t cap = kDefaultCap;
};

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
Json load_json_argument(const std::string& arg, const std::string& what);

/// The commands throw InputError on invalid input; reports carry no timestamp yet.
CommandResult run_check_heyde(const CheckHeydeConfig& config);
CommandResult run_verify(const VerifyConfig& config);
CommandResult run_sweep(const SweepConfig& config);
CommandResult run_list_automorphisms(const std::string& group, std::size_t cap);
CommandResult run_list_subgroups(const std::string& group, std::size_t cap);

/// Copy of the report without its "timestamp" member, for reproducibility comparisons.
Json without_timestamp(Json report);

/// Parses HEYDE_CAP when set; otherwise the default cap.
std::size_t cap_from_environment();

}  // namespace heyde::cli
