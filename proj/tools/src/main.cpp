#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include "heyde/error.hpp"
#include "heyde_cli/commands.hpp"

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void summarize(const heyde::Json& report, int code, std::ostream& out) {
  out << report["command"].get<std::string>() << ": ";
  switch (code) {
    case heyde::cli::kOk: out << "ok"; break;
    case heyde::cli::kPropertyFailed: out << "FAILED (a guaranteed property does not hold)"; break;
    case heyde::cli::kBoundaryCounterexample: out << "boundary counterexamples found"; break;
    default: out << "exit " << code;
  }
  out << '\n';
  if (report.contains("count")) out << "  count: " << report["count"] << '\n';
  if (report.contains("verdict")) out << "  verdict: " << report["verdict"].dump() << '\n';
  if (report.contains("summary")) out << "  summary: " << report["summary"].dump() << '\n';
  if (report.contains("holds")) out << "  holds: " << report["holds"] << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace heyde::cli;
  CLI::App app{"Exact checks of the Heyde symmetry condition on finite and countable dual groups"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  bool json = false;
  app.add_option("--out", out_path, "Write the JSON report to this file");
  app.add_flag("--json", json, "Print the JSON report to stdout");

  CheckHeydeConfig check;
  auto* check_cmd = app.add_subcommand("check-heyde", "Check one instance (group, alpha, mu1, mu2)");
  check_cmd->add_option("--group", check.group, "Group, e.g. Z3xZ9")->required();
  check_cmd->add_option("--alpha", check.alpha, "Automorphism matrix: JSON text or file (default identity)");
  check_cmd->add_option("--mu1", check.mu1, "First distribution: JSON text or file")->required();
  check_cmd->add_option("--mu2", check.mu2, "Second distribution: JSON text or file")->required();

  VerifyConfig verify;
  std::size_t level = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Verify an infinite-group model on its dual");
  verify_cmd->add_option("--model", verify.model, "Model spec: JSON text or file")->required();
  verify_cmd->add_option("--level", level, "Highest level m for the lemma5 model");
  verify_cmd->add_option("--grid-m", verify.sample.grid_m, "Grid numerator bound")->capture_default_str();
  verify_cmd->add_option("--grid-n", verify.sample.grid_n, "Grid exponent bound")->capture_default_str();
  verify_cmd->add_option("--budget", verify.sample.random_pairs, "Seeded random pairs")->capture_default_str();
  verify_cmd->add_option("--seed", verify.sample.seed, "Sampling seed")->capture_default_str();
  verify_cmd->add_option("--shards", verify.sample.shards, "Worker threads (0: all cores)");

  SweepConfig sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sampled and exhaustive checks over a list of groups");
  sweep_cmd->add_option("--group", sweep.groups, "Groups (repeat or comma-separate)")->required()->delimiter(',');
  sweep_cmd->add_option("--seed", sweep.seed, "Sampling seed")->capture_default_str();
  sweep_cmd->add_option("--budget", sweep.budget, "Sampled instances per automorphism")->capture_default_str();
  sweep_cmd->add_flag("--boundary", sweep.boundary, "Probe the boundary: exit 3 when counterexamples are found");
  sweep_cmd->add_option("--shards", sweep.shards, "Worker threads (0: all cores)");

  std::string list_group;
  auto* autos_cmd = app.add_subcommand("list-automorphisms", "Enumerate automorphisms of a group");
  autos_cmd->add_option("--group", list_group, "Group")->required();
  auto* subs_cmd = app.add_subcommand("list-subgroups", "Enumerate subgroups of a group");
  subs_cmd->add_option("--group", list_group, "Group")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  CommandResult result;
  try {
    const std::size_t cap = cap_from_environment();
    if (*check_cmd) {
      check.cap = cap;
      result = run_check_heyde(check);
    } else if (*verify_cmd) {
      verify.cap = cap;
      if (verify_cmd->count("--level")) verify.level = level;
      result = run_verify(verify);
    } else if (*sweep_cmd) {
      sweep.cap = cap;
      result = run_sweep(sweep);
    } else if (*autos_cmd) {
      result = run_list_automorphisms(list_group, cap);
    } else {
      result = run_list_subgroups(list_group, cap);
    }
  } catch (const heyde::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const heyde::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const heyde::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kPropertyFailed;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  result.report["exit_code"] = result.exit_code;
  result.report["timestamp"] = heyde::Json{{"started", started}, {"wall_time_ms", elapsed.count()}};

  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kInputError;
    }
    file << result.report.dump(2) << '\n';
  }
  if (json) {
    std::cout << result.report.dump(2) << '\n';
  } else {
    summarize(result.report, result.exit_code, std::cout);
  }
  return result.exit_code;
}
