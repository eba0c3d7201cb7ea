// mnc: compile, run, inspect and verify memory-network programs.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mnc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Compile, run, inspect and verify memory-network programs"};
  app.require_subcommand(1);

  mnc::cli::RunConfig cfg;
  std::string array;
  std::string instance;
  double tau = 0.0;
  double alpha = 0.0;
  std::size_t capacity = 0;
  std::string trace;

  auto* run = app.add_subcommand("run", "Run a program to halt and print its result");
  run->add_option("program", cfg.program, "min | sort | astar")->required();
  auto* o_array = run->add_option("--array", array, "Comma-separated values, or @file");
  auto* o_inst = run->add_option("--instance", instance, "'canonical' or an instance file");
  auto* o_tau = run->add_option("--tau", tau, "Softmax temperature");
  auto* o_alpha = run->add_option("--alpha", alpha, "Write strength");
  auto* o_cap = run->add_option("--capacity", capacity, "Memory capacity S");
  run->add_option("--max-steps", cfg.max_steps, "Step limit");
  auto* o_trace = run->add_option("--trace", trace, "Write a trace file");
  run->add_flag("--snapshots", cfg.snapshots, "Include full memory in each trace line");
  run->add_flag("--check", cfg.check, "Check gating and frame contracts every step");
  run->add_flag("--strict-addresses", cfg.strict_addresses, "Reject non-integer addresses");

  std::string insp_program;
  std::string insp_instance;
  std::size_t insp_capacity = 0;
  std::string serialize;
  auto* inspect = app.add_subcommand("inspect", "Print compiled network statistics and layout");
  inspect->add_option("program", insp_program, "min | sort | astar")->required();
  auto* oi_inst = inspect->add_option("--instance", insp_instance, "'canonical' or an instance file");
  auto* oi_cap = inspect->add_option("--capacity", insp_capacity, "Memory capacity S");
  auto* oi_ser = inspect->add_option("--serialize", serialize, "Write the networks as JSON");

  std::string ver_program;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  auto* verify = app.add_subcommand("verify", "Differential test against the oracles");
  verify->add_option("program", ver_program, "min | sort | astar")->required();
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--count", count, "Number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mnc::cli::kUsage;
  }

  if (*run) {
    if (*o_array) cfg.array = array;
    if (*o_inst) cfg.instance = instance;
    if (*o_tau) cfg.tau = tau;
    if (*o_alpha) cfg.alpha = alpha;
    if (*o_cap) cfg.capacity = capacity;
    if (*o_trace) cfg.trace_path = trace;
    return mnc::cli::cmd_run(cfg, std::cout, std::cerr);
  }
  if (*inspect) {
    return mnc::cli::cmd_inspect(insp_program, *oi_inst ? std::optional(insp_instance) : std::nullopt,
                                 *oi_cap ? std::optional(insp_capacity) : std::nullopt,
                                 *oi_ser ? std::optional(serialize) : std::nullopt, std::cout, std::cerr);
  }
  return mnc::cli::cmd_verify(ver_program, seed, count, std::cout, std::cerr);
}
