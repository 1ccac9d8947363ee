// jcdp: scheduled Jacobian chain bracketing.
//
//   jcdp solve <config> [--dot DIR] [--memory-model distributed|shared]
//   jcdp batch <config> --count N --out FILE [--machines 1,2,3] [--jobs K]
//
// Exit codes: 0 success, 1 input error, 2 internal error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>

#include "jcdp/bench.hpp"
#include "jcdp/bnb.hpp"
#include "jcdp/config.hpp"
#include "jcdp/dp.hpp"
#include "jcdp/generator.hpp"
#include "jcdp/sequence.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct InputError : jcdp::Error {
  using jcdp::Error::Error;
};

std::string_view mode_name(jcdp::Mode mode) {
  switch (mode) {
    case jcdp::Mode::Dense:
      return "dense";
    case jcdp::Mode::MatrixFree:
      return "matrix-free";
    case jcdp::Mode::LimitedMemoryMatrixFree:
      return "limited-memory matrix-free";
  }
  return "?";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

jcdp::ConfigFile read_config(const std::string& path) {
  try {
    return jcdp::load_config(path);
  } catch (const jcdp::ParseError&) {
    throw;
  } catch (const jcdp::Error& e) {
    throw InputError(e.what());
  }
}

struct SolveOptions {
  std::string config_path;
  std::string dot_dir;
  jcdp::MemoryModel memory_model = jcdp::MemoryModel::Distributed;
  std::uint64_t node_limit = 0;
};

int cmd_solve(const SolveOptions& opt) {
  const auto cfg = read_config(opt.config_path);
  const auto chain = jcdp::generate(jcdp::generator_of(cfg));
  const auto mode = jcdp::mode_of(cfg);
  const jcdp::MachineConfig machines{cfg.available_threads, cfg.available_memory,
                                     opt.memory_model};

  std::cout << "jcdp solve (output format 1)\n"
            << "mode: " << mode_name(mode) << ", machines: " << machines.machines
            << ", memory: "
            << (cfg.available_memory == 0 ? std::string("unlimited")
                                          : std::to_string(cfg.available_memory))
            << "\n\nchain:\n"
            << jcdp::to_text(chain) << '\n';

  const auto serial_table = jcdp::solve_serial(chain, mode, jcdp::memory_limit_for(machines, 1));
  const auto serial = jcdp::backtrack(serial_table, chain);
  std::cout << "serial DP sequence:\n"
            << jcdp::format_sequence(serial) << "predicted fma: " << serial_table.root_cost()
            << "\n\n";

  const auto sched_table = jcdp::solve_scheduled(chain, mode, machines);
  const auto scheduled = jcdp::backtrack(sched_table, chain);
  std::cout << "scheduled DP sequence (" << machines.machines << " machines):\n"
            << jcdp::format_sequence(scheduled) << "predicted fma: " << sched_table.root_cost()
            << "\n\n";

  jcdp::BnBConfig bnb_cfg{machines, mode, static_cast<double>(cfg.time_to_solve),
                          opt.node_limit};
  const auto exact = jcdp::solve_exact(chain, bnb_cfg);
  const bool proven = exact.status == jcdp::BnBStatus::Proven;
  std::cout << "B&B " << (proven ? "optimum" : "incumbent (budget exhausted)") << ":\n"
            << jcdp::format_sequence(exact.witness) << "optimal fma: " << exact.cost << " ("
            << (proven ? "proven" : "not proven") << ", " << exact.nodes << " nodes)\n\n";

  const auto ratio = jcdp::quality_ratio(exact.cost, sched_table.root_cost());
  const auto useful = jcdp::useful_machines(
      chain, mode, jcdp::effective_limit(mode, jcdp::task_memory_limit(machines)));
  std::cout << "ratio C^(" << machines.machines << "): " << ratio.to_decimal(6) << " ("
            << ratio.num() << "/" << ratio.den() << ")\n"
            << "useful machines: " << useful << '\n'
            << "speedup over serial: "
            << jcdp::Ratio(serial_table.root_cost(), sched_table.root_cost()).to_decimal(3)
            << '\n';

  if (!opt.dot_dir.empty()) {
    const std::filesystem::path dir(opt.dot_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "serial.dot", jcdp::export_dot(jcdp::build_task_graph(serial)));
    write_file(dir / "scheduled.dot", jcdp::export_dot(jcdp::build_task_graph(scheduled)));
    write_file(dir / "optimum.dot", jcdp::export_dot(jcdp::build_task_graph(exact.witness)));
    std::cout << "dot files written to " << dir.string() << '\n';
  }
  return 0;
}

struct BatchOptions {
  std::string config_path;
  std::size_t count = 1;
  std::string out_path;
  std::vector<std::uint32_t> machines;
  unsigned jobs = 1;
  jcdp::MemoryModel memory_model = jcdp::MemoryModel::Distributed;
  std::uint64_t node_limit = 0;
  bool quiet = false;
};

int cmd_batch(const BatchOptions& opt) {
  const auto cfg = read_config(opt.config_path);
  jcdp::BatchConfig batch;
  batch.generator = jcdp::generator_of(cfg);
  batch.count = opt.count;
  batch.mode = jcdp::mode_of(cfg);
  batch.memory_limit = cfg.available_memory;
  batch.memory_model = opt.memory_model;
  batch.time_budget_seconds = static_cast<double>(cfg.time_to_solve);
  batch.node_limit = opt.node_limit;
  batch.jobs = opt.jobs;
  batch.machines = opt.machines;
  if (batch.machines.empty()) {
    batch.machines.resize(cfg.length);
    std::iota(batch.machines.begin(), batch.machines.end(), 1u);
  }

  const auto records = jcdp::run_batch(batch, opt.quiet ? nullptr : &std::cerr);
  try {
    jcdp::write_csv(records, opt.out_path);
  } catch (const jcdp::Error& e) {
    throw InputError(e.what());
  }

  std::size_t exhausted = 0;
  std::size_t failed = 0;
  for (const auto& r : records) {
    exhausted += r.status == jcdp::RecordStatus::BudgetExhausted ? 1 : 0;
    failed += r.status == jcdp::RecordStatus::Error ? 1 : 0;
  }
  std::cout << jcdp::format_tables(jcdp::aggregate(records)) << "records: " << records.size()
            << ", budget exhausted: " << exhausted << ", failed: " << failed << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduled Jacobian chain bracketing: DP heuristic and exact B&B"};
  app.require_subcommand(1);

  const std::map<std::string, jcdp::MemoryModel> memory_models{
      {"distributed", jcdp::MemoryModel::Distributed}, {"shared", jcdp::MemoryModel::Shared}};

  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "Solve one generated chain and explain the result");
  solve->add_option("config", solve_opt.config_path, "Configuration file")->required();
  solve->add_option("--dot", solve_opt.dot_dir, "Write task graphs as DOT files into DIR");
  solve->add_option("--memory-model", solve_opt.memory_model, "distributed or shared")
      ->transform(CLI::CheckedTransformer(memory_models, CLI::ignore_case));
  solve->add_option("--node-limit", solve_opt.node_limit,
                    "Deterministic B&B node budget (0 = none)");

  BatchOptions batch_opt;
  auto* batch = app.add_subcommand("batch", "Compare DP and B&B on many random chains");
  batch->add_option("config", batch_opt.config_path, "Configuration file")->required();
  batch->add_option("--count", batch_opt.count, "Number of chains")
      ->required()
      ->check(CLI::PositiveNumber);
  batch->add_option("--out", batch_opt.out_path, "CSV output path")->required();
  batch->add_option("--machines", batch_opt.machines, "Machine counts (default 1..length)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  batch->add_option("--jobs", batch_opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--memory-model", batch_opt.memory_model, "distributed or shared")
      ->transform(CLI::CheckedTransformer(memory_models, CLI::ignore_case));
  batch->add_option("--node-limit", batch_opt.node_limit,
                    "Deterministic B&B node budget per solve (0 = none)");
  batch->add_flag("--quiet", batch_opt.quiet, "No progress log on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(solve_opt);
    return cmd_batch(batch_opt);
  } catch (const jcdp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
