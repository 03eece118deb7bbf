// Command-line front end: solve, bench, verify.
//
// Exit status: 0 success, 1 numerical failure or failed verification, 2 usage or
// configuration error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fode/bench.hpp"
#include "fode/csv.hpp"
#include "fode/run_config.hpp"
#include "fode/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CliState {
  fode::RunConfig run;
  std::string strategy = "serial";
  double tmax = 0.0;

  std::vector<std::string> bench_strategies = {"serial", "block", "reduction"};
  std::vector<std::size_t> bench_steps = {10000, 20000, 40000};
  std::vector<std::size_t> bench_workers = {1, 2, 4};
  std::vector<std::size_t> bench_chunks = {1024};
  int reps = 3;
  bool no_warmup = false;
  std::size_t project_to = 3'000'000;
};

void add_problem_options(CLI::App* cmd, CliState& s) {
  cmd->add_option("--system", s.run.system, "constant-zero | constant | power-law | linear | hindmarsh-rose")
      ->required()
      ->check(CLI::IsMember(fode::system_names()));
  cmd->add_option("--alpha", s.run.alpha, "fractional order in (0, 1]")->required();
  cmd->add_option("--tmax", s.tmax, "horizon T (default 1000 for hindmarsh-rose, else 1)");
  cmd->add_option("--y0", s.run.y0, "initial state, comma separated")->delimiter(',');
  cmd->add_option("--beta", s.run.beta, "power-law exponent (exact solution t^beta)")->capture_default_str();
  cmd->add_option("--lambda", s.run.lambda, "linear coefficient")->capture_default_str();
  cmd->add_option("--value", s.run.value, "constant right-hand side, comma separated")->delimiter(',');
  auto& hr = s.run.hindmarsh_rose;
  cmd->add_option("--hr-a", hr.a)->capture_default_str();
  cmd->add_option("--hr-b", hr.b)->capture_default_str();
  cmd->add_option("--hr-c", hr.c)->capture_default_str();
  cmd->add_option("--hr-d", hr.d)->capture_default_str();
  cmd->add_option("--hr-r", hr.r)->capture_default_str();
  cmd->add_option("--hr-s", hr.s)->capture_default_str();
  cmd->add_option("--hr-x-rest", hr.x_rest)->capture_default_str();
  cmd->add_option("--hr-i-ext", hr.i_ext)->capture_default_str();
  cmd->add_option("--config", "key=value configuration file; command-line flags take precedence");
}

void finish_run_config(CLI::App* cmd, CliState& s) {
  if (cmd->count("--tmax") > 0) {
    s.run.t_end = s.tmax;
  }
  s.run.strategy = fode::parse_strategy(s.strategy);
}

int cmd_solve(CliState& s, CLI::App* cmd) {
  finish_run_config(cmd, s);
  const fode::FractionalProblem problem = fode::make_problem(s.run);
  const fode::GridSpec grid = fode::GridSpec::make(problem.t_end, s.run.n_steps);
  const fode::Trajectory traj = fode::run_strategy(problem, grid, s.run.strategy, s.run.workers, s.run.chunk);
  if (s.run.output.empty() || s.run.output == "-") {
    fode::csv::write_trajectory(std::cout, traj);
  } else {
    std::ofstream out(s.run.output, std::ios::binary);
    if (!out) {
      throw fode::ConfigError("cannot open output file " + s.run.output);
    }
    fode::csv::write_trajectory(out, traj);
  }
  return kExitOk;
}

int cmd_bench(CliState& s, CLI::App* cmd) {
  finish_run_config(cmd, s);
  fode::bench::BenchConfig config;
  config.base = s.run;
  config.strategies.clear();
  for (const auto& name : s.bench_strategies) {
    config.strategies.push_back(fode::parse_strategy(name));
  }
  config.steps = s.bench_steps;
  config.workers = s.bench_workers;
  config.chunks = s.bench_chunks;
  config.repetitions = s.reps;
  config.warmup = !s.no_warmup;
  config.project_to = s.project_to;

  const auto records = fode::bench::run_sweep(config, &std::cerr);
  if (s.run.output.empty() || s.run.output == "-") {
    fode::bench::write_csv(std::cout, records);
  } else {
    std::ofstream out(s.run.output, std::ios::binary);
    if (!out) {
      throw fode::ConfigError("cannot open output file " + s.run.output);
    }
    fode::bench::write_csv(out, records);
  }
  return kExitOk;
}

int cmd_verify(const std::string& output) {
  const auto outcome = fode::verify::run_suite();
  for (const auto& c : outcome.checks) {
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << fode::csv::format_double(c.value)
              << " (threshold " << fode::csv::format_double(c.threshold) << "; " << c.detail << ")\n";
  }
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty() && output != "-") {
    file.open(output, std::ios::binary);
    if (!file) {
      throw fode::ConfigError("cannot open output file " + output);
    }
    out = &file;
  }
  for (const auto& report : outcome.reports) {
    fode::verify::write_report_csv(*out, report);
  }
  if (!outcome.passed()) {
    std::cerr << "verification failed:";
    for (const auto& name : outcome.failed()) {
      std::cerr << "\n  " << name;
    }
    std::cerr << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

// Expands `--config PATH` into `--key value` arguments placed directly after the
// subcommand, ahead of the real command-line flags.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> injected;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) {
      throw fode::ConfigError("cannot read config file " + path);
    }
    for (const auto& item : CLI::ConfigINI().from_config(in)) {
      if (item.inputs.empty()) {
        continue;
      }
      std::string joined;
      for (const auto& v : item.inputs) {
        joined += (joined.empty() ? "" : ",") + v;
      }
      injected.push_back("--" + item.name);
      injected.push_back(joined);
    }
    --i;
  }
  if (!injected.empty() && !args.empty()) {
    args.insert(args.begin() + 1, injected.begin(), injected.end());
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order ABM predictor-corrector solver"};
  app.require_subcommand(1);

  CliState s;

  auto* solve = app.add_subcommand("solve", "integrate one problem and write the trajectory CSV");
  add_problem_options(solve, s);
  solve->add_option("--steps", s.run.n_steps, "number of steps N")->capture_default_str();
  solve->add_option("--strategy", s.strategy, "serial | block | reduction")->capture_default_str();
  solve->add_option("--workers", s.run.workers, "worker count P")->capture_default_str();
  solve->add_option("--chunk", s.run.chunk, "reduction chunk size")->capture_default_str();
  solve->add_option("--output", s.run.output, "output path ('-' or empty for stdout)");

  auto* bench = app.add_subcommand("bench", "time strategies over a grid of N and P");
  add_problem_options(bench, s);
  bench->add_option("--steps", s.bench_steps, "comma-separated N values")->delimiter(',')->capture_default_str();
  bench->add_option("--strategy", s.bench_strategies, "comma-separated strategies")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--workers", s.bench_workers, "comma-separated P values")->delimiter(',')->capture_default_str();
  bench->add_option("--chunk", s.bench_chunks, "comma-separated reduction chunk sizes")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--reps", s.reps, "timed repetitions per cell")->capture_default_str();
  bench->add_flag("--no-warmup", s.no_warmup, "skip the discarded warmup run");
  bench->add_option("--project-to", s.project_to, "N for the O(N^2) projected time column")->capture_default_str();
  bench->add_option("--output", s.run.output, "output path ('-' or empty for stdout)");

  std::string verify_output;
  auto* verify = app.add_subcommand("verify", "run the analytic verification suite");
  verify->add_option("--output", verify_output, "convergence report CSV path ('-' or empty for stdout)");

  // Values from a config file come first, so a repeated scalar flag on the command line wins.
  for (auto* cmd : {solve, bench}) {
    for (auto* opt : cmd->get_options()) {
      opt->multi_option_policy(opt->get_expected_max() > 1 ? CLI::MultiOptionPolicy::TakeAll
                                                           : CLI::MultiOptionPolicy::TakeLast);
    }
  }

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const fode::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(s, solve);
    if (*bench) return cmd_bench(s, bench);
    if (*verify) return cmd_verify(verify_output);
  } catch (const fode::StepError& e) {
    std::cerr << "numerical failure at step " << e.step() << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const fode::StrategyError& e) {
    std::cerr << "parallel strategy failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
