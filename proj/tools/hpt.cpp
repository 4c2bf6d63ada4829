#include <cstddef>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hpt/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hyperparameter-transfer experiment runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Execute an experiment plan");
  std::string plan_path;
  std::string out_dir;
  run->add_option("--plan", plan_path, "Experiment plan (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Report output directory")->required();
  std::size_t seeds = 0;
  std::size_t max_evals = 0;
  std::size_t jobs = 0;
  std::uint64_t experiment_seed = 0;
  const auto* seeds_opt =
      run->add_option("--seeds", seeds, "Override the plan's seed count");
  const auto* evals_opt =
      run->add_option("--max-evals", max_evals, "Override the evaluation cap");
  const auto* seed_opt = run->add_option("--experiment-seed", experiment_seed,
                                         "Override the experiment seed");
  const auto* jobs_opt = run->add_option("--jobs", jobs, "Worker thread count");

  CLI11_PARSE(app, argc, argv);

  try {
    auto plan = hpt::load_plan(plan_path);
    if (*seeds_opt) plan.n_seeds = seeds;
    if (*evals_opt) plan.max_evals = max_evals;
    if (*seed_opt) plan.experiment_seed = experiment_seed;
    if (*jobs_opt) plan.jobs = jobs;
    plan.validate();

    const auto report = hpt::run_experiment(plan);
    hpt::write_report(report, plan, out_dir);
    std::cout << "wrote reports for " << plan.scenarios.size() << " tasks to "
              << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
