#ifndef HPT_HARNESS_HPP_
#define HPT_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpt/benchmarks.hpp"
#include "hpt/optimizer.hpp"

namespace hpt {

/// Best-so-far objective after each evaluation of one optimization run.
struct RunTrace {
  std::string strategy;
  std::string task;
  std::uint64_t seed = 0;
  std::vector<double> best;  // non-increasing
};

/// Runs suggest -> evaluate -> observe for `budget` evaluations. ctx is
/// required for transfer strategies and must be absent for tpe/random.
RunTrace run_hpo(const std::string& strategy, const Benchmark& benchmark,
                 std::size_t budget, std::uint64_t seed,
                 const TransferContext* ctx = nullptr,
                 const TpeParams& params = {});

/// Mean best-so-far at the (1-indexed) reference evaluation across traces.
double compute_target(const std::vector<RunTrace>& control_traces,
                      std::size_t reference_budget);

/// 1-indexed first evaluation whose best-so-far reaches the target;
/// nullopt when the trace never does.
std::optional<std::size_t> evals_to_target(const RunTrace& trace, double target);

/// Ratio of mean evaluation counts, successes only. nullopt when either
/// side has no successful run.
std::optional<double> speedup(const std::vector<std::size_t>& control_successes,
                              const std::vector<std::size_t>& treatment_successes);

/// exp(mean(log x)). Rejects empty input and nonpositive values.
double aggregate_geomean(const std::vector<double>& values);

/// (mean(control) - mean(treatment)) / max(std(control), floor), clipped
/// to [-100, inf). Positive favors the treatment under minimization.
double glass_delta(const std::vector<double>& treatment_objectives,
                   const std::vector<double>& control_objectives,
                   double std_floor_constant);

/// 0.2-quantile (linear interpolation) of the positive entries; 1e-6 when
/// every entry is zero or the input is empty.
double std_floor(const std::vector<double>& control_stds);

/// Stable per-run rng seed. Version-pinned: changing this changes every
/// report, so the derivation string carries an explicit "v1".
std::uint64_t run_seed(std::uint64_t experiment_seed, const std::string& benchmark,
                       const std::string& task, const std::string& strategy,
                       std::size_t old_budget, std::uint64_t seed_index);

struct ExperimentPlan {
  std::vector<AdjustmentScenario> scenarios;
  std::vector<std::string> strategies;
  std::vector<std::size_t> old_budgets = {10, 20, 40};
  std::vector<std::size_t> reference_budgets = {10, 20, 40};
  std::size_t n_seeds = 100;
  std::size_t max_evals = 400;
  std::uint64_t experiment_seed = 0;
  std::size_t jobs = 1;

  void validate() const;
};

/// Parses a plan file; relative benchmark paths resolve against the plan's
/// directory. Scenario entries either reference synthetic kinds
/// ({"synthetic": "range-add"|"all", "tasks": N}) or a pair of benchmark
/// files ({"name": ..., "old": path, "new": path}).
ExperimentPlan load_plan(const std::string& path);

/// One line of a metric table. Aggregate rows use "-" for collapsed keys;
/// old_budget is 0 for strategies that take no old run.
struct ReportRow {
  std::string benchmark;
  std::string task;
  std::string strategy;
  std::size_t old_budget = 0;
  std::size_t reference_budget = 0;
  std::optional<double> value;
  std::size_t n_success = 0;
  std::size_t n_fail = 0;
};

struct SpeedupReport {
  std::vector<ReportRow> targets;       // TPE mean best-so-far per reference budget
  std::vector<ReportRow> mean_evals;    // mean evaluations-to-target, successes only
  std::vector<ReportRow> speedups;      // ratio of means vs the TPE control
  std::vector<ReportRow> geomeans;      // per-benchmark aggregates plus global rows
  std::vector<ReportRow> glass_deltas;  // objective improvement at reference budgets
  double std_floor_constant = 0.0;
};

/// Runs the full protocol: per task, TPE old runs (transfer contexts), TPE
/// control runs (targets + control counts), every planned strategy, then
/// metric aggregation in plan order.
SpeedupReport run_experiment(const ExperimentPlan& plan);

/// Writes one CSV per metric family plus summary.json into out_dir
/// (created if missing). Byte-deterministic for a fixed report.
void write_report(const SpeedupReport& report, const ExperimentPlan& plan,
                  const std::string& out_dir);

}  // namespace hpt

#endif  // HPT_HARNESS_HPP_
