#include "hpt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"

namespace hpt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Drives one optimizer. Always reaches min_evals; afterwards stops as soon
// as the best-so-far is at or below stop_at, else runs out max_evals. Once
// the optimizer reports constancy the remaining entries are filled without
// further suggest/evaluate calls.
std::vector<double> drive(Optimizer& opt, const Benchmark& benchmark, Rng& rng,
                          std::size_t max_evals, std::size_t min_evals,
                          double stop_at) {
  std::vector<double> best;
  best.reserve(std::min(max_evals, min_evals + 64));
  double cur = kInf;
  while (best.size() < max_evals) {
    if (best.size() >= min_evals && cur <= stop_at) break;
    if (!best.empty() && opt.is_constant()) {
      best.push_back(cur);
      continue;
    }
    const auto config = opt.suggest(rng);
    const double y = benchmark.evaluate(config);
    opt.observe(config, y);
    cur = std::min(cur, y);
    best.push_back(cur);
  }
  return best;
}

double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (const double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

RunTrace run_hpo(const std::string& strategy, const Benchmark& benchmark,
                 std::size_t budget, std::uint64_t seed,
                 const TransferContext* ctx, const TpeParams& params) {
  Rng rng(seed);
  const auto opt = make_optimizer(strategy, benchmark.space(), ctx, rng, params);
  RunTrace trace;
  trace.strategy = strategy;
  trace.task = benchmark.name();
  trace.seed = seed;
  trace.best = drive(*opt, benchmark, rng, budget, budget, -kInf);
  return trace;
}

double compute_target(const std::vector<RunTrace>& control_traces,
                      std::size_t reference_budget) {
  if (control_traces.empty()) {
    throw std::invalid_argument("compute_target: no traces");
  }
  if (reference_budget == 0) {
    throw std::invalid_argument("compute_target: reference budget must be positive");
  }
  double sum = 0.0;
  for (const auto& t : control_traces) {
    if (t.best.size() < reference_budget) {
      throw std::invalid_argument("compute_target: trace shorter than the reference budget");
    }
    sum += t.best[reference_budget - 1];
  }
  return sum / static_cast<double>(control_traces.size());
}

std::optional<std::size_t> evals_to_target(const RunTrace& trace, double target) {
  for (std::size_t i = 0; i < trace.best.size(); ++i) {
    if (trace.best[i] <= target) return i + 1;
  }
  return std::nullopt;
}

std::optional<double> speedup(const std::vector<std::size_t>& control_successes,
                              const std::vector<std::size_t>& treatment_successes) {
  if (control_successes.empty() || treatment_successes.empty()) return std::nullopt;
  const auto count_mean = [](const std::vector<std::size_t>& xs) {
    double s = 0.0;
    for (const auto x : xs) s += static_cast<double>(x);
    return s / static_cast<double>(xs.size());
  };
  return count_mean(control_successes) / count_mean(treatment_successes);
}

double aggregate_geomean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate_geomean: empty input");
  double log_sum = 0.0;
  for (const double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("aggregate_geomean: nonpositive value");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

double glass_delta(const std::vector<double>& treatment_objectives,
                   const std::vector<double>& control_objectives,
                   double std_floor_constant) {
  const double denom = std::max(sample_std(control_objectives), std_floor_constant);
  const double raw =
      (mean(control_objectives) - mean(treatment_objectives)) / denom;
  return std::max(raw, -100.0);
}

double std_floor(const std::vector<double>& control_stds) {
  std::vector<double> positive;
  for (const double s : control_stds) {
    if (s > 0.0) positive.push_back(s);
  }
  if (positive.empty()) return 1e-6;
  std::sort(positive.begin(), positive.end());
  const double h = 0.2 * static_cast<double>(positive.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= positive.size()) return positive.back();
  return positive[lo] + (h - static_cast<double>(lo)) * (positive[lo + 1] - positive[lo]);
}

std::uint64_t run_seed(std::uint64_t experiment_seed, const std::string& benchmark,
                       const std::string& task, const std::string& strategy,
                       std::size_t old_budget, std::uint64_t seed_index) {
  return fnv1a64("v1|exp=" + std::to_string(experiment_seed) + "|scenario=" +
                 benchmark + "|task=" + task + "|strategy=" + strategy +
                 "|old_budget=" + std::to_string(old_budget) + "|seed=" +
                 std::to_string(seed_index));
}

void ExperimentPlan::validate() const {
  if (scenarios.empty()) throw std::invalid_argument("plan: no scenarios");
  if (strategies.empty()) throw std::invalid_argument("plan: no strategies");
  bool any_transfer = false;
  for (const auto& s : strategies) any_transfer = strategy_uses_transfer(s) || any_transfer;
  if (std::set<std::string>(strategies.begin(), strategies.end()).size() !=
      strategies.size()) {
    throw std::invalid_argument("plan: duplicate strategy");
  }
  if (reference_budgets.empty()) throw std::invalid_argument("plan: no reference budgets");
  for (const auto b : reference_budgets) {
    if (b == 0) throw std::invalid_argument("plan: reference budget must be positive");
    if (b > max_evals) {
      throw std::invalid_argument("plan: max_evals below a reference budget");
    }
  }
  if (any_transfer) {
    if (old_budgets.empty()) throw std::invalid_argument("plan: no old budgets");
    for (const auto b : old_budgets) {
      if (b == 0) throw std::invalid_argument("plan: old budget must be positive");
    }
  }
  if (n_seeds == 0) throw std::invalid_argument("plan: n_seeds must be positive");
  if (max_evals == 0) throw std::invalid_argument("plan: max_evals must be positive");
  if (jobs == 0) throw std::invalid_argument("plan: jobs must be positive");
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& sc : scenarios) {
    if (!keys.emplace(sc.benchmark_name, sc.task_id).second) {
      throw std::invalid_argument("plan: duplicate task " + sc.benchmark_name + "/" +
                                  sc.task_id);
    }
  }
}

namespace {

using json = nlohmann::json;

// Per-task raw results: everything metric aggregation needs, nothing more.
struct ArmResult {
  std::string strategy;
  std::size_t old_budget = 0;  // 0 when the strategy takes no old run
  // [reference budget index][seed]
  std::vector<std::vector<std::optional<std::size_t>>> counts;
  std::vector<std::vector<double>> at_ref;
};

struct TaskResult {
  std::vector<double> targets;  // per reference budget
  ArmResult control;            // the TPE control block
  std::vector<ArmResult> arms;  // plan strategy x old budget, plan order
};

std::vector<std::optional<std::size_t>> count_crossings(
    const std::vector<std::vector<double>>& traces, double target) {
  std::vector<std::optional<std::size_t>> out;
  out.reserve(traces.size());
  for (const auto& best : traces) {
    RunTrace t;
    t.best = best;
    out.push_back(evals_to_target(t, target));
  }
  return out;
}

std::vector<std::vector<double>> values_at(
    const std::vector<std::vector<double>>& traces,
    const std::vector<std::size_t>& reference_budgets) {
  std::vector<std::vector<double>> out(reference_budgets.size());
  for (std::size_t r = 0; r < reference_budgets.size(); ++r) {
    out[r].reserve(traces.size());
    for (const auto& best : traces) out[r].push_back(best[reference_budgets[r] - 1]);
  }
  return out;
}

TaskResult run_task(const ExperimentPlan& plan, const AdjustmentScenario& sc) {
  const auto& bench = sc.new_benchmark;
  const std::size_t max_ref =
      *std::max_element(plan.reference_budgets.begin(), plan.reference_budgets.end());
  bool any_transfer = false;
  for (const auto& s : plan.strategies) {
    any_transfer = strategy_uses_transfer(s) || any_transfer;
  }

  // old HPO runs: one max-budget TPE run per seed on the old benchmark;
  // smaller old budgets reuse its prefixes
  std::vector<History> old_histories;
  if (any_transfer) {
    const std::size_t max_old =
        *std::max_element(plan.old_budgets.begin(), plan.old_budgets.end());
    old_histories.reserve(plan.n_seeds);
    for (std::uint64_t seed = 0; seed < plan.n_seeds; ++seed) {
      Rng rng(run_seed(plan.experiment_seed, sc.benchmark_name, sc.task_id, "old",
                       0, seed));
      const auto opt =
          make_optimizer("tpe", sc.old_benchmark.space(), nullptr, rng);
      History h(sc.old_benchmark.space());
      for (std::size_t i = 0; i < max_old; ++i) {
        const auto config = opt->suggest(rng);
        const double y = sc.old_benchmark.evaluate(config);
        opt->observe(config, y);
        h.add(config, y);
      }
      old_histories.push_back(std::move(h));
    }
  }

  // control runs, pass 1: to the largest reference budget, which fixes the
  // targets; pass 2 resumes each run until it crosses the hardest target
  struct LiveRun {
    std::unique_ptr<Optimizer> opt;
    Rng rng;
    std::vector<double> best;
  };
  std::vector<LiveRun> controls;
  controls.reserve(plan.n_seeds);
  for (std::uint64_t seed = 0; seed < plan.n_seeds; ++seed) {
    LiveRun run{nullptr,
                Rng(run_seed(plan.experiment_seed, sc.benchmark_name, sc.task_id,
                             "tpe", 0, seed)),
                {}};
    run.opt = make_optimizer("tpe", bench.space(), nullptr, run.rng);
    run.best = drive(*run.opt, bench, run.rng, max_ref, max_ref, -kInf);
    controls.push_back(std::move(run));
  }

  TaskResult result;
  for (const auto r : plan.reference_budgets) {
    double sum = 0.0;
    for (const auto& run : controls) sum += run.best[r - 1];
    result.targets.push_back(sum / static_cast<double>(plan.n_seeds));
  }
  const double hardest =
      *std::min_element(result.targets.begin(), result.targets.end());

  std::vector<std::vector<double>> control_traces;
  control_traces.reserve(plan.n_seeds);
  for (auto& run : controls) {
    double cur = run.best.back();
    while (run.best.size() < plan.max_evals && cur > hardest) {
      const auto config = run.opt->suggest(run.rng);
      const double y = bench.evaluate(config);
      run.opt->observe(config, y);
      cur = std::min(cur, y);
      run.best.push_back(cur);
    }
    control_traces.push_back(std::move(run.best));
  }
  controls.clear();

  result.control.strategy = "tpe";
  result.control.at_ref = values_at(control_traces, plan.reference_budgets);
  for (const auto target : result.targets) {
    result.control.counts.push_back(count_crossings(control_traces, target));
  }

  // transfer contexts shared across strategies: one per (old budget, seed)
  std::map<std::size_t, std::vector<TransferContext>> contexts;
  if (any_transfer) {
    for (const auto b : plan.old_budgets) {
      auto& per_seed = contexts[b];
      per_seed.reserve(plan.n_seeds);
      for (std::uint64_t seed = 0; seed < plan.n_seeds; ++seed) {
        History prefix(sc.old_benchmark.space());
        const auto& trials = old_histories[seed].trials();
        for (std::size_t i = 0; i < std::min(b, trials.size()); ++i) {
          prefix.add(trials[i].config, trials[i].objective);
        }
        per_seed.push_back(TransferContext::make(std::move(prefix), bench.space()));
      }
    }
  }

  for (const auto& strategy : plan.strategies) {
    const bool transfer = strategy_uses_transfer(strategy);
    const std::vector<std::size_t> budgets =
        transfer ? plan.old_budgets : std::vector<std::size_t>{0};
    for (const auto old_budget : budgets) {
      ArmResult arm;
      arm.strategy = strategy;
      arm.old_budget = old_budget;
      if (strategy == "tpe") {
        // the control runs are this arm, with identical derived seeds
        arm.counts = result.control.counts;
        arm.at_ref = result.control.at_ref;
        result.arms.push_back(std::move(arm));
        continue;
      }
      std::vector<std::vector<double>> traces;
      traces.reserve(plan.n_seeds);
      for (std::uint64_t seed = 0; seed < plan.n_seeds; ++seed) {
        Rng rng(run_seed(plan.experiment_seed, sc.benchmark_name, sc.task_id,
                         strategy, old_budget, seed));
        const TransferContext* ctx =
            transfer ? &contexts.at(old_budget)[seed] : nullptr;
        const auto opt = make_optimizer(strategy, bench.space(), ctx, rng);
        traces.push_back(drive(*opt, bench, rng, plan.max_evals, max_ref, hardest));
      }
      arm.at_ref = values_at(traces, plan.reference_budgets);
      for (const auto target : result.targets) {
        arm.counts.push_back(count_crossings(traces, target));
      }
      result.arms.push_back(std::move(arm));
    }
  }
  return result;
}

std::vector<std::size_t> successes(
    const std::vector<std::optional<std::size_t>>& counts) {
  std::vector<std::size_t> out;
  for (const auto& c : counts) {
    if (c) out.push_back(*c);
  }
  return out;
}

}  // namespace

SpeedupReport run_experiment(const ExperimentPlan& plan) {
  plan.validate();

  std::vector<TaskResult> results(plan.scenarios.size());
  if (plan.jobs <= 1 || plan.scenarios.size() <= 1) {
    for (std::size_t i = 0; i < plan.scenarios.size(); ++i) {
      results[i] = run_task(plan, plan.scenarios[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    const std::size_t n_workers = std::min(plan.jobs, plan.scenarios.size());
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < plan.scenarios.size();
             i = next.fetch_add(1)) {
          results[i] = run_task(plan, plan.scenarios[i]);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  // the std floor is experiment-global, so deltas wait for every task
  std::vector<double> control_stds;
  for (const auto& r : results) {
    for (const auto& objectives : r.control.at_ref) {
      control_stds.push_back(sample_std(objectives));
    }
  }

  SpeedupReport report;
  report.std_floor_constant = std_floor(control_stds);

  for (std::size_t t = 0; t < plan.scenarios.size(); ++t) {
    const auto& sc = plan.scenarios[t];
    const auto& res = results[t];
    for (std::size_t r = 0; r < plan.reference_budgets.size(); ++r) {
      report.targets.push_back({sc.benchmark_name, sc.task_id, "tpe", 0,
                                plan.reference_budgets[r], res.targets[r],
                                plan.n_seeds, 0});
    }
    for (const auto& arm : res.arms) {
      for (std::size_t r = 0; r < plan.reference_budgets.size(); ++r) {
        const auto ref = plan.reference_budgets[r];
        const auto control_ok = successes(res.control.counts[r]);
        const auto arm_ok = successes(arm.counts[r]);
        const std::size_t n_fail = plan.n_seeds - arm_ok.size();

        std::optional<double> mean_count;
        if (!arm_ok.empty()) {
          double s = 0.0;
          for (const auto c : arm_ok) s += static_cast<double>(c);
          mean_count = s / static_cast<double>(arm_ok.size());
        }
        report.mean_evals.push_back({sc.benchmark_name, sc.task_id, arm.strategy,
                                     arm.old_budget, ref, mean_count,
                                     arm_ok.size(), n_fail});
        report.speedups.push_back({sc.benchmark_name, sc.task_id, arm.strategy,
                                   arm.old_budget, ref, speedup(control_ok, arm_ok),
                                   arm_ok.size(), n_fail});
        report.glass_deltas.push_back(
            {sc.benchmark_name, sc.task_id, arm.strategy, arm.old_budget, ref,
             glass_delta(arm.at_ref[r], res.control.at_ref[r],
                         report.std_floor_constant),
             plan.n_seeds, 0});
      }
    }
  }

  // aggregation: tasks -> benchmark family -> global, skipping missing
  // task speedups but disclosing them via the n_fail column
  std::vector<std::string> families;
  for (const auto& sc : plan.scenarios) {
    if (std::find(families.begin(), families.end(), sc.benchmark_name) ==
        families.end()) {
      families.push_back(sc.benchmark_name);
    }
  }
  std::vector<std::pair<std::string, std::size_t>> arms_index;
  for (const auto& strategy : plan.strategies) {
    const std::vector<std::size_t> budgets = strategy_uses_transfer(strategy)
                                                 ? plan.old_budgets
                                                 : std::vector<std::size_t>{0};
    for (const auto b : budgets) arms_index.emplace_back(strategy, b);
  }
  for (const auto& [strategy, old_budget] : arms_index) {
    for (const auto ref : plan.reference_budgets) {
      std::vector<double> family_means;
      std::size_t families_missing = 0;
      for (const auto& family : families) {
        std::vector<double> task_speedups;
        std::size_t missing = 0;
        for (const auto& row : report.speedups) {
          if (row.benchmark == family && row.strategy == strategy &&
              row.old_budget == old_budget && row.reference_budget == ref) {
            if (row.value) {
              task_speedups.push_back(*row.value);
            } else {
              ++missing;
            }
          }
        }
        std::optional<double> family_value;
        if (!task_speedups.empty()) {
          family_value = aggregate_geomean(task_speedups);
          family_means.push_back(*family_value);
        } else {
          ++families_missing;
        }
        report.geomeans.push_back({family, "-", strategy, old_budget, ref,
                                   family_value, task_speedups.size(), missing});
      }
      std::optional<double> global_value;
      if (!family_means.empty()) global_value = aggregate_geomean(family_means);
      report.geomeans.push_back({"-", "-", strategy, old_budget, ref, global_value,
                                 family_means.size(), families_missing});
    }
  }
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << "benchmark,task,strategy,old_budget,reference_budget,value,n_success,n_fail\n";
  for (const auto& row : rows) {
    out << csv_field(row.benchmark) << ',' << csv_field(row.task) << ','
        << csv_field(row.strategy) << ',' << row.old_budget << ','
        << row.reference_budget << ','
        << (row.value ? format_double(*row.value) : std::string()) << ','
        << row.n_success << ',' << row.n_fail << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

json value_or_null(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

void write_report(const SpeedupReport& report, const ExperimentPlan& plan,
                  const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(out_dir + ": " + ec.message());

  write_csv(dir / "targets.csv", report.targets);
  write_csv(dir / "mean_evals.csv", report.mean_evals);
  write_csv(dir / "speedup.csv", report.speedups);
  write_csv(dir / "geomean.csv", report.geomeans);
  write_csv(dir / "glass_delta.csv", report.glass_deltas);

  nlohmann::ordered_json summary;
  summary["version"] = "v1";
  summary["experiment_seed"] = plan.experiment_seed;
  summary["n_seeds"] = plan.n_seeds;
  summary["max_evals"] = plan.max_evals;
  summary["old_budgets"] = plan.old_budgets;
  summary["reference_budgets"] = plan.reference_budgets;
  summary["strategies"] = plan.strategies;
  summary["std_floor"] = report.std_floor_constant;

  auto& benchmarks = summary["benchmarks"];
  benchmarks = nlohmann::ordered_json::object();
  for (const auto& row : report.targets) {
    benchmarks[row.benchmark]["tasks"][row.task]["targets"]
              [std::to_string(row.reference_budget)] = value_or_null(row.value);
  }
  const auto arm_leaf = [](const ReportRow& row) {
    return std::to_string(row.reference_budget);
  };
  for (const auto& row : report.mean_evals) {
    auto& node = benchmarks[row.benchmark]["tasks"][row.task]["arms"][row.strategy]
                           [std::to_string(row.old_budget)][arm_leaf(row)];
    node["mean_evals"] = value_or_null(row.value);
    node["n_success"] = row.n_success;
    node["n_fail"] = row.n_fail;
  }
  for (const auto& row : report.speedups) {
    benchmarks[row.benchmark]["tasks"][row.task]["arms"][row.strategy]
              [std::to_string(row.old_budget)][arm_leaf(row)]["speedup"] =
        value_or_null(row.value);
  }
  for (const auto& row : report.glass_deltas) {
    benchmarks[row.benchmark]["tasks"][row.task]["arms"][row.strategy]
              [std::to_string(row.old_budget)][arm_leaf(row)]["glass_delta"] =
        value_or_null(row.value);
  }
  for (const auto& row : report.geomeans) {
    auto& node = row.benchmark == "-"
                     ? summary["global"]["speedup_geomean"]
                     : benchmarks[row.benchmark]["speedup_geomean"];
    node[row.strategy][std::to_string(row.old_budget)][arm_leaf(row)] =
        value_or_null(row.value);
  }

  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw std::runtime_error((dir / "summary.json").string() + ": cannot open");
  out << summary.dump(2) << '\n';
  if (!out) throw std::runtime_error((dir / "summary.json").string() + ": write failed");
}

namespace {

// Schema errors surface as invalid_argument; load_plan rewraps them with
// the file path attached.
ExperimentPlan parse_plan(const json& doc, const std::filesystem::path& base) {
  ExperimentPlan plan;
  if (!doc.contains("scenarios") || !doc["scenarios"].is_array()) {
    throw std::invalid_argument("scenarios: missing or not an array");
  }
  for (const auto& s : doc["scenarios"]) {
    if (!s.is_object()) {
      throw std::invalid_argument("scenarios: entries must be objects");
    }
    if (s.contains("synthetic")) {
      const std::string which = s["synthetic"].get<std::string>();
      const std::size_t tasks = s.value("tasks", 5);
      const std::vector<AdjustmentKind> kinds =
          which == "all" ? all_adjustment_kinds()
                         : std::vector<AdjustmentKind>{parse_adjustment_kind(which)};
      for (const auto kind : kinds) {
        for (std::uint64_t t = 0; t < tasks; ++t) {
          plan.scenarios.push_back(synthetic_scenario(kind, t));
        }
      }
      continue;
    }
    if (!s.contains("old") || !s.contains("new")) {
      throw std::invalid_argument("scenarios: need synthetic, or old+new files");
    }
    const auto resolve = [&](const std::string& p) {
      const std::filesystem::path fp(p);
      return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    AdjustmentScenario sc;
    sc.old_benchmark = load_tabular(resolve(s["old"].get<std::string>()));
    sc.new_benchmark = load_tabular(resolve(s["new"].get<std::string>()));
    sc.benchmark_name = s.value("name", sc.new_benchmark.name());
    sc.task_id = s.value("task", std::string("main"));
    sc.kind = classify_adjustment(
        decompose(sc.old_benchmark.space(), sc.new_benchmark.space()));
    plan.scenarios.push_back(std::move(sc));
  }

  if (!doc.contains("strategies") || !doc["strategies"].is_array()) {
    throw std::invalid_argument("strategies: missing or not an array");
  }
  for (const auto& s : doc["strategies"]) {
    plan.strategies.push_back(s.get<std::string>());
  }

  const auto budgets = [&](const char* field, std::vector<std::size_t>& into) {
    if (!doc.contains(field)) return;
    if (!doc[field].is_array()) {
      throw std::invalid_argument(std::string(field) + ": must be an array");
    }
    into.clear();
    for (const auto& b : doc[field]) into.push_back(b.get<std::size_t>());
  };
  budgets("old_budgets", plan.old_budgets);
  budgets("reference_budgets", plan.reference_budgets);
  plan.n_seeds = doc.value("seeds", plan.n_seeds);
  plan.max_evals = doc.value("max_evals", plan.max_evals);
  plan.experiment_seed = doc.value("experiment_seed", plan.experiment_seed);

  plan.validate();
  return plan;
}

}  // namespace

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw std::runtime_error(path + ": top level must be an object");
  }
  try {
    return parse_plan(doc, std::filesystem::path(path).parent_path());
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace hpt
