#ifndef HPT_BENCHMARKS_HPP_
#define HPT_BENCHMARKS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hpt/decompose.hpp"
#include "hpt/search_space.hpp"
#include "hpt/value.hpp"

namespace hpt {

/// Deterministic objective (minimized) over one search space.
class Benchmark {
 public:
  using Oracle = std::function<double(const Configuration&)>;

  Benchmark() = default;
  Benchmark(std::string name, SearchSpace space, Oracle oracle);

  const std::string& name() const { return name_; }
  const SearchSpace& space() const { return space_; }

  /// Validates the configuration, then returns the oracle value.
  double evaluate(const Configuration& config) const;

 private:
  std::string name_;
  SearchSpace space_;
  Oracle oracle_;
};

enum class AdjustmentKind {
  homogeneous,   // objective changed, space identical
  hp_add,        // one dimension added
  hp_remove,     // one dimension removed
  range_add,     // one numeric domain extended
  range_remove,  // one numeric domain shrunk
  mixed,         // several of the above at once
};

const std::vector<AdjustmentKind>& all_adjustment_kinds();
const char* adjustment_kind_name(AdjustmentKind kind);
AdjustmentKind parse_adjustment_kind(const std::string& name);

/// Reads the structural change off a decomposition.
AdjustmentKind classify_adjustment(const SpaceDecomposition& decomposition);

/// One old/new benchmark pair under a single adjustment kind.
struct AdjustmentScenario {
  std::string benchmark_name;  // scenario family, used for aggregation
  std::string task_id;
  AdjustmentKind kind = AdjustmentKind::homogeneous;
  Benchmark old_benchmark;
  Benchmark new_benchmark;
  Configuration old_optimal_config;  // argmin of the old objective
  Configuration new_optimal_config;  // argmin of the new objective
  double old_optimum = 0.0;          // objective value at the old argmin
  double new_optimum = 0.0;          // objective value at the new argmin
};

/// Builds a deterministic shifted-quadratic scenario of the given kind.
/// The new objective's exact minimum and argmin are recorded on the result.
AdjustmentScenario synthetic_scenario(AdjustmentKind kind, std::uint64_t task_seed);

/// Loads a lookup-table benchmark from a JSON file. All-discrete spaces
/// resolve configurations by exact key; spaces with continuous dimensions
/// fall back to the nearest stored grid point.
Benchmark load_tabular(const std::string& path);

}  // namespace hpt

#endif  // HPT_BENCHMARKS_HPP_
