#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "hpt/benchmarks.hpp"
#include "hpt/rng.hpp"

using namespace hpt;

namespace {

std::string write_file(const std::string& name, const std::string& text) {
  std::ofstream out(name);
  out << text;
  return name;
}

double as_double(const Value& v) { return std::get<double>(v); }

}  // namespace

TEST_CASE("discrete table resolves by exact lookup") {
  const auto path = write_file("tab_exact.json", R"({
    "name": "toy",
    "space": [{"name": "k", "type": "int", "lo": 0, "hi": 1}],
    "entries": [
      {"config": {"k": 0}, "objective": 0.25},
      {"config": {"k": 1}, "objective": 0.75}
    ]
  })");
  const auto bench = load_tabular(path);
  CHECK(bench.name() == "toy");
  CHECK(bench.evaluate({{"k", std::int64_t{0}}}) == 0.25);
  CHECK(bench.evaluate({{"k", std::int64_t{1}}}) == 0.75);
}

TEST_CASE("a discrete config without a table entry fails with the config named") {
  const auto path = write_file("tab_sparse.json", R"({
    "name": "sparse",
    "space": [{"name": "k", "type": "int", "lo": 0, "hi": 2}],
    "entries": [
      {"config": {"k": 0}, "objective": 0.1},
      {"config": {"k": 1}, "objective": 0.2}
    ]
  })");
  const auto bench = load_tabular(path);
  try {
    bench.evaluate({{"k", std::int64_t{2}}});
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("k=2") != std::string::npos);
  }
}

TEST_CASE("entry outside the declared domain is a parse error") {
  const auto path = write_file("tab_bad_entry.json", R"({
    "name": "bad",
    "space": [{"name": "k", "type": "int", "lo": 0, "hi": 1}],
    "entries": [{"config": {"k": 7}, "objective": 0.5}]
  })");
  CHECK_THROWS_AS(load_tabular(path), std::runtime_error);
}

TEST_CASE("duplicate entries are a parse error") {
  const auto path = write_file("tab_dup.json", R"({
    "name": "dup",
    "space": [{"name": "k", "type": "int", "lo": 0, "hi": 1}],
    "entries": [
      {"config": {"k": 0}, "objective": 0.1},
      {"config": {"k": 0}, "objective": 0.2}
    ]
  })");
  try {
    load_tabular(path);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
}

TEST_CASE("schema violations carry the path and offending field") {
  const auto missing_type = write_file("tab_no_type.json", R"({
    "name": "b", "space": [{"name": "k", "lo": 0, "hi": 1}],
    "entries": [{"config": {"k": 0}, "objective": 0.1}]
  })");
  try {
    load_tabular(missing_type);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("tab_no_type.json") != std::string::npos);
  }

  const auto bad_bounds = write_file("tab_frac_int.json", R"({
    "name": "b", "space": [{"name": "k", "type": "int", "lo": 0.5, "hi": 2}],
    "entries": [{"config": {"k": 1}, "objective": 0.1}]
  })");
  CHECK_THROWS_AS(load_tabular(bad_bounds), std::runtime_error);

  const auto extra_key = write_file("tab_extra_key.json", R"({
    "name": "b", "space": [{"name": "k", "type": "int", "lo": 0, "hi": 1}],
    "entries": [{"config": {"k": 0, "zz": 1}, "objective": 0.1}]
  })");
  CHECK_THROWS_AS(load_tabular(extra_key), std::runtime_error);

  const auto no_entries = write_file("tab_empty.json", R"({
    "name": "b", "space": [{"name": "k", "type": "int", "lo": 0, "hi": 1}],
    "entries": []
  })");
  CHECK_THROWS_AS(load_tabular(no_entries), std::runtime_error);

  CHECK_THROWS_AS(load_tabular("does_not_exist.json"), std::runtime_error);

  const auto not_json = write_file("tab_syntax.json", "{ not json");
  CHECK_THROWS_AS(load_tabular(not_json), std::runtime_error);
}

TEST_CASE("continuous dimensions resolve to the nearest grid point") {
  const auto path = write_file("tab_grid.json", R"({
    "name": "grid",
    "space": [{"name": "x", "type": "float", "lo": 0.0, "hi": 1.0}],
    "entries": [
      {"config": {"x": 0.0}, "objective": 10.0},
      {"config": {"x": 1.0}, "objective": 20.0}
    ]
  })");
  const auto bench = load_tabular(path);
  CHECK(bench.evaluate({{"x", 0.4}}) == 10.0);
  CHECK(bench.evaluate({{"x", 0.6}}) == 20.0);
  CHECK(bench.evaluate({{"x", 0.5}}) == 10.0);  // tie: first entry wins
}

TEST_CASE("log domains measure nearest in log space") {
  const auto path = write_file("tab_log.json", R"({
    "name": "loggrid",
    "space": [{"name": "lr", "type": "logfloat", "lo": 0.25, "hi": 4.0}],
    "entries": [
      {"config": {"lr": 0.25}, "objective": 1.0},
      {"config": {"lr": 4.0}, "objective": 2.0}
    ]
  })");
  const auto bench = load_tabular(path);
  // 1.5 is linearly nearer 0.25 but log-nearer 4.0
  CHECK(bench.evaluate({{"lr", 1.5}}) == 2.0);
  CHECK(bench.evaluate({{"lr", 0.5}}) == 1.0);
}

TEST_CASE("categorical mismatch outweighs a small numeric gap") {
  const auto path = write_file("tab_mixed.json", R"({
    "name": "mixed",
    "space": [
      {"name": "act", "type": "categorical", "choices": ["a", "b"]},
      {"name": "x", "type": "float", "lo": 0.0, "hi": 1.0}
    ],
    "entries": [
      {"config": {"act": "a", "x": 0.0}, "objective": 1.0},
      {"config": {"act": "b", "x": 0.9}, "objective": 2.0}
    ]
  })");
  const auto bench = load_tabular(path);
  CHECK(bench.evaluate({{"act", std::string("a")}, {"x", 0.9}}) == 1.0);
  CHECK(bench.evaluate({{"act", std::string("b")}, {"x", 0.05}}) == 2.0);
}

TEST_CASE("evaluation rejects invalid configurations") {
  const auto path = write_file("tab_valid.json", R"({
    "name": "v",
    "space": [{"name": "k", "type": "int", "lo": 0, "hi": 1}],
    "entries": [{"config": {"k": 0}, "objective": 0.1}]
  })");
  const auto bench = load_tabular(path);
  CHECK_THROWS_AS(bench.evaluate({{"k", std::int64_t{9}}}), std::invalid_argument);
  CHECK_THROWS_AS(bench.evaluate({}), std::invalid_argument);
}

TEST_CASE("oracles are deterministic") {
  const auto scenario = synthetic_scenario(AdjustmentKind::mixed, 4);
  Rng rng(77);
  const auto probe = scenario.new_benchmark.space().sample(rng);
  const double first = scenario.new_benchmark.evaluate(probe);
  for (int i = 0; i < 100; ++i) {
    CHECK(scenario.new_benchmark.evaluate(probe) == first);
  }
}

TEST_CASE("synthetic scenarios are bit-identical for a repeated task seed") {
  for (const auto kind : all_adjustment_kinds()) {
    const auto a = synthetic_scenario(kind, 3);
    const auto b = synthetic_scenario(kind, 3);
    CHECK(a.old_benchmark.space() == b.old_benchmark.space());
    CHECK(a.new_benchmark.space() == b.new_benchmark.space());
    CHECK(a.new_optimal_config == b.new_optimal_config);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
      const auto probe = a.new_benchmark.space().sample(rng);
      CHECK(a.new_benchmark.evaluate(probe) == b.new_benchmark.evaluate(probe));
    }
  }
}

TEST_CASE("the recorded optimum is exact and globally minimal") {
  for (const auto kind : all_adjustment_kinds()) {
    CAPTURE(adjustment_kind_name(kind));
    const auto scenario = synthetic_scenario(kind, 1);
    CHECK(scenario.new_optimum == 0.0);
    CHECK(scenario.new_benchmark.evaluate(scenario.new_optimal_config) == 0.0);
    CHECK(scenario.old_benchmark.evaluate(scenario.old_optimal_config) == 0.0);
    Rng rng(11);
    double best_probe = 1e300;
    for (int i = 0; i < 100000; ++i) {
      const auto probe = scenario.new_benchmark.space().sample(rng);
      best_probe = std::min(best_probe, scenario.new_benchmark.evaluate(probe));
    }
    CHECK(best_probe >= scenario.new_optimum);
  }
}

TEST_CASE("every kind's decomposition matches its declared structure") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto homog = synthetic_scenario(AdjustmentKind::homogeneous, seed);
    CHECK(homog.old_benchmark.space() == homog.new_benchmark.space());

    const auto add = synthetic_scenario(AdjustmentKind::hp_add, seed);
    CHECK(add.new_benchmark.space().dim() == add.old_benchmark.space().dim() + 1);
    auto add_dec = decompose(add.old_benchmark.space(), add.new_benchmark.space());
    REQUIRE(add_dec.only_new.dim() == 1);
    CHECK(add_dec.only_new.name(0) == "extra");
    CHECK(add_dec.only_old.empty());

    const auto rem = synthetic_scenario(AdjustmentKind::hp_remove, seed);
    CHECK(rem.new_benchmark.space().dim() == rem.old_benchmark.space().dim() - 1);
    auto rem_dec = decompose(rem.old_benchmark.space(), rem.new_benchmark.space());
    CHECK(rem_dec.only_old.dim() == 1);
    CHECK(rem_dec.only_new.empty());

    const auto radd = synthetic_scenario(AdjustmentKind::range_add, seed);
    auto radd_dec = decompose(radd.old_benchmark.space(), radd.new_benchmark.space());
    REQUIRE(radd_dec.range_partitions.size() == 1);
    CHECK(radd_dec.range_partitions[0].only_new_fraction == 0.5);

    const auto rrem = synthetic_scenario(AdjustmentKind::range_remove, seed);
    auto rrem_dec = decompose(rrem.old_benchmark.space(), rrem.new_benchmark.space());
    REQUIRE(rrem_dec.range_partitions.size() == 1);
    CHECK(rrem_dec.range_partitions[0].only_new_fraction == 0.0);
    CHECK_FALSE(rrem_dec.range_partitions[0].old_domain ==
                rrem_dec.range_partitions[0].both);

    const auto mix = synthetic_scenario(AdjustmentKind::mixed, seed);
    auto mix_dec = decompose(mix.old_benchmark.space(), mix.new_benchmark.space());
    CHECK(mix_dec.only_new.dim() == 1);
    REQUIRE(mix_dec.range_partitions.size() == 1);
    CHECK(mix_dec.range_partitions[0].only_new_fraction == 0.5);

    for (const auto kind : all_adjustment_kinds()) {
      const auto s = synthetic_scenario(kind, seed);
      CHECK(classify_adjustment(decompose(s.old_benchmark.space(),
                                          s.new_benchmark.space())) == kind);
    }
  }
}

TEST_CASE("homogeneous adjustment shifts each numeric optimum by at most a fifth of its range") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = synthetic_scenario(AdjustmentKind::homogeneous, seed);
    const auto& space = s.new_benchmark.space();
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const auto& name = space.name(i);
      const auto& domain = space.domain(i);
      if (domain.kind() == DomainKind::categorical) {
        CHECK(s.new_optimal_config.at(name) == s.old_optimal_config.at(name));
      } else {
        const double du = domain.to_unit(s.new_optimal_config.at(name)) -
                          domain.to_unit(s.old_optimal_config.at(name));
        CHECK(std::abs(du) <= 0.2 + 1e-9);
      }
    }
  }
}

TEST_CASE("range-add relocates the optimum into the added region about half the time") {
  int relocated = 0;
  const int n = 60;
  for (std::uint64_t seed = 0; seed < n; ++seed) {
    const auto s = synthetic_scenario(AdjustmentKind::range_add, seed);
    const auto dec = decompose(s.old_benchmark.space(), s.new_benchmark.space());
    REQUIRE(dec.range_partitions.size() == 1);
    const auto& p = dec.range_partitions[0];
    if (p.in_only_new(s.new_optimal_config.at(p.name))) ++relocated;
  }
  // binomial(60, 0.5): 4 sigma is ~15.5
  CHECK(relocated >= 15);
  CHECK(relocated <= 45);
}

TEST_CASE("kind names round-trip through the parser") {
  for (const auto kind : all_adjustment_kinds()) {
    CHECK(parse_adjustment_kind(adjustment_kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_adjustment_kind("sideways"), std::invalid_argument);
}
