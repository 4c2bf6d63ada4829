#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hpt/tpe.hpp"

using namespace hpt;

namespace {

SearchSpace unit_float_space() {
  SearchSpace s;
  s.add("x", Domain::uniform_float(0.0, 1.0));
  return s;
}

// Good cluster near 0.2 with low objectives, bad cluster near 0.8.
History two_cluster_history() {
  History h(unit_float_space());
  Rng rng(42);
  for (int i = 0; i < 5; ++i) {
    h.add({{"x", 0.2 + 0.02 * rng.uniform()}}, 0.1 * rng.uniform());
  }
  for (int i = 0; i < 15; ++i) {
    h.add({{"x", 0.8 + 0.05 * (rng.uniform() - 0.5)}}, 1.0 + rng.uniform());
  }
  return h;
}

}  // namespace

TEST_CASE("history validates trials") {
  History h(unit_float_space());
  CHECK_THROWS_AS(h.add({{"x", 2.0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(h.add({{"x", 0.5}}, std::nan("")), std::invalid_argument);
  h.add({{"x", 0.5}}, 1.0);
  CHECK(h.size() == 1);
}

TEST_CASE("good split size follows max(dim+1, ceil(gamma N))") {
  const auto space = unit_float_space();
  TpeParams params;  // gamma 0.15

  History h8(space);
  Rng rng(1);
  for (int i = 0; i < 8; ++i) h8.add(space.sample(rng), rng.uniform());
  const auto m8 = fit_tpe(h8, params);
  CHECK(m8.good.n_points() == 2);  // max(2, ceil(1.2))
  CHECK(m8.bad.n_points() == 6);

  History h100(space);
  for (int i = 0; i < 100; ++i) h100.add(space.sample(rng), rng.uniform());
  const auto m100 = fit_tpe(h100, params);
  CHECK(m100.good.n_points() == 15);  // ceil(0.15 * 100)
  CHECK(m100.bad.n_points() == 85);

  History h3(space);
  for (int i = 0; i < 3; ++i) h3.add(space.sample(rng), rng.uniform());
  CHECK_THROWS_AS(fit_tpe(h3, params), std::invalid_argument);
}

TEST_CASE("good split takes the lowest objectives, ties by evaluation order") {
  const auto space = unit_float_space();
  History h(space);
  const double objectives[] = {0.5, 0.1, 0.5, 0.9, 0.1, 0.7, 0.8, 0.95};
  for (int i = 0; i < 8; ++i) h.add({{"x", 0.1 * i + 0.05}}, objectives[i]);
  const auto model = fit_tpe(h, {});
  // n_good = 2: the two 0.1-objective trials, earliest first
  REQUIRE(model.good.n_points() == 2);
  const auto u0 = space.encode({{"x", 0.15}});
  const auto u4 = space.encode({{"x", 0.45}});
  const double at_good = model.good.log_density_unit(u0) + model.good.log_density_unit(u4);
  const auto u3 = space.encode({{"x", 0.35}});
  CHECK(at_good / 2 > model.good.log_density_unit(u3));
}

TEST_CASE("suggestions chase the good cluster") {
  auto h = two_cluster_history();
  TpeParams params;
  params.gamma = 0.25;  // the five low-objective trials
  const auto model = fit_tpe(h, params);
  REQUIRE(model.good.n_points() == 5);
  int low_side = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    Rng rng(1000 + r);
    const auto c = suggest_tpe(model, rng, 64);
    if (std::get<double>(c.at("x")) <= 0.5) ++low_side;
  }
  CHECK(low_side >= 950);
}

TEST_CASE("a single candidate is returned unchanged") {
  const auto h = two_cluster_history();
  const auto model = fit_tpe(h, {});
  Rng used(77), mirror(77);
  const auto suggestion = suggest_tpe(model, used, 1);
  const auto expected = model.good.space().decode(model.good.sample_unit(mirror, model.bandwidth_factor));
  CHECK(suggestion == expected);
}

TEST_CASE("identical good and bad estimators return the first candidate") {
  const auto space = unit_float_space();
  History h(space);
  Rng rng(9);
  for (int i = 0; i < 8; ++i) h.add(space.sample(rng), rng.uniform());
  auto model = fit_tpe(h, {});
  model.bad = model.good;  // constant acquisition
  Rng used(78), mirror(78);
  const auto suggestion = suggest_tpe(model, used, 16);
  const auto expected = model.good.space().decode(model.good.sample_unit(mirror, model.bandwidth_factor));
  CHECK(suggestion == expected);
}

TEST_CASE("tpe_step branch order: random draw, then model threshold") {
  SearchSpace space;
  space.add("a", Domain::uniform_float(0, 1))
      .add("b", Domain::uniform_float(0, 1))
      .add("c", Domain::uniform_float(0, 1));
  TpeParams params;
  params.random_fraction = 0.0;

  SUBCASE("empty history falls back to the prior") {
    History h(space);
    Rng used(5), mirror(5);
    const auto got = tpe_step(h, used, params);
    mirror.uniform();  // the consumed random-branch draw
    CHECK(got == space.sample(mirror));
  }

  SUBCASE("below threshold still prior, at threshold the model kicks in") {
    History h(space);
    Rng fill(6);
    for (int i = 0; i < 7; ++i) h.add(space.sample(fill), fill.uniform());
    {
      Rng used(7), mirror(7);
      const auto got = tpe_step(h, used, params);  // |h| = 7 < 8
      mirror.uniform();
      CHECK(got == space.sample(mirror));
    }
    h.add(space.sample(fill), fill.uniform());  // |h| = 8 = 2*(3+1)
    {
      Rng used(7), mirror(7);
      const auto got = tpe_step(h, used, params);
      mirror.uniform();
      const auto expected = suggest_tpe(fit_tpe(h, params), mirror, params.n_candidates);
      CHECK(got == expected);
    }
  }

  SUBCASE("random_fraction one always samples the prior") {
    History h(space);
    Rng fill(8);
    for (int i = 0; i < 20; ++i) h.add(space.sample(fill), fill.uniform());
    TpeParams all_random;
    all_random.random_fraction = 1.0;
    for (int r = 0; r < 10; ++r) {
      Rng used(100 + r), mirror(100 + r);
      const auto got = tpe_step(h, used, all_random);
      mirror.uniform();
      CHECK(got == space.sample(mirror));
    }
  }
}

TEST_CASE("suggestions are deterministic and valid") {
  const auto h = two_cluster_history();
  for (int r = 0; r < 20; ++r) {
    Rng a(500 + r), b(500 + r);
    const auto ca = tpe_step(h, a, {});
    const auto cb = tpe_step(h, b, {});
    CHECK(ca == cb);
    CHECK(h.space().contains(ca));
  }
}

TEST_CASE("positive affine objective maps leave suggestions unchanged") {
  const auto space = unit_float_space();
  History raw(space), mapped(space);
  Rng fill(11);
  for (int i = 0; i < 25; ++i) {
    const auto c = space.sample(fill);
    const double y = fill.uniform();
    raw.add(c, y);
    mapped.add(c, 2.0 * y + 5.0);
  }
  for (int r = 0; r < 10; ++r) {
    Rng a(900 + r), b(900 + r);
    CHECK(tpe_step(raw, a, {}) == tpe_step(mapped, b, {}));
  }
}

TEST_CASE("random strategy equals the prior") {
  const auto space = unit_float_space();
  Rng a(13), b(13);
  for (int i = 0; i < 20; ++i) {
    CHECK(suggest_random(space, a) == space.sample(b));
  }
}
