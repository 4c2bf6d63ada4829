#include "hpt/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "hpt/rng.hpp"
#include "json.hpp"

namespace hpt {

Benchmark::Benchmark(std::string name, SearchSpace space, Oracle oracle)
    : name_(std::move(name)), space_(std::move(space)), oracle_(std::move(oracle)) {
  if (!oracle_) throw std::invalid_argument("benchmark " + name_ + ": no oracle");
}

double Benchmark::evaluate(const Configuration& config) const {
  space_.validate(config);
  return oracle_(config);
}

const std::vector<AdjustmentKind>& all_adjustment_kinds() {
  static const std::vector<AdjustmentKind> kinds = {
      AdjustmentKind::homogeneous, AdjustmentKind::hp_add,
      AdjustmentKind::hp_remove,   AdjustmentKind::range_add,
      AdjustmentKind::range_remove, AdjustmentKind::mixed};
  return kinds;
}

const char* adjustment_kind_name(AdjustmentKind kind) {
  switch (kind) {
    case AdjustmentKind::homogeneous: return "homogeneous";
    case AdjustmentKind::hp_add: return "hp-add";
    case AdjustmentKind::hp_remove: return "hp-remove";
    case AdjustmentKind::range_add: return "range-add";
    case AdjustmentKind::range_remove: return "range-remove";
    case AdjustmentKind::mixed: return "mixed";
  }
  throw std::invalid_argument("bad adjustment kind");
}

AdjustmentKind parse_adjustment_kind(const std::string& name) {
  for (const auto kind : all_adjustment_kinds()) {
    if (name == adjustment_kind_name(kind)) return kind;
  }
  throw std::invalid_argument("unknown adjustment kind: " + name);
}

AdjustmentKind classify_adjustment(const SpaceDecomposition& dec) {
  const bool added_hp = !dec.only_new.empty();
  const bool removed_hp = !dec.only_old.empty();
  bool added_range = false;
  bool removed_range = false;
  for (const auto& p : dec.range_partitions) {
    if (!(p.new_domain == p.both)) added_range = true;
    if (!(p.old_domain == p.both)) removed_range = true;
  }
  const int changes = int(added_hp) + int(removed_hp) + int(added_range) +
                      int(removed_range);
  if (changes == 0) return AdjustmentKind::homogeneous;
  if (changes > 1) return AdjustmentKind::mixed;
  if (added_hp) return AdjustmentKind::hp_add;
  if (removed_hp) return AdjustmentKind::hp_remove;
  if (added_range) return AdjustmentKind::range_add;
  return AdjustmentKind::range_remove;
}

namespace {

// Additive model: weighted squared distance to a per-dimension target in
// unit coordinates, plus a per-choice penalty on categorical dimensions.
// The argmin reproduces the targets bit-exactly, so the minimum is 0.
struct QuadraticModel {
  std::vector<double> weights;                // numeric dims; 0 for categorical
  std::vector<std::vector<double>> penalties; // categorical dims; empty otherwise

  static QuadraticModel for_space(const SearchSpace& space,
                                  const Configuration& argmin,
                                  const std::map<std::string, double>& weight_of,
                                  const std::map<std::string, std::vector<double>>& penalty_of) {
    QuadraticModel m;
    m.weights.resize(space.dim(), 0.0);
    m.penalties.resize(space.dim());
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const auto& name = space.name(i);
      if (space.domain(i).kind() == DomainKind::categorical) {
        m.penalties[i] = penalty_of.at(name);
      } else {
        m.weights[i] = weight_of.at(name);
      }
    }
    m.targets_ = targets(space, argmin);
    return m;
  }

  Benchmark::Oracle oracle(const SearchSpace& space) const {
    QuadraticModel model = *this;
    return [space, model](const Configuration& config) {
      double f = 0.0;
      for (std::size_t i = 0; i < space.dim(); ++i) {
        const auto& value = config.at(space.name(i));
        const auto& domain = space.domain(i);
        if (domain.kind() == DomainKind::categorical) {
          f += model.penalties[i][*domain.choice_index(std::get<std::string>(value))];
        } else {
          const double u = domain.to_unit(value) - model.targets_[i];
          f += model.weights[i] * u * u;
        }
      }
      return f;
    };
  }

 private:
  std::vector<double> targets_;  // unit coordinate of the argmin per dim

  static std::vector<double> targets(const SearchSpace& space,
                                     const Configuration& argmin) {
    std::vector<double> t(space.dim(), 0.0);
    for (std::size_t i = 0; i < space.dim(); ++i) {
      if (space.domain(i).kind() != DomainKind::categorical) {
        t[i] = space.domain(i).to_unit(argmin.at(space.name(i)));
      }
    }
    return t;
  }
};

Value draw_optimum(const Domain& domain, Rng& rng) {
  switch (domain.kind()) {
    case DomainKind::uniform_float:
      return rng.uniform(domain.float_lo(), domain.float_hi());
    case DomainKind::log_uniform_float:
      return std::exp2(rng.uniform(std::log2(domain.float_lo()),
                                   std::log2(domain.float_hi())));
    case DomainKind::uniform_int:
      return domain.int_lo() +
             static_cast<std::int64_t>(rng.uniform_index(
                 static_cast<std::uint64_t>(domain.int_hi() - domain.int_lo() + 1)));
    case DomainKind::categorical:
      return domain.choices()[rng.uniform_index(domain.n_choices())];
  }
  throw std::logic_error("bad domain kind");
}

// Moves a numeric optimum by at most |shift| of the unit range.
Value shift_optimum(const Domain& domain, const Value& opt, double shift) {
  if (domain.kind() == DomainKind::uniform_int) {
    const auto lo = domain.int_lo(), hi = domain.int_hi();
    const auto steps = static_cast<std::int64_t>(shift * static_cast<double>(hi - lo));
    return std::clamp(std::get<std::int64_t>(opt) + steps, lo, hi);
  }
  const double u = std::clamp(domain.to_unit(opt) + shift, 0.0, 1.0);
  if (domain.kind() == DomainKind::log_uniform_float) {
    const double llo = std::log2(domain.float_lo()), lhi = std::log2(domain.float_hi());
    return std::exp2(llo + u * (lhi - llo));
  }
  return domain.float_lo() + u * (domain.float_hi() - domain.float_lo());
}

// Doubles the domain's measure by extending upward.
Domain extend_domain(const Domain& domain) {
  switch (domain.kind()) {
    case DomainKind::uniform_float:
      return Domain::uniform_float(domain.float_lo(),
                                   2.0 * domain.float_hi() - domain.float_lo());
    case DomainKind::log_uniform_float: {
      const double llo = std::log2(domain.float_lo()), lhi = std::log2(domain.float_hi());
      return Domain::log_uniform_float(domain.float_lo(), std::exp2(2.0 * lhi - llo));
    }
    case DomainKind::uniform_int:
      return Domain::uniform_int(domain.int_lo(),
                                 2 * domain.int_hi() - domain.int_lo() + 1);
    default:
      throw std::logic_error("extend_domain: categorical");
  }
}

// Halves the domain's measure by dropping the upper part.
Domain shrink_domain(const Domain& domain) {
  switch (domain.kind()) {
    case DomainKind::uniform_float:
      return Domain::uniform_float(
          domain.float_lo(), 0.5 * (domain.float_lo() + domain.float_hi()));
    case DomainKind::log_uniform_float: {
      const double llo = std::log2(domain.float_lo()), lhi = std::log2(domain.float_hi());
      return Domain::log_uniform_float(domain.float_lo(),
                                       std::exp2(0.5 * (llo + lhi)));
    }
    case DomainKind::uniform_int:
      return Domain::uniform_int(domain.int_lo(),
                                 domain.int_lo() + (domain.int_hi() - domain.int_lo()) / 2);
    default:
      throw std::logic_error("shrink_domain: categorical");
  }
}

// Draws a value uniformly from the part of `extended` above `base`.
Value draw_in_added_part(const Domain& base, const Domain& extended, Rng& rng) {
  switch (base.kind()) {
    case DomainKind::uniform_float:
      return rng.uniform(base.float_hi(), extended.float_hi());
    case DomainKind::log_uniform_float:
      return std::exp2(rng.uniform(std::log2(base.float_hi()),
                                   std::log2(extended.float_hi())));
    case DomainKind::uniform_int:
      return base.int_hi() + 1 +
             static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(
                 extended.int_hi() - base.int_hi())));
    default:
      throw std::logic_error("draw_in_added_part: categorical");
  }
}

const std::vector<std::string>& numeric_names() {
  static const std::vector<std::string> names = {"x", "depth", "lr"};
  return names;
}

}  // namespace

AdjustmentScenario synthetic_scenario(AdjustmentKind kind, std::uint64_t task_seed) {
  Rng rng(fnv1a64(std::string("synthetic|") + adjustment_kind_name(kind) + "|" +
                  std::to_string(task_seed)));

  SearchSpace old_space;
  old_space.add("x", Domain::uniform_float(-1.0, 3.0));
  old_space.add("depth", Domain::uniform_int(1, 16));
  old_space.add("lr", Domain::log_uniform_float(0.0009765625, 1.0));
  old_space.add("act", Domain::categorical({"relu", "tanh", "gelu"}));

  std::map<std::string, double> weight;
  std::map<std::string, std::vector<double>> penalty;
  Configuration old_opt;
  for (std::size_t i = 0; i < old_space.dim(); ++i) {
    const auto& name = old_space.name(i);
    const auto& domain = old_space.domain(i);
    old_opt[name] = draw_optimum(domain, rng);
    if (domain.kind() == DomainKind::categorical) {
      std::vector<double> pens(domain.n_choices());
      const auto best = *domain.choice_index(std::get<std::string>(old_opt[name]));
      for (std::size_t c = 0; c < pens.size(); ++c) {
        pens[c] = c == best ? 0.0 : rng.uniform(0.1, 0.5);
      }
      penalty[name] = std::move(pens);
    } else {
      weight[name] = rng.uniform(0.5, 2.0);
    }
  }

  SearchSpace new_space = old_space;
  Configuration new_opt = old_opt;

  const auto shift_all_numeric = [&] {
    for (const auto& name : numeric_names()) {
      new_opt[name] = shift_optimum(old_space.domain(name), old_opt.at(name),
                                    rng.uniform(-0.2, 0.2));
    }
  };
  const auto add_dimension = [&] {
    SearchSpace extended;
    for (std::size_t i = 0; i < new_space.dim(); ++i) {
      extended.add(new_space.name(i), new_space.domain(i));
    }
    extended.add("extra", Domain::uniform_float(0.0, 1.0));
    new_space = std::move(extended);
    weight["extra"] = rng.uniform(0.5, 2.0);
    new_opt["extra"] = draw_optimum(new_space.domain("extra"), rng);
  };
  const auto extend_one_range = [&] {
    const auto& name = numeric_names()[rng.uniform_index(numeric_names().size())];
    SearchSpace extended;
    for (std::size_t i = 0; i < new_space.dim(); ++i) {
      extended.add(new_space.name(i), new_space.name(i) == name
                                          ? extend_domain(new_space.domain(i))
                                          : new_space.domain(i));
    }
    // the optimum relocates into the added half of the range with prob. 0.5
    if (rng.bernoulli(0.5)) {
      new_opt[name] = draw_in_added_part(new_space.domain(name),
                                         extended.domain(name), rng);
    }
    new_space = std::move(extended);
  };
  const auto shrink_one_range = [&] {
    const auto& name = numeric_names()[rng.uniform_index(numeric_names().size())];
    SearchSpace shrunk;
    for (std::size_t i = 0; i < new_space.dim(); ++i) {
      shrunk.add(new_space.name(i), new_space.name(i) == name
                                        ? shrink_domain(new_space.domain(i))
                                        : new_space.domain(i));
    }
    if (!shrunk.domain(name).contains(new_opt.at(name))) {
      new_opt[name] = draw_optimum(shrunk.domain(name), rng);
    }
    new_space = std::move(shrunk);
  };

  // every adjustment perturbs the objective a little (developers rarely
  // change only the space); the structural change comes on top
  shift_all_numeric();
  switch (kind) {
    case AdjustmentKind::homogeneous:
      break;
    case AdjustmentKind::hp_add:
      add_dimension();
      break;
    case AdjustmentKind::hp_remove: {
      const auto victim = old_space.name(rng.uniform_index(old_space.dim()));
      SearchSpace reduced;
      for (std::size_t i = 0; i < old_space.dim(); ++i) {
        if (old_space.name(i) != victim) reduced.add(old_space.name(i), old_space.domain(i));
      }
      new_space = std::move(reduced);
      new_opt.erase(victim);
      break;
    }
    case AdjustmentKind::range_add:
      extend_one_range();
      break;
    case AdjustmentKind::range_remove:
      shrink_one_range();
      break;
    case AdjustmentKind::mixed:
      add_dimension();
      extend_one_range();
      break;
  }

  AdjustmentScenario scenario;
  scenario.benchmark_name = adjustment_kind_name(kind);
  scenario.task_id = "t" + std::to_string(task_seed);
  scenario.kind = kind;
  const auto old_model = QuadraticModel::for_space(old_space, old_opt, weight, penalty);
  const auto new_model = QuadraticModel::for_space(new_space, new_opt, weight, penalty);
  scenario.old_benchmark = Benchmark(scenario.benchmark_name + "/" +
                                     scenario.task_id + "/old",
                                     old_space, old_model.oracle(old_space));
  scenario.new_benchmark = Benchmark(scenario.benchmark_name + "/" +
                                     scenario.task_id + "/new",
                                     new_space, new_model.oracle(new_space));
  scenario.old_optimal_config = old_opt;
  scenario.new_optimal_config = new_opt;
  scenario.old_optimum = scenario.old_benchmark.evaluate(old_opt);
  scenario.new_optimum = scenario.new_benchmark.evaluate(new_opt);

  if (scenario.old_optimum != 0.0 || scenario.new_optimum != 0.0) {
    throw std::logic_error("synthetic scenario: argmin does not reach 0");
  }
  if (classify_adjustment(decompose(old_space, new_space)) != kind) {
    throw std::logic_error("synthetic scenario: decomposition disagrees with kind");
  }
  return scenario;
}

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

std::pair<std::string, Domain> domain_from_json(const std::string& path,
                                                const json& dim) {
  if (!dim.is_object() || !dim.contains("name") || !dim["name"].is_string() ||
      !dim.contains("type") || !dim["type"].is_string()) {
    parse_fail(path, "space: each dimension needs a name and a type");
  }
  const std::string name = dim["name"].get<std::string>();
  const std::string type = dim["type"].get<std::string>();
  const auto num = [&](const char* field) {
    if (!dim.contains(field) || !dim[field].is_number()) {
      parse_fail(path, "space." + name + ": missing numeric " + field);
    }
    return dim[field].get<double>();
  };
  if (type == "categorical") {
    if (!dim.contains("choices") || !dim["choices"].is_array()) {
      parse_fail(path, "space." + name + ": categorical needs choices");
    }
    std::vector<std::string> choices;
    for (const auto& c : dim["choices"]) {
      if (!c.is_string()) parse_fail(path, "space." + name + ": choices must be strings");
      choices.push_back(c.get<std::string>());
    }
    return {name, Domain::categorical(std::move(choices))};
  }
  if (type == "int") {
    const double lo = num("lo"), hi = num("hi");
    if (lo != std::floor(lo) || hi != std::floor(hi)) {
      parse_fail(path, "space." + name + ": int bounds must be integers");
    }
    return {name, Domain::uniform_int(static_cast<std::int64_t>(lo),
                                      static_cast<std::int64_t>(hi))};
  }
  if (type == "float") return {name, Domain::uniform_float(num("lo"), num("hi"))};
  if (type == "logfloat") return {name, Domain::log_uniform_float(num("lo"), num("hi"))};
  parse_fail(path, "space." + name + ": unknown type " + type);
}

Value value_from_json(const std::string& path, const std::string& dim_name,
                      const Domain& domain, const json& v) {
  if (domain.kind() == DomainKind::categorical) {
    if (!v.is_string()) parse_fail(path, dim_name + ": expected a string");
    return v.get<std::string>();
  }
  if (domain.kind() == DomainKind::uniform_int) {
    if (!v.is_number()) parse_fail(path, dim_name + ": expected a number");
    const double d = v.get<double>();
    if (d != std::floor(d)) parse_fail(path, dim_name + ": expected an integer");
    return static_cast<std::int64_t>(d);
  }
  if (!v.is_number()) parse_fail(path, dim_name + ": expected a number");
  return v.get<double>();
}

std::string canonical_key(const SearchSpace& space, const Configuration& config) {
  std::string key;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    key += space.name(i);
    key += '=';
    key += value_to_string(config.at(space.name(i)));
    key += ';';
  }
  return key;
}

struct TabularEntry {
  Configuration config;
  double objective;
  std::vector<double> units;           // numeric dims, in space order
  std::vector<std::size_t> choices;    // categorical dims, in space order
};

std::pair<std::vector<double>, std::vector<std::size_t>> entry_coords(
    const SearchSpace& space, const Configuration& config) {
  std::vector<double> units;
  std::vector<std::size_t> choices;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto& domain = space.domain(i);
    if (domain.kind() == DomainKind::categorical) {
      choices.push_back(*domain.choice_index(std::get<std::string>(config.at(space.name(i)))));
    } else {
      units.push_back(domain.to_unit(config.at(space.name(i))));
    }
  }
  return {std::move(units), std::move(choices)};
}

}  // namespace

Benchmark load_tabular(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(path, e.what());
  }
  if (!doc.is_object()) parse_fail(path, "top level must be an object");
  if (!doc.contains("name") || !doc["name"].is_string()) {
    parse_fail(path, "name: missing or not a string");
  }
  if (!doc.contains("space") || !doc["space"].is_array() || doc["space"].empty()) {
    parse_fail(path, "space: missing or empty");
  }
  if (!doc.contains("entries") || !doc["entries"].is_array() || doc["entries"].empty()) {
    parse_fail(path, "entries: missing or empty");
  }

  SearchSpace space;
  try {
    for (const auto& dim : doc["space"]) {
      auto [dim_name, domain] = domain_from_json(path, dim);
      space.add(dim_name, std::move(domain));
    }
  } catch (const std::invalid_argument& e) {
    parse_fail(path, std::string("space: ") + e.what());
  }

  bool continuous = false;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const auto kind = space.domain(i).kind();
    continuous = continuous || kind == DomainKind::uniform_float ||
                 kind == DomainKind::log_uniform_float;
  }

  auto entries = std::make_shared<std::vector<TabularEntry>>();
  auto lookup = std::make_shared<std::unordered_map<std::string, double>>();
  std::size_t index = 0;
  for (const auto& raw : doc["entries"]) {
    const std::string where = "entries[" + std::to_string(index++) + "]";
    if (!raw.is_object() || !raw.contains("config") || !raw["config"].is_object() ||
        !raw.contains("objective") || !raw["objective"].is_number()) {
      parse_fail(path, where + ": needs a config object and a numeric objective");
    }
    Configuration config;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const auto& name = space.name(i);
      if (!raw["config"].contains(name)) {
        parse_fail(path, where + ": missing value for " + name);
      }
      config[name] =
          value_from_json(path, where + "." + name, space.domain(i), raw["config"][name]);
    }
    if (raw["config"].size() != space.dim()) {
      parse_fail(path, where + ": has a value for an undeclared hyperparameter");
    }
    try {
      space.validate(config);
    } catch (const std::exception& e) {
      parse_fail(path, where + ": " + e.what());
    }
    const double objective = raw["objective"].get<double>();
    if (!std::isfinite(objective)) parse_fail(path, where + ": objective must be finite");
    const auto key = canonical_key(space, config);
    if (!lookup->emplace(key, objective).second) {
      parse_fail(path, where + ": duplicate entry " + key);
    }
    auto [units, choices] = entry_coords(space, config);
    entries->push_back({std::move(config), objective, std::move(units), std::move(choices)});
  }

  Benchmark::Oracle oracle;
  if (!continuous) {
    oracle = [space, lookup](const Configuration& config) {
      const auto it = lookup->find(canonical_key(space, config));
      if (it == lookup->end()) {
        std::string desc;
        for (const auto& [name, value] : config) {
          desc += (desc.empty() ? "" : ", ") + name + "=" + value_to_string(value);
        }
        throw std::runtime_error("no table entry for {" + desc + "}");
      }
      return it->second;
    };
  } else {
    // nearest stored grid point in unit coordinates (log domains therefore
    // use log-distance); categorical mismatch costs a full unit; first
    // entry wins ties
    oracle = [space, entries](const Configuration& config) {
      const auto [units, choices] = entry_coords(space, config);
      double best = std::numeric_limits<double>::infinity();
      const TabularEntry* pick = nullptr;
      for (const auto& e : *entries) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < units.size(); ++i) {
          const double du = units[i] - e.units[i];
          d2 += du * du;
        }
        for (std::size_t i = 0; i < choices.size(); ++i) {
          if (choices[i] != e.choices[i]) d2 += 1.0;
        }
        if (d2 < best) {
          best = d2;
          pick = &e;
        }
      }
      return pick->objective;
    };
  }
  return Benchmark(doc["name"].get<std::string>(), space, std::move(oracle));
}

}  // namespace hpt
