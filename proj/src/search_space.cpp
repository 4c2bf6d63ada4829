#include "hpt/search_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace hpt {

SearchSpace& SearchSpace::add(const std::string& name, Domain domain) {
  if (name.empty()) {
    throw std::invalid_argument("hyperparameter name must not be empty");
  }
  if (has(name)) {
    throw std::invalid_argument("duplicate hyperparameter name: " + name);
  }
  entries_.push_back(Entry{name, std::move(domain)});
  return *this;
}

bool SearchSpace::has(const std::string& name) const {
  return index_of(name).has_value();
}

std::optional<std::size_t> SearchSpace::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

const Domain& SearchSpace::domain(const std::string& name) const {
  const auto idx = index_of(name);
  if (!idx) {
    throw std::invalid_argument("unknown hyperparameter: " + name);
  }
  return entries_[*idx].domain;
}

void SearchSpace::validate(const Configuration& config) const {
  for (const auto& entry : entries_) {
    const auto it = config.find(entry.name);
    if (it == config.end()) {
      throw std::invalid_argument("configuration is missing hyperparameter: " + entry.name);
    }
    if (!entry.domain.contains(it->second)) {
      throw std::invalid_argument("value for " + entry.name + " is outside " +
                                  entry.domain.describe());
    }
  }
  if (config.size() != entries_.size()) {
    for (const auto& [name, value] : config) {
      if (!has(name)) {
        throw std::invalid_argument("configuration has unknown hyperparameter: " + name);
      }
    }
  }
}

bool SearchSpace::contains(const Configuration& config) const {
  if (config.size() != entries_.size()) return false;
  return std::all_of(entries_.begin(), entries_.end(), [&](const Entry& entry) {
    const auto it = config.find(entry.name);
    return it != config.end() && entry.domain.contains(it->second);
  });
}

Configuration SearchSpace::sample(Rng& rng) const {
  Configuration config;
  for (const auto& entry : entries_) {
    config[entry.name] = entry.domain.sample(rng);
  }
  return config;
}

std::vector<double> SearchSpace::encode(const Configuration& config) const {
  validate(config);
  std::vector<double> x;
  x.reserve(entries_.size());
  for (const auto& entry : entries_) {
    x.push_back(entry.domain.to_unit(config.at(entry.name)));
  }
  return x;
}

Configuration SearchSpace::decode(const std::vector<double>& x) const {
  if (x.size() != entries_.size()) {
    throw std::invalid_argument("encoded vector length does not match space dimension");
  }
  Configuration config;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    config[entries_[i].name] = entries_[i].domain.from_unit(x[i]);
  }
  return config;
}

bool SearchSpace::operator==(const SearchSpace& other) const {
  return entries_ == other.entries_;
}

Configuration project(const Configuration& config, const SearchSpace& subspace) {
  Configuration out;
  for (std::size_t i = 0; i < subspace.dim(); ++i) {
    const auto& name = subspace.name(i);
    const auto it = config.find(name);
    if (it == config.end()) {
      throw std::invalid_argument("project: configuration is missing " + name);
    }
    out[name] = it->second;
  }
  return out;
}

}  // namespace hpt
