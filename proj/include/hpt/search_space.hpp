#ifndef HPT_SEARCH_SPACE_HPP_
#define HPT_SEARCH_SPACE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hpt/domain.hpp"
#include "hpt/rng.hpp"
#include "hpt/value.hpp"

namespace hpt {

/// An ordered set of named hyperparameter domains. Order is the order of
/// add() calls and fixes the layout of encoded vectors.
class SearchSpace {
public:
  SearchSpace() = default;

  SearchSpace& add(const std::string& name, Domain domain);

  std::size_t dim() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool has(const std::string& name) const;
  std::optional<std::size_t> index_of(const std::string& name) const;

  const std::string& name(std::size_t i) const { return entries_.at(i).name; }
  const Domain& domain(std::size_t i) const { return entries_.at(i).domain; }
  const Domain& domain(const std::string& name) const;

  /// Throws std::invalid_argument when the configuration does not bind
  /// exactly this space's names to in-domain values.
  void validate(const Configuration& config) const;
  bool contains(const Configuration& config) const;

  Configuration sample(Rng& rng) const;

  /// Unit-cube encoding in add() order; requires a valid configuration.
  std::vector<double> encode(const Configuration& config) const;
  Configuration decode(const std::vector<double>& x) const;

  bool operator==(const SearchSpace& other) const;

private:
  struct Entry {
    std::string name;
    Domain domain;
    bool operator==(const Entry& other) const {
      return name == other.name && domain == other.domain;
    }
  };
  std::vector<Entry> entries_;
};

/// Restriction of a configuration to the names of `subspace`. Throws when a
/// name is missing; values are deliberately not range-checked, the source
/// configuration may belong to a wider space.
Configuration project(const Configuration& config, const SearchSpace& subspace);

}  // namespace hpt

#endif  // HPT_SEARCH_SPACE_HPP_
