#ifndef HPT_DECOMPOSE_HPP_
#define HPT_DECOMPOSE_HPP_

#include <string>
#include <vector>

#include "hpt/rng.hpp"
#include "hpt/search_space.hpp"
#include "hpt/value.hpp"

namespace hpt {

/// A shared hyperparameter whose numeric range (or choice set) changed while
/// keeping a non-empty overlap. The prior splits its new domain into the
/// overlap and the freshly added region, and its old domain into the overlap
/// and the removed region.
struct RangePartition {
  std::string name;
  Domain both;        // intersection, new-side choice order
  Domain old_domain;
  Domain new_domain;
  double only_new_fraction = 0.0;  // prior mass of (new \ both) relative to new

  bool in_only_old(const Value& v) const;
  bool in_only_new(const Value& v) const;

  /// Prior draw restricted to the added region (new \ both). Requires
  /// only_new_fraction > 0.
  Value sample_only_new(Rng& rng) const;
};

/// Split of an old and a new search space by hyperparameter name: the part
/// exclusive to each side and the shared part restricted to the overlap.
/// A shared name whose domain kind changed, or whose domains no longer
/// overlap, counts as removed from the old space and added to the new one.
struct SpaceDecomposition {
  SearchSpace only_new;  // new-space order
  SearchSpace only_old;  // old-space order
  SearchSpace both;      // new-space order, intersection domains
  std::vector<RangePartition> range_partitions;

  const RangePartition* partition_for(const std::string& name) const;
};

SpaceDecomposition decompose(const SearchSpace& old_space, const SearchSpace& new_space);

/// True iff any partition's hyperparameter takes a value, in `config`, inside
/// that partition's removed (only-old) region. Missing names are skipped.
bool in_only_old_region(const Configuration& config,
                        const std::vector<RangePartition>& partitions);

}  // namespace hpt

#endif  // HPT_DECOMPOSE_HPP_
