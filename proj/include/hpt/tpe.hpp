#ifndef HPT_TPE_HPP_
#define HPT_TPE_HPP_

#include <cstddef>
#include <vector>

#include "hpt/kde.hpp"
#include "hpt/rng.hpp"
#include "hpt/search_space.hpp"
#include "hpt/value.hpp"

namespace hpt {

struct Trial {
  Configuration config;
  double objective = 0.0;  // minimized, finite
};

/// Evaluated trials over one search space, in evaluation order.
class History {
public:
  History() = default;
  explicit History(SearchSpace space) : space_(std::move(space)) {}

  const SearchSpace& space() const { return space_; }
  const std::vector<Trial>& trials() const { return trials_; }
  std::size_t size() const { return trials_.size(); }
  bool empty() const { return trials_.empty(); }

  /// Validates the configuration and requires a finite objective.
  void add(Configuration config, double objective);

private:
  SearchSpace space_;
  std::vector<Trial> trials_;
};

struct TpeParams {
  double gamma = 0.15;           // good-fraction of the history
  std::size_t n_candidates = 64;
  double random_fraction = 1.0 / 3.0;
  double bandwidth_factor = 3.0;  // widens candidate sampling kernels
};

/// Density models of the better (good) and worse (bad) fraction of a history.
struct TpeModel {
  KdeEstimator good;
  KdeEstimator bad;
  double gamma = 0.0;
  double bandwidth_factor = 3.0;
};

/// Minimum history size before a TPE model is fitted: 2 * (dim + 1).
std::size_t tpe_model_threshold(std::size_t dim);

/// Splits the history at n_good = max(dim + 1, ceil(gamma * N)) after sorting
/// by objective (stable, so ties keep evaluation order) and fits both KDEs.
/// Throws when the history is below tpe_model_threshold.
TpeModel fit_tpe(const History& history, const TpeParams& params = {});

/// Draws n_candidates from the good model (widened kernels) and returns the
/// candidate with the highest good/bad density ratio; first draw wins ties.
Configuration suggest_tpe(const TpeModel& model, Rng& rng, std::size_t n_candidates);

/// One from-scratch TPE step: explore with probability random_fraction, fall
/// back to the prior below the model threshold, otherwise fit and suggest.
Configuration tpe_step(const History& history, Rng& rng, const TpeParams& params = {});

/// Prior sampling as a named strategy (the random-search control).
Configuration suggest_random(const SearchSpace& space, Rng& rng);

}  // namespace hpt

#endif  // HPT_TPE_HPP_
