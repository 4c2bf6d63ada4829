#include "hpt/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hpt {

void History::add(Configuration config, double objective) {
  if (!std::isfinite(objective)) {
    throw std::invalid_argument("History::add: objective must be finite");
  }
  space_.validate(config);
  trials_.push_back(Trial{std::move(config), objective});
}

std::size_t tpe_model_threshold(std::size_t dim) { return 2 * (dim + 1); }

TpeModel fit_tpe(const History& history, const TpeParams& params) {
  const std::size_t dim = history.space().dim();
  const std::size_t n = history.size();
  if (n < tpe_model_threshold(dim)) {
    throw std::invalid_argument("fit_tpe: history smaller than 2*(dim+1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return history.trials()[a].objective < history.trials()[b].objective;
  });

  const auto n_good = std::max<std::size_t>(
      dim + 1, static_cast<std::size_t>(std::ceil(params.gamma * static_cast<double>(n))));
  if (n - n_good < dim + 1) {
    throw std::invalid_argument("fit_tpe: gamma leaves fewer than dim+1 bad trials");
  }

  std::vector<std::vector<double>> good_pts, bad_pts;
  good_pts.reserve(n_good);
  bad_pts.reserve(n - n_good);
  for (std::size_t r = 0; r < n; ++r) {
    auto u = history.space().encode(history.trials()[order[r]].config);
    (r < n_good ? good_pts : bad_pts).push_back(std::move(u));
  }

  return TpeModel{KdeEstimator::fit(std::move(good_pts), history.space()),
                  KdeEstimator::fit(std::move(bad_pts), history.space()),
                  params.gamma, params.bandwidth_factor};
}

Configuration suggest_tpe(const TpeModel& model, Rng& rng, std::size_t n_candidates) {
  if (n_candidates == 0) {
    throw std::invalid_argument("suggest_tpe: need at least one candidate");
  }
  std::vector<double> best_u;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n_candidates; ++j) {
    auto u = model.good.sample_unit(rng, model.bandwidth_factor);
    const double ratio =
        model.good.log_density_unit(u) - model.bad.log_density_unit(u);
    if (j == 0 || ratio > best_ratio) {
      best_ratio = ratio;
      best_u = std::move(u);
    }
  }
  return model.good.space().decode(best_u);
}

Configuration tpe_step(const History& history, Rng& rng, const TpeParams& params) {
  if (rng.uniform() < params.random_fraction) {
    return history.space().sample(rng);
  }
  if (history.size() < tpe_model_threshold(history.space().dim())) {
    return history.space().sample(rng);
  }
  return suggest_tpe(fit_tpe(history, params), rng, params.n_candidates);
}

Configuration suggest_random(const SearchSpace& space, Rng& rng) {
  return space.sample(rng);
}

}  // namespace hpt
