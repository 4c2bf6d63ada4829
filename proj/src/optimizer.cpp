#include "hpt/optimizer.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "hpt/fanova.hpp"

namespace hpt {
namespace {

constexpr std::size_t kImportanceTrees = 16;

class TpeOptimizer : public Optimizer {
 public:
  TpeOptimizer(SearchSpace space, const TpeParams& params)
      : params_(params), history_(std::move(space)) {}

  const SearchSpace& space() const override { return history_.space(); }
  Configuration suggest(Rng& rng) override { return tpe_step(history_, rng, params_); }
  void observe(const Configuration& config, double objective) override {
    history_.add(config, objective);
  }

 private:
  TpeParams params_;
  History history_;
};

class RandomOptimizer : public Optimizer {
 public:
  explicit RandomOptimizer(SearchSpace space) : space_(std::move(space)) {}

  const SearchSpace& space() const override { return space_; }
  Configuration suggest(Rng& rng) override { return suggest_random(space_, rng); }
  void observe(const Configuration& config, double) override {
    space_.validate(config);
  }

 private:
  SearchSpace space_;
};

// Shared base for strategies that freeze coordinates to the best valid old
// values. The frozen part is pinned on the first suggest call: when the
// adjustment invalidated every old trial the pin is a one-time prior draw.
class FrozenPartOptimizer : public Optimizer {
 public:
  explicit FrozenPartOptimizer(TransferContext ctx) : ctx_(std::move(ctx)) {}

  const SearchSpace& space() const override { return ctx_.new_space; }

 protected:
  const Configuration& pinned_shared(Rng& rng) {
    if (!pinned_) {
      shared_ = project_old_history(ctx_).empty()
                    ? ctx_.decomposition.both.sample(rng)
                    : best_valid_old(ctx_);
      pinned_ = true;
    }
    return shared_;
  }
  bool pinned() const { return pinned_; }

  TransferContext ctx_;

 private:
  Configuration shared_;
  bool pinned_ = false;
};

class OnlyOptimizeNewOptimizer : public FrozenPartOptimizer {
 public:
  OnlyOptimizeNewOptimizer(TransferContext ctx, const TpeParams& params)
      : FrozenPartOptimizer(std::move(ctx)),
        params_(params),
        free_hist_(ctx_.decomposition.only_new) {}

  Configuration suggest(Rng& rng) override {
    Configuration out = pinned_shared(rng);
    if (!free_hist_.space().empty()) {
      for (auto& [name, value] : tpe_step(free_hist_, rng, params_)) {
        out[name] = std::move(value);
      }
    }
    return out;
  }

  void observe(const Configuration& config, double objective) override {
    ctx_.new_space.validate(config);
    if (!free_hist_.space().empty()) {
      free_hist_.add(project(config, free_hist_.space()), objective);
    }
  }

  bool is_constant() const override {
    return pinned() && free_hist_.space().empty();
  }

 private:
  TpeParams params_;
  History free_hist_;
};

class DropUnimportantOptimizer : public FrozenPartOptimizer {
 public:
  DropUnimportantOptimizer(TransferContext ctx, const TpeParams& params,
                           Rng& setup_rng)
      : FrozenPartOptimizer(std::move(ctx)), params_(params) {
    report_ = importance(ctx_.old_history, kImportanceTrees, setup_rng);
    SearchSpace tuned;
    for (std::size_t i = 0; i < ctx_.new_space.dim(); ++i) {
      const auto& name = ctx_.new_space.name(i);
      if (ctx_.decomposition.both.has(name) &&
          report_.individual.at(name) < report_.mean_importance) {
        frozen_names_.push_back(name);
      } else {
        tuned.add(name, ctx_.new_space.domain(i));
      }
    }
    tuned_hist_ = History(std::move(tuned));
  }

  Configuration suggest(Rng& rng) override {
    Configuration out;
    if (!frozen_names_.empty() || tuned_hist_.space().empty()) {
      const auto& shared = pinned_shared(rng);
      for (const auto& name : frozen_names_) out[name] = shared.at(name);
    }
    if (!tuned_hist_.space().empty()) {
      for (auto& [name, value] : tpe_step(tuned_hist_, rng, params_)) {
        out[name] = std::move(value);
      }
    }
    return out;
  }

  void observe(const Configuration& config, double objective) override {
    ctx_.new_space.validate(config);
    if (!tuned_hist_.space().empty()) {
      tuned_hist_.add(project(config, tuned_hist_.space()), objective);
    }
  }

  bool is_constant() const override {
    return pinned() && tuned_hist_.space().empty();
  }

  const ImportanceReport& report() const { return report_; }

 private:
  TpeParams params_;
  ImportanceReport report_;
  std::vector<std::string> frozen_names_;
  History tuned_hist_;
};

class BestFirstOptimizer : public Optimizer {
 public:
  BestFirstOptimizer(TransferContext ctx, const TpeParams& params)
      : ctx_(std::move(ctx)), params_(params), new_hist_(ctx_.new_space) {}

  const SearchSpace& space() const override { return ctx_.new_space; }
  Configuration suggest(Rng& rng) override {
    return suggest_best_first(ctx_, new_hist_, rng, params_);
  }
  void observe(const Configuration& config, double objective) override {
    new_hist_.add(config, objective);
  }

 private:
  TransferContext ctx_;
  TpeParams params_;
  History new_hist_;
};

class T2peOptimizer : public Optimizer {
 public:
  T2peOptimizer(TransferContext ctx, const TpeParams& params, bool best_first)
      : ctx_(std::move(ctx)),
        params_(params),
        best_first_(best_first),
        new_hist_(ctx_.new_space) {}

  const SearchSpace& space() const override { return ctx_.new_space; }
  Configuration suggest(Rng& rng) override {
    if (best_first_) {
      return suggest_best_first_t2pe(ctx_, new_hist_, rng, params_, &branch_);
    }
    return suggest_t2pe(ctx_, new_hist_, rng, params_, &branch_);
  }
  void observe(const Configuration& config, double objective) override {
    new_hist_.add(config, objective);
  }
  const char* last_branch() const override { return branch_; }

 private:
  TransferContext ctx_;
  TpeParams params_;
  bool best_first_;
  History new_hist_;
  const char* branch_ = "";
};

}  // namespace

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {
      "tpe",        "random",     "only-optimize-new", "drop-unimportant",
      "best-first", "t2pe",       "best-first+t2pe"};
  return names;
}

bool strategy_uses_transfer(const std::string& strategy) {
  const auto& names = strategy_names();
  if (std::find(names.begin(), names.end(), strategy) == names.end()) {
    throw std::invalid_argument("unknown strategy: " + strategy);
  }
  return strategy != "tpe" && strategy != "random";
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& strategy,
                                          const SearchSpace& space,
                                          const TransferContext* ctx,
                                          Rng& setup_rng, const TpeParams& params) {
  const bool wants_ctx = strategy_uses_transfer(strategy);
  if (wants_ctx && ctx == nullptr) {
    throw std::invalid_argument(strategy + " requires a transfer context");
  }
  if (!wants_ctx && ctx != nullptr) {
    throw std::invalid_argument(strategy + " does not take a transfer context");
  }
  if (ctx != nullptr && !(ctx->new_space == space)) {
    throw std::invalid_argument("space does not match the transfer context");
  }
  if (strategy == "tpe") return std::make_unique<TpeOptimizer>(space, params);
  if (strategy == "random") return std::make_unique<RandomOptimizer>(space);
  if (strategy == "only-optimize-new") {
    return std::make_unique<OnlyOptimizeNewOptimizer>(*ctx, params);
  }
  if (strategy == "drop-unimportant") {
    return std::make_unique<DropUnimportantOptimizer>(*ctx, params, setup_rng);
  }
  if (strategy == "best-first") {
    return std::make_unique<BestFirstOptimizer>(*ctx, params);
  }
  if (strategy == "t2pe") {
    return std::make_unique<T2peOptimizer>(*ctx, params, false);
  }
  return std::make_unique<T2peOptimizer>(*ctx, params, true);
}

}  // namespace hpt
